// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "oracles.hpp"
#include "pwa/abstraction.hpp"
#include "pwa/io.hpp"
#include "pwa/lp.hpp"
#include "pwa/sampling.hpp"

using namespace pwa;

namespace {

PwaSystem load(const char* name) {
    return io::system_from_json(io::read_json(oracle::data_path(name)));
}

PwaSystem shift_system(Scalar region_hi, Scalar ulo, Scalar uhi) {
    return PwaSystem::create({{Matrix::identity(1), Matrix::from_rows({{1}}, 1), {0}, {}}}, Polytope::box({ulo}, {uhi}),
                             Polytope::box({0}, {region_hi}));
}

PwaSystem affine_autonomous(Scalar a, Scalar f) {
    return PwaSystem::create({{Matrix::from_rows({{a}}, 1), Matrix(1, 1), {f}, {}}}, Polytope::point({0}),
                             Polytope::box({0}, {1}));
}

Polytope iv(Scalar a, Scalar b) {
    return Polytope::box({a}, {b});
}

SymbolicTransition tr(std::size_t dst, Polytope v) {
    return {0, dst, std::move(v)};
}

Scalar cover_volume(const SymbolicSystem& am) {
    PolytopeSet u(am.states().front().cell.dim());
    for (const auto& s : am.states()) {
        u.unite(s.cell);
    }
    return volume(u);
}

Scalar pow(Scalar base, int e) {
    Scalar r = 1;
    for (int i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

} // namespace

TEST_CASE("transition_input_set examples") {
    auto sys = shift_system(3, -1, 4);
    CHECK(transition_input_set(sys, iv(0, 1), 0, iv(2, 3)).same_set(iv(1, 3)));
    CHECK(transition_input_set(sys, iv(0, 1), 0, iv(10, 11)).is_empty());
    auto ident = PwaSystem::create({{Matrix::identity(1), Matrix(1, 1), {0}, {}}}, Polytope::box({-1}, {4}),
                                   Polytope::box({0}, {3}));
    CHECK(transition_input_set(ident, iv(0, 1), 0, iv(0, 1)).same_set(ident.input_set()));
}

TEST_CASE("compute_Z examples") {
    auto ident = affine_autonomous(1, 0);
    SymbolicState s{0, iv(0, Scalar(1, 2)), 0, true};
    CHECK(compute_Z(ident, s, s.cell).same_set(s.cell));
    auto shift = shift_system(2, 0, 1);
    SymbolicState t{0, iv(0, 1), 0, true};
    CHECK(compute_Z(shift, t, iv(1, 2)).same_set(iv(0, 1)));
    CHECK(compute_Z(shift, t, iv(5, 6)).is_empty());
}

TEST_CASE("detect_spurious examples") {
    CHECK_FALSE(detect_spurious({tr(1, iv(0, 1))}, 1));
    CHECK_FALSE(detect_spurious({}, 1));
    CHECK_FALSE(detect_spurious({tr(1, iv(0, 1)), tr(2, iv(2, 3))}, 1));
    CHECK(detect_spurious({tr(1, iv(0, 2)), tr(2, iv(1, 3))}, 1));
    CHECK_FALSE(detect_spurious({tr(1, iv(0, 1)), tr(2, iv(1, 2))}, 1));
}

TEST_CASE("A1 of identity dynamics") {
    auto sys = PwaSystem::create({{Matrix::identity(1), Matrix(1, 1), {0}, {}}}, Polytope::box({0}, {1}),
                                 Polytope::box({0}, {1}));
    auto a1 = build_A1(sys, Scalar(1, 2));
    REQUIRE(a1.states().size() == 2);
    for (const auto& s : a1.states()) {
        auto out = a1.outgoing(s.id);
        REQUIRE(out.size() == 1);
        CHECK(out[0].dst == s.id);
        CHECK(out[0].input.same_set(sys.input_set()));
        CHECK_FALSE(s.spurious);
    }
}

TEST_CASE("A1 of the shift matches the interval oracle") {
    auto sys = load("shift1d.json");
    auto a1 = build_A1(sys, Scalar(1, 2));
    REQUIRE(a1.states().size() == 2);
    for (const auto& s : a1.states()) {
        for (const auto& d : a1.states()) {
            auto [slo, shi] = oracle::interval(s.cell);
            auto [dlo, dhi] = oracle::interval(d.cell);
            auto expect = oracle::shift_inputs(slo, shi, dlo, dhi, 0, 1);
            const SymbolicTransition* found = nullptr;
            for (const auto& t : a1.transitions()) {
                if (t.src == s.id && t.dst == d.id) {
                    found = &t;
                }
            }
            if (expect && expect->first < expect->second) {
                REQUIRE(found);
                CHECK(found->input.same_set(iv(expect->first, expect->second)));
            } else {
                CHECK(found == nullptr);
            }
        }
    }
    const auto& low = a1.state(0);
    CHECK(low.cell.same_set(iv(0, Scalar(1, 2))));
    CHECK(low.spurious);
    CHECK(a1.outgoing(0).size() == 2);
    CHECK_FALSE(a1.state(1).spurious);
}

TEST_CASE("autonomous abstraction: inputs are the origin, spurious iff two destinations") {
    auto sys = affine_autonomous(Scalar(1, 2), Scalar(3, 8));
    auto a1 = build_A1(sys, Scalar(1, 2));
    for (const auto& t : a1.transitions()) {
        CHECK(t.input.same_set(Polytope::point({0})));
    }
    for (const auto& s : a1.states()) {
        CHECK(s.spurious == (a1.outgoing(s.id).size() >= 2));
    }
    CHECK(a1.state(0).spurious);
    CHECK_FALSE(a1.state(1).spurious);
}

TEST_CASE("gran examples") {
    auto ident = load("identity2d.json");
    CHECK(gran(build_A1(ident, Scalar(1, 2))) == 0);
    auto sq = Polytope::box({0, 0}, {Scalar(1, 4), Scalar(1, 4)});
    SymbolicSystem one(1, {{0, sq, 0, true}}, {});
    CHECK(gran(one) == Scalar(1, 4));
    auto sys = load("twomode2d.json");
    auto a2 = refine(sys, build_A1(sys, Scalar(1, 2)), Scalar(1, 2));
    Scalar brute = 0;
    for (const auto& s : a2.states()) {
        if (s.spurious) {
            brute = std::max(brute, oracle::pair_diameter(s.cell.vertices()));
        }
    }
    CHECK(gran(a2) == brute);
    CHECK(brute == Scalar(1, 4));
}

TEST_CASE("refine keeps a fixed point and shrinks spurious cells") {
    auto ident = load("identity2d.json");
    auto a1 = build_A1(ident, Scalar(1, 2));
    CHECK(a1.states().size() == 2);
    auto a2 = refine(ident, a1, Scalar(1, 2));
    CHECK(same_states(a1, a2));
    CHECK(a2.transitions().size() == a1.transitions().size());

    auto shift = load("shift1d.json");
    auto b1 = build_A1(shift, Scalar(1, 2));
    auto b2 = refine(shift, b1, Scalar(1, 2));
    CHECK(gran(b2) <= Scalar(1, 2) * gran(b1));
    CHECK(gran(b2) < gran(b1));
}

TEST_CASE("refinement sequence stopping rules") {
    auto ident = load("identity2d.json");
    auto seq = refinement_sequence(ident, Scalar(1, 2), 3, 0);
    REQUIRE(seq.size() == 1);
    CHECK(seq[0].metrics.fixed_point);
    CHECK(seq[0].metrics.gran == 0);

    auto sys = load("twomode2d.json");
    const Scalar g0 = gran_of_embedding(sys);
    auto up_to_3 = refinement_sequence(sys, Scalar(1, 2), 3, 0);
    CHECK(up_to_3.size() == 3);
    for (const auto& l : up_to_3) {
        CHECK(l.metrics.gran <= pow(Scalar(1, 2), l.metrics.level) * g0);
        CHECK(l.metrics.sim_bound == l.metrics.gran);
    }
    auto early = refinement_sequence(sys, Scalar(1, 2), 6, g0 * Scalar(1, 4) * Scalar(101, 100));
    CHECK(early.back().metrics.level <= 2);
    CHECK_THROWS(refinement_sequence(sys, Scalar(1, 2), 0, 0));
}

TEST_CASE("check_simulation examples") {
    auto sys = load("twomode2d.json");
    auto a2 = refine(sys, build_A1(sys, Scalar(1, 2)), Scalar(1, 2));
    auto ok = check_simulation(sys, a2, gran(a2), 400, 1);
    CHECK(ok.passed);
    CHECK(ok.checked > 0);

    auto ident = load("identity2d.json");
    auto i1 = build_A1(ident, Scalar(1, 2));
    CHECK(check_simulation(ident, i1, 0, 400, 2, Direction::Forward).passed);
    CHECK(check_simulation(ident, i1, 0, 400, 2, Direction::Backward).passed);

    auto shift = load("shift1d.json");
    auto s1 = build_A1(shift, Scalar(1, 2));
    auto bad = check_simulation(shift, s1, 0, 400, 3);
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.witness_state);
    CHECK(s1.state(0).cell.contains(*bad.witness_state));
}

TEST_CASE("property: granularity chain, covering and monotone exact region") {
    for (const char* name : {"shift1d.json", "twomode2d.json", "synth2d.json"}) {
        CAPTURE(name);
        auto sys = load(name);
        auto seq = refinement_sequence(sys, Scalar(1, 2), 3, 0);
        const Scalar g0 = gran_of_embedding(sys);
        CHECK(seq[0].metrics.gran <= Scalar(1, 2) * g0);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const auto& am = seq[i].system;
            CHECK(cover_volume(am) == volume(sys.region()));
            for (const auto& s : am.states()) {
                CHECK(sys.restricted_guard(s.mode).contains(s.cell));
            }
            if (i > 0) {
                CHECK(seq[i].metrics.gran <= Scalar(1, 2) * seq[i - 1].metrics.gran);
                CHECK(seq[i].metrics.non_spurious_volume >= seq[i - 1].metrics.non_spurious_volume);
                PolytopeSet before(sys.state_dim());
                PolytopeSet after(sys.state_dim());
                for (const auto& s : seq[i - 1].system.states()) {
                    if (!s.spurious) {
                        before.push_back(s.cell);
                    }
                }
                for (const auto& s : am.states()) {
                    if (!s.spurious) {
                        after.push_back(s.cell);
                    }
                }
                CHECK(covered_by(before, after));
            }
            if (seq[i].metrics.fixed_point) {
                CHECK(seq[i].metrics.gran == 0);
                CHECK(am.spurious_count() == 0);
            }
        }
    }
}

TEST_CASE("property: autonomous abstraction partitions the region") {
    auto sys = affine_autonomous(Scalar(1, 2), Scalar(3, 8));
    auto seq = refinement_sequence(sys, Scalar(1, 2), 4, 0);
    for (const auto& l : seq) {
        Scalar sum = 0;
        for (const auto& s : l.system.states()) {
            sum += volume(s.cell);
        }
        CHECK(sum == volume(sys.region()));
    }
}

TEST_CASE("property: transitions are sound and complete on samples") {
    auto sys = load("synth2d.json");
    auto am = refine(sys, build_A1(sys, Scalar(1, 2)), Scalar(1, 2));
    Rng rng(77);
    for (const auto& t : am.transitions()) {
        const auto& src = am.state(t.src);
        const auto& dst = am.state(t.dst);
        const Mode& m = sys.mode(src.mode);
        for (int k = 0; k < 3; ++k) {
            Vector u = *sample_point(rng, t.input);
            // LP witness: some x in src with A x + B u + f in dst.
            std::vector<Halfspace> hs = src.cell.halfspaces();
            const Vector bu = add(m.b.apply(u), m.f);
            for (const auto& h : dst.cell.halfspaces()) {
                Vector a(sys.state_dim());
                for (std::size_t j = 0; j < a.size(); ++j) {
                    for (std::size_t i = 0; i < a.size(); ++i) {
                        a[j] += h.normal[i] * m.a(i, j);
                    }
                }
                hs.push_back({a, h.offset - dot(h.normal, bu)});
            }
            CHECK(lp::feasible(hs, sys.state_dim()));
        }
    }
    for (int k = 0; k < 500; ++k) {
        Vector x = *sample_point(rng, sys.region());
        Vector u = *sample_point(rng, sys.input_set());
        Vector next = sys.step(x, u);
        if (!sys.region().contains(next)) {
            continue;
        }
        const std::size_t mode = sys.mode_of(x);
        bool covered = false;
        for (const auto& t : am.transitions()) {
            const auto& src = am.state(t.src);
            if (src.mode == mode && src.cell.contains(x) && t.input.contains(u) && am.state(t.dst).cell.contains(next)) {
                covered = true;
                break;
            }
        }
        CHECK(covered);
    }
}
