// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/abstraction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <spdlog/spdlog.h>

#include "pwa/errors.hpp"
#include "pwa/sampling.hpp"

namespace pwa {

namespace {

struct Box {
    Vector lo;
    Vector hi;
};

// Exact bounding box of A X + B U + f.
Box image_box(const PwaSystem& sys, const Polytope& cell, std::size_t mode) {
    const Mode& md = sys.mode(mode);
    const std::size_t n = sys.state_dim();
    Box box{md.f, md.f};
    auto widen = [&](const std::vector<Vector>& verts, const Matrix& m) {
        Vector lo(n);
        Vector hi(n);
        bool first = true;
        for (const auto& v : verts) {
            const Vector y = m.apply(v);
            for (std::size_t k = 0; k < n; ++k) {
                if (first || y[k] < lo[k]) {
                    lo[k] = y[k];
                }
                if (first || y[k] > hi[k]) {
                    hi[k] = y[k];
                }
            }
            first = false;
        }
        for (std::size_t k = 0; k < n; ++k) {
            box.lo[k] += lo[k];
            box.hi[k] += hi[k];
        }
    };
    widen(cell.vertices(), md.a);
    widen(sys.input_set().vertices(), md.b);
    return box;
}

bool box_meets(const Box& b, const Polytope& p) {
    for (std::size_t k = 0; k < b.lo.size(); ++k) {
        if (b.hi[k] < p.lower()[k] || p.upper()[k] < b.lo[k]) {
            return false;
        }
    }
    return true;
}

using StateKey = std::pair<std::size_t, std::vector<Vector>>;

StateKey key_of(std::size_t mode, const Polytope& cell) {
    return {mode, cell.vertices()};
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
    std::vector<std::size_t> r(to - from);
    std::iota(r.begin(), r.end(), from);
    return r;
}

} // namespace

SymbolicSystem::SymbolicSystem(int level, std::vector<SymbolicState> states,
                               std::vector<SymbolicTransition> transitions)
    : level_(level), states_(std::move(states)), transitions_(std::move(transitions)) {
    for (std::size_t i = 0; i < states_.size(); ++i) {
        states_[i].id = i;
    }
    std::stable_sort(transitions_.begin(), transitions_.end(), [](const auto& a, const auto& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    first_out_.assign(states_.size() + 1, 0);
    for (const auto& t : transitions_) {
        if (t.src >= states_.size() || t.dst >= states_.size()) {
            throw DimensionMismatch("transition refers to an unknown state");
        }
        ++first_out_[t.src + 1];
    }
    std::partial_sum(first_out_.begin(), first_out_.end(), first_out_.begin());
    auto less = [](const Polytope& a, const Polytope& b) { return polytope_less(a, b); };
    std::set<Polytope, decltype(less)> distinct(less);
    for (const auto& t : transitions_) {
        distinct.insert(t.input);
    }
    alphabet_.assign(distinct.begin(), distinct.end());
}

std::vector<SymbolicTransition> SymbolicSystem::outgoing(std::size_t id) const {
    if (id >= states_.size()) {
        throw DimensionMismatch("unknown state id " + std::to_string(id));
    }
    return {transitions_.begin() + static_cast<std::ptrdiff_t>(first_out_[id]),
            transitions_.begin() + static_cast<std::ptrdiff_t>(first_out_[id + 1])};
}

std::size_t SymbolicSystem::spurious_count() const {
    return static_cast<std::size_t>(
        std::count_if(states_.begin(), states_.end(), [](const SymbolicState& s) { return s.spurious; }));
}

Polytope lifted_transition_set(const PwaSystem& sys, const Polytope& src_cell, std::size_t mode,
                               const Polytope& dst_cell) {
    const std::size_t n = sys.state_dim();
    const std::size_t m = sys.input_dim();
    if (src_cell.is_empty() || dst_cell.is_empty()) {
        return Polytope::empty(n + m);
    }
    const Mode& md = sys.mode(mode);
    std::vector<Halfspace> hs;
    for (const auto& h : src_cell.halfspaces()) {
        Vector a(n + m);
        std::copy(h.normal.begin(), h.normal.end(), a.begin());
        hs.push_back({std::move(a), h.offset});
    }
    for (const auto& h : sys.input_set().halfspaces()) {
        Vector a(n + m);
        std::copy(h.normal.begin(), h.normal.end(), a.begin() + static_cast<std::ptrdiff_t>(n));
        hs.push_back({std::move(a), h.offset});
    }
    // c . (A x + B u + f) <= d
    for (const auto& h : dst_cell.halfspaces()) {
        Vector a(n + m);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                a[j] += h.normal[k] * md.a(k, j);
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                a[n + j] += h.normal[k] * md.b(k, j);
            }
        }
        hs.push_back({std::move(a), h.offset - dot(h.normal, md.f)});
    }
    return Polytope::from_bounded_halfspaces(n + m, std::move(hs));
}

Polytope transition_input_set(const PwaSystem& sys, const Polytope& src_cell, std::size_t mode,
                              const Polytope& dst_cell) {
    const std::size_t n = sys.state_dim();
    const Polytope lifted = lifted_transition_set(sys, src_cell, mode, dst_cell);
    if (lifted.is_empty()) {
        return Polytope::empty(sys.input_dim());
    }
    return project(lifted, range(n, n + sys.input_dim()));
}

Polytope compute_Z(const PwaSystem& sys, const SymbolicState& state, const Polytope& dst_cell) {
    const Polytope lifted = lifted_transition_set(sys, state.cell, state.mode, dst_cell);
    if (lifted.is_empty()) {
        return Polytope::empty(sys.state_dim());
    }
    return project(lifted, range(0, sys.state_dim()));
}

std::vector<SymbolicTransition> compute_transitions(const PwaSystem& sys, const std::vector<SymbolicState>& states) {
    const std::size_t n = sys.state_dim();
    const int full = static_cast<int>(n) + sys.input_set().affine_dimension();
    std::vector<SymbolicTransition> out;
    for (const auto& s : states) {
        const Box box = image_box(sys, s.cell, s.mode);
        for (const auto& d : states) {
            if (!box_meets(box, d.cell)) {
                continue;
            }
            const Polytope lifted = lifted_transition_set(sys, s.cell, s.mode, d.cell);
            if (lifted.is_empty() || lifted.affine_dimension() != full) {
                continue;
            }
            out.push_back({s.id, d.id, project(lifted, range(n, n + sys.input_dim()))});
        }
    }
    return out;
}

bool detect_spurious(const std::vector<SymbolicTransition>& outgoing, int input_affine_dim) {
    for (std::size_t i = 0; i < outgoing.size(); ++i) {
        for (std::size_t j = i + 1; j < outgoing.size(); ++j) {
            if (outgoing[i].dst != outgoing[j].dst &&
                overlaps(outgoing[i].input, outgoing[j].input, input_affine_dim)) {
                return true;
            }
        }
    }
    return false;
}

namespace {

SymbolicSystem assemble(const PwaSystem& sys, int level, std::vector<SymbolicState> states) {
    for (std::size_t i = 0; i < states.size(); ++i) {
        states[i].id = i;
    }
    std::vector<SymbolicTransition> trans = compute_transitions(sys, states);
    SymbolicSystem draft(level, states, trans);
    const int udim = sys.input_set().affine_dimension();
    for (auto& s : states) {
        s.spurious = detect_spurious(draft.outgoing(s.id), udim);
    }
    return SymbolicSystem(level, std::move(states), std::move(trans));
}

void add_unique(std::vector<SymbolicState>& states, std::set<StateKey>& seen, std::size_t mode, const Polytope& cell) {
    if (seen.insert(key_of(mode, cell)).second) {
        SymbolicState s;
        s.cell = cell;
        s.mode = mode;
        states.push_back(std::move(s));
    }
}

} // namespace

SymbolicSystem build_A1(const PwaSystem& sys, const Scalar& lambda) {
    const SplitPolicy policy = make_policy(sys.restricted_guards(), lambda);
    std::vector<SymbolicState> states;
    std::set<StateKey> seen;
    for (std::size_t i = 0; i < sys.mode_count(); ++i) {
        for (const auto& cell : split(policy, sys.restricted_guard(i))) {
            if (cell.is_full_dimensional()) {
                add_unique(states, seen, i, cell);
            }
        }
    }
    return assemble(sys, 1, std::move(states));
}

SymbolicSystem refine(const PwaSystem& sys, const SymbolicSystem& am, const Scalar& lambda) {
    const SplitPolicy policy = make_policy(sys.restricted_guards(), lambda);
    const std::size_t n = sys.state_dim();
    std::vector<SymbolicState> states;
    std::set<StateKey> seen;
    PolytopeSet covered(n);

    for (const auto& s : am.states()) {
        if (!s.spurious) {
            add_unique(states, seen, s.mode, s.cell);
            covered.push_back(s.cell);
        }
    }
    for (const auto& s : am.states()) {
        if (!s.spurious) {
            continue;
        }
        for (const auto& t : am.outgoing(s.id)) {
            const Polytope z = compute_Z(sys, s, am.state(t.dst).cell);
            if (z.is_empty()) {
                continue;
            }
            for (const auto& piece : split(policy, z)) {
                if (piece.is_full_dimensional()) {
                    add_unique(states, seen, s.mode, piece);
                    covered.push_back(piece);
                }
            }
        }
    }
    const PolytopeSet rest = subtract(PolytopeSet(n, {sys.region()}), covered);
    if (!rest.is_empty()) {
        spdlog::debug("level {}: {} uncovered parts added to the next level", am.level() + 1, rest.parts().size());
    }
    for (const auto& part : rest.parts()) {
        for (std::size_t i = 0; i < sys.mode_count(); ++i) {
            const Polytope piece = intersect(part, sys.restricted_guard(i));
            if (!piece.is_empty() && piece.is_full_dimensional()) {
                add_unique(states, seen, i, piece);
            }
        }
    }
    return assemble(sys, am.level() + 1, std::move(states));
}

Scalar gran(const SymbolicSystem& am) {
    Scalar best = 0;
    for (const auto& s : am.states()) {
        if (s.spurious) {
            const Scalar d = diameter(s.cell);
            if (d > best) {
                best = d;
            }
        }
    }
    return best;
}

bool same_states(const SymbolicSystem& a, const SymbolicSystem& b) {
    if (a.states().size() != b.states().size()) {
        return false;
    }
    auto keys = [](const SymbolicSystem& s) {
        std::vector<StateKey> k;
        for (const auto& st : s.states()) {
            k.push_back(key_of(st.mode, st.cell));
        }
        std::sort(k.begin(), k.end());
        return k;
    };
    return keys(a) == keys(b);
}

MetricsReport metrics(const SymbolicSystem& am) {
    MetricsReport r;
    r.level = am.level();
    r.gran = gran(am);
    r.sim_bound = r.gran;
    r.state_count = am.states().size();
    r.transition_count = am.transitions().size();
    r.spurious_state_count = am.spurious_count();
    if (!am.states().empty()) {
        PolytopeSet good(am.states().front().cell.dim());
        for (const auto& s : am.states()) {
            if (!s.spurious) {
                good.unite(s.cell);
            }
        }
        r.non_spurious_volume = volume(good);
    }
    return r;
}

std::vector<Level> refinement_sequence(const PwaSystem& sys, const Scalar& lambda, int max_level,
                                       const Scalar& epsilon_target) {
    if (max_level < 1) {
        throw LambdaOutOfRange("maximum level must be at least 1");
    }
    std::vector<Level> levels;
    SymbolicSystem cur = build_A1(sys, lambda);
    while (true) {
        MetricsReport rep = metrics(cur);
        spdlog::info("level {}: {} states, {} transitions, {} spurious, gran {}", rep.level, rep.state_count,
                     rep.transition_count, rep.spurious_state_count, to_string(rep.gran));
        if (sgn(rep.gran) == 0) {
            SymbolicSystem next = refine(sys, cur, lambda);
            rep.fixed_point = same_states(next, cur);
            levels.push_back({std::move(cur), rep});
            if (rep.fixed_point || rep.level >= max_level) {
                break;
            }
            cur = std::move(next);
            continue;
        }
        const bool stop = rep.gran <= epsilon_target || rep.level >= max_level;
        levels.push_back({cur, rep});
        if (stop) {
            break;
        }
        cur = refine(sys, cur, lambda);
    }
    return levels;
}

namespace {

// States paired with x: cells holding x whose mode is the active mode at x.
std::vector<std::size_t> related_states(const PwaSystem& sys, const SymbolicSystem& am, const Vector& x) {
    const std::size_t mode = sys.mode_of(x);
    std::vector<std::size_t> out;
    for (const auto& s : am.states()) {
        if (s.mode == mode && s.cell.contains(x)) {
            out.push_back(s.id);
        }
    }
    return out;
}

// Some u in v drives x into dst under the dynamics of mode.
bool reaches_with(const PwaSystem& sys, std::size_t mode, const Vector& x, const Polytope& v, const Polytope& dst) {
    const Mode& md = sys.mode(mode);
    const std::size_t m = sys.input_dim();
    std::vector<Halfspace> hs = v.halfspaces();
    const Vector ax = add(md.a.apply(x), md.f);
    for (const auto& h : dst.halfspaces()) {
        Vector a(m);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < ax.size(); ++k) {
                a[j] += h.normal[k] * md.b(k, j);
            }
        }
        hs.push_back({std::move(a), h.offset - dot(h.normal, ax)});
    }
    return !Polytope::from_bounded_halfspaces(m, std::move(hs)).is_empty();
}

std::string point_text(const Vector& x) {
    std::string s = "(";
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += (k ? ", " : "") + to_string(x[k]);
    }
    return s + ")";
}

} // namespace

SimulationVerdict check_simulation(const PwaSystem& sys, const SymbolicSystem& am, const Scalar& epsilon,
                                   std::size_t sample_count, std::uint64_t seed, Direction direction) {
    Rng rng(seed);
    SimulationVerdict verdict;
    const std::size_t n = sys.state_dim();
    auto fail = [&](const Vector& x, const Vector* u, std::string why) {
        verdict.passed = false;
        verdict.witness_state = x;
        if (u) {
            verdict.witness_input = *u;
        }
        verdict.message = std::move(why);
    };
    for (std::size_t i = 0; i < sample_count && verdict.passed; ++i) {
        const auto xs = sample_point(rng, sys.region());
        const auto us = sample_point(rng, sys.input_set());
        if (!xs || !us) {
            continue;
        }
        const Vector& x = *xs;
        const Vector& u = *us;
        const std::vector<std::size_t> related = related_states(sys, am, x);
        if (related.empty()) {
            fail(x, nullptr, "state " + point_text(x) + " lies in no cell of its mode");
            break;
        }
        ++verdict.checked;
        const PolytopeSet single(n, {Polytope::point(x)});
        for (std::size_t id : related) {
            const SymbolicState& s = am.state(id);
            const Scalar d = dp_distance(single, PolytopeSet(n, {s.h_value()}));
            if (d > epsilon) {
                fail(x, nullptr,
                     "output distance " + to_string(d) + " exceeds " + to_string(epsilon) + " in cell " + std::to_string(id));
                break;
            }
            if (direction == Direction::Forward) {
                const Vector next = sys.apply_mode(s.mode, x, u);
                if (!sys.region().contains(next)) {
                    continue;
                }
                bool matched = false;
                for (const auto& t : am.outgoing(id)) {
                    if (t.input.contains(u) && am.state(t.dst).cell.contains(next)) {
                        matched = true;
                        break;
                    }
                }
                if (!matched) {
                    fail(x, &u, "move " + point_text(x) + " -> " + point_text(next) + " has no abstract match from cell " +
                                    std::to_string(id));
                    break;
                }
            } else {
                for (const auto& t : am.outgoing(id)) {
                    if (!reaches_with(sys, s.mode, x, t.input, am.state(t.dst).cell)) {
                        fail(x, nullptr, "abstract move " + std::to_string(id) + " -> " + std::to_string(t.dst) +
                                             " cannot be matched from " + point_text(x));
                        break;
                    }
                }
                if (!verdict.passed) {
                    break;
                }
            }
        }
    }
    return verdict;
}

} // namespace pwa
