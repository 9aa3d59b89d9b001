// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/synthesis.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <spdlog/spdlog.h>

#include "pwa/errors.hpp"
#include "pwa/sampling.hpp"

namespace pwa {

SpecAutomaton SpecAutomaton::create(std::vector<std::size_t> states,
                                    std::vector<std::pair<std::size_t, std::size_t>> edges, std::size_t mode_count) {
    if (states.empty()) {
        throw ModelError("specification has no states");
    }
    std::set<std::size_t> seen;
    for (std::size_t s : states) {
        if (s >= mode_count) {
            throw SpecMisaligned("spec state refers to mode " + std::to_string(s) + " but the system has " +
                                 std::to_string(mode_count) + " modes");
        }
        if (!seen.insert(s).second) {
            throw ModelError("mode " + std::to_string(s) + " appears twice among spec states");
        }
    }
    std::vector<bool> has_out(states.size(), false);
    for (const auto& [a, b] : edges) {
        if (a >= states.size() || b >= states.size()) {
            throw ModelError("spec edge refers to an unknown spec state");
        }
        has_out[a] = true;
    }
    for (std::size_t q = 0; q < states.size(); ++q) {
        if (!has_out[q]) {
            throw ModelError("spec state " + std::to_string(q) + " has no outgoing edge");
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    SpecAutomaton spec;
    spec.states_ = std::move(states);
    spec.edges_ = std::move(edges);
    return spec;
}

std::optional<std::size_t> SpecAutomaton::state_of_mode(std::size_t mode) const {
    for (std::size_t q = 0; q < states_.size(); ++q) {
        if (states_[q] == mode) {
            return q;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> SpecAutomaton::successors(std::size_t q) const {
    std::vector<std::size_t> out;
    for (const auto& [a, b] : edges_) {
        if (a == q) {
            out.push_back(b);
        }
    }
    return out;
}

InputGraph build_input_graph(const SymbolicSystem& am, std::size_t state_id, int input_affine_dim) {
    InputGraph g;
    for (const auto& t : am.outgoing(state_id)) {
        g.nodes.push_back(t.input);
        g.destinations.push_back(t.dst);
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
            if (overlaps(g.nodes[i], g.nodes[j], input_affine_dim)) {
                g.edges.emplace_back(i, j);
            }
        }
    }
    return g;
}

std::vector<std::vector<std::size_t>> connected_components(const InputGraph& graph) {
    const std::size_t n = graph.nodes.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [a, b] : graph.edges) {
        const std::size_t ra = find(a);
        const std::size_t rb = find(b);
        if (ra != rb) {
            parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = comps.size();
            comps.emplace_back();
        }
        comps[slot[r]].push_back(i);
    }
    return comps;
}

PolytopeSet post_q(const PwaSystem& sys, const SpecAutomaton& spec, const SymbolicSystem& am, std::size_t state_id) {
    PolytopeSet out(sys.state_dim());
    const SymbolicState& s = am.state(state_id);
    const auto q = spec.state_of_mode(s.mode);
    if (!q || !sys.restricted_guard(s.mode).contains(s.cell)) {
        return out;
    }
    for (std::size_t r : spec.successors(*q)) {
        out.push_back(sys.restricted_guard(spec.states()[r]));
    }
    return out;
}

std::size_t ControlStrategy::controlled_count() const {
    return static_cast<std::size_t>(
        std::count_if(assignments.begin(), assignments.end(), [](const PolytopeSet& s) { return !s.is_empty(); }));
}

ControlStrategy synthesize(const PwaSystem& sys, const SymbolicSystem& am, const SpecAutomaton& spec) {
    ControlStrategy k;
    k.level = am.level();
    const int udim = sys.input_set().affine_dimension();
    for (const auto& s : am.states()) {
        PolytopeSet assigned(sys.input_dim());
        const PolytopeSet post = post_q(sys, spec, am, s.id);
        if (!post.is_empty()) {
            const InputGraph g = build_input_graph(am, s.id, udim);
            for (const auto& comp : connected_components(g)) {
                PolytopeSet reach(sys.state_dim());
                for (std::size_t node : comp) {
                    reach.push_back(am.state(g.destinations[node]).cell);
                }
                if (!covered_by(reach, post)) {
                    continue;
                }
                for (std::size_t node : comp) {
                    assigned.push_back(g.nodes[node]);
                }
            }
        }
        k.assignments.push_back(std::move(assigned));
    }
    return k;
}

SymbolicSystem controller_system(const SymbolicSystem& am, const ControlStrategy& k) {
    if (k.assignments.size() != am.states().size()) {
        throw DimensionMismatch("strategy does not match the abstraction");
    }
    std::vector<SymbolicTransition> kept;
    for (const auto& t : am.transitions()) {
        const PolytopeSet& assigned = k.assignments[t.src];
        if (!assigned.is_empty() && covered_by(PolytopeSet(t.input.dim(), {t.input}), assigned)) {
            kept.push_back(t);
        }
    }
    return SymbolicSystem(am.level(), am.states(), std::move(kept));
}

Scalar controller_bound(const SymbolicSystem& am) {
    return gran(am);
}

namespace {

std::optional<std::size_t> controlled_cell(const PwaSystem& sys, const SymbolicSystem& am, const ControlStrategy& k,
                                           const Vector& x) {
    const std::size_t mode = sys.mode_of(x);
    for (const auto& s : am.states()) {
        if (s.mode == mode && !k.assignments[s.id].is_empty() && s.cell.contains(x)) {
            return s.id;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> spec_states_at(const PwaSystem& sys, const SpecAutomaton& spec, const Vector& x,
                                        const std::vector<std::size_t>& candidates) {
    std::vector<std::size_t> out;
    for (std::size_t q : candidates) {
        if (sys.restricted_guard(spec.states()[q]).contains(x)) {
            out.push_back(q);
        }
    }
    return out;
}

} // namespace

ClosedLoopRun simulate_closed_loop(const PwaSystem& sys, const SymbolicSystem& am, const ControlStrategy& k,
                                   const SpecAutomaton& spec, const Vector& x0, std::size_t horizon,
                                   std::uint64_t seed) {
    if (k.assignments.size() != am.states().size()) {
        throw DimensionMismatch("strategy does not match the abstraction");
    }
    Rng rng(seed);
    ClosedLoopRun run;
    const auto first = controlled_cell(sys, am, k, x0);
    if (!first) {
        throw NoAdmissibleInput("initial state has no admissible input");
    }
    std::vector<std::size_t> all(spec.size());
    std::iota(all.begin(), all.end(), 0);
    run.trajectory.states.push_back(x0);
    run.witnesses.push_back(spec_states_at(sys, spec, x0, all));
    if (run.witnesses.back().empty()) {
        run.violated = true;
        return run;
    }
    std::optional<std::size_t> cell = first;
    for (std::size_t t = 0; t < horizon; ++t) {
        if (!cell) {
            run.truncated = true;
            break;
        }
        run.cells.push_back(*cell);
        const auto u = sample_point(rng, k.assignments[*cell]);
        if (!u) {
            throw NoAdmissibleInput("could not draw an input from the assignment of cell " + std::to_string(*cell));
        }
        const Vector& x = run.trajectory.states.back();
        Vector next = sys.apply_mode(am.state(*cell).mode, x, *u);
        run.trajectory.inputs.push_back(*u);
        run.trajectory.states.push_back(next);

        std::set<std::size_t> succ;
        for (std::size_t q : run.witnesses.back()) {
            for (std::size_t r : spec.successors(q)) {
                succ.insert(r);
            }
        }
        if (!sys.region().contains(next)) {
            run.trajectory.exited = true;
            run.witnesses.emplace_back();
            run.violated = true;
            break;
        }
        run.witnesses.push_back(spec_states_at(sys, spec, next, {succ.begin(), succ.end()}));
        if (run.witnesses.back().empty()) {
            run.violated = true;
            break;
        }
        cell = controlled_cell(sys, am, k, next);
    }
    return run;
}

EnforcementVerdict check_enforcement(const PwaSystem& sys, const SymbolicSystem& am, const ControlStrategy& k,
                                     const SpecAutomaton& spec, std::size_t trials, std::size_t horizon,
                                     std::uint64_t seed) {
    EnforcementVerdict verdict;
    if (trials == 0) {
        verdict.warning = "no trials requested; enforcement holds vacuously";
        spdlog::warn("{}", verdict.warning);
        return verdict;
    }
    std::vector<std::size_t> controlled;
    for (const auto& s : am.states()) {
        if (!k.assignments.at(s.id).is_empty()) {
            controlled.push_back(s.id);
        }
    }
    if (controlled.empty()) {
        verdict.warning = "strategy controls no state; enforcement holds vacuously";
        spdlog::warn("{}", verdict.warning);
        return verdict;
    }
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, controlled.size() - 1);
    for (std::size_t i = 0; i < trials; ++i) {
        const SymbolicState& s = am.state(controlled[pick(rng)]);
        auto x0 = sample_point(rng, s.cell);
        if (!x0 || !controlled_cell(sys, am, k, *x0)) {
            continue;
        }
        ++verdict.trials;
        ClosedLoopRun run = simulate_closed_loop(sys, am, k, spec, *x0, horizon, rng());
        if (run.truncated) {
            ++verdict.truncated;
        }
        if (run.violated) {
            ++verdict.violations;
            if (!verdict.counterexample) {
                verdict.counterexample = std::move(run);
            }
        }
    }
    verdict.passed = verdict.violations == 0;
    return verdict;
}

} // namespace pwa
