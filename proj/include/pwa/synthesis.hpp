// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwa/abstraction.hpp"

namespace pwa {

/// Non-deterministic specification over the mode partition. Spec state q
/// stands for the restricted guard of mode states[q].
class SpecAutomaton {
  public:
    /// Throws SpecMisaligned for unknown modes and ModelError for repeated
    /// states, bad edge endpoints, or a blocking state.
    static SpecAutomaton create(std::vector<std::size_t> states, std::vector<std::pair<std::size_t, std::size_t>> edges,
                                std::size_t mode_count);

    const std::vector<std::size_t>& states() const { return states_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    std::size_t size() const { return states_.size(); }

    /// Spec state whose region is the guard of this mode.
    std::optional<std::size_t> state_of_mode(std::size_t mode) const;
    /// Successors of q in ascending order.
    std::vector<std::size_t> successors(std::size_t q) const;

  private:
    std::vector<std::size_t> states_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Input sets of a state's outgoing transitions, linked when they overlap.
struct InputGraph {
    std::vector<Polytope> nodes;
    /// Destination state of the transition behind each node.
    std::vector<std::size_t> destinations;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Overlap means an intersection of affine dimension input_affine_dim.
InputGraph build_input_graph(const SymbolicSystem& am, std::size_t state_id, int input_affine_dim);

/// Components as sorted node lists, ordered by their smallest node.
std::vector<std::vector<std::size_t>> connected_components(const InputGraph& graph);

/// Union of the regions of the spec successors of the state's spec state;
/// empty when the cell lies outside every spec state.
PolytopeSet post_q(const PwaSystem& sys, const SpecAutomaton& spec, const SymbolicSystem& am, std::size_t state_id);

struct ControlStrategy {
    int level = 0;
    /// Indexed by state id. An empty set means no admissible input.
    std::vector<PolytopeSet> assignments;

    std::size_t controlled_count() const;
};

ControlStrategy synthesize(const PwaSystem& sys, const SymbolicSystem& am, const SpecAutomaton& spec);

/// The abstraction restricted to transitions whose input set lies in the
/// assignment of their source.
SymbolicSystem controller_system(const SymbolicSystem& am, const ControlStrategy& k);

/// Distance bound between the synthesized and the maximal controller.
Scalar controller_bound(const SymbolicSystem& am);

struct ClosedLoopRun {
    Trajectory trajectory;
    /// Cell used at each step.
    std::vector<std::size_t> cells;
    /// Spec states consistent with the run after each visited state.
    std::vector<std::vector<std::size_t>> witnesses;
    /// Run stopped early on a state without admissible input.
    bool truncated = false;
    /// Witness set became empty.
    bool violated = false;
};

/// Throws NoAdmissibleInput when x0 has no controlled cell, OutsideRegion
/// when x0 is outside the region.
ClosedLoopRun simulate_closed_loop(const PwaSystem& sys, const SymbolicSystem& am, const ControlStrategy& k,
                                   const SpecAutomaton& spec, const Vector& x0, std::size_t horizon,
                                   std::uint64_t seed);

struct EnforcementVerdict {
    bool passed = true;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::size_t truncated = 0;
    std::string warning;
    std::optional<ClosedLoopRun> counterexample;
};

EnforcementVerdict check_enforcement(const PwaSystem& sys, const SymbolicSystem& am, const ControlStrategy& k,
                                     const SpecAutomaton& spec, std::size_t trials, std::size_t horizon,
                                     std::uint64_t seed);

} // namespace pwa
