// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pwa/geometry.hpp"
#include "pwa/splitting.hpp"
#include "pwa/system.hpp"

namespace pwa {

struct SymbolicState {
    std::size_t id = 0;
    Polytope cell;
    std::size_t mode = 0;
    /// Output value: the cell itself when spurious, the empty set otherwise.
    bool spurious = false;

    Polytope h_value() const { return spurious ? cell : Polytope::empty(cell.dim()); }
};

struct SymbolicTransition {
    std::size_t src = 0;
    std::size_t dst = 0;
    /// Inputs for which some state of src moves into dst.
    Polytope input;
};

/// Finite abstraction at one refinement level. States are indexed by id.
class SymbolicSystem {
  public:
    SymbolicSystem() = default;
    /// Sorts transitions by (src, dst) and collects the input alphabet.
    SymbolicSystem(int level, std::vector<SymbolicState> states, std::vector<SymbolicTransition> transitions);

    int level() const { return level_; }
    const std::vector<SymbolicState>& states() const { return states_; }
    const SymbolicState& state(std::size_t id) const { return states_.at(id); }
    const std::vector<SymbolicTransition>& transitions() const { return transitions_; }
    /// Outgoing transitions of a state, ordered by destination id.
    std::vector<SymbolicTransition> outgoing(std::size_t id) const;
    /// Distinct input sets in polytope_less order.
    const std::vector<Polytope>& input_alphabet() const { return alphabet_; }

    std::size_t spurious_count() const;

  private:
    int level_ = 0;
    std::vector<SymbolicState> states_;
    std::vector<SymbolicTransition> transitions_;
    std::vector<std::size_t> first_out_;
    std::vector<Polytope> alphabet_;
};

struct MetricsReport {
    int level = 0;
    Scalar gran;
    Scalar sim_bound;
    std::size_t state_count = 0;
    std::size_t transition_count = 0;
    std::size_t spurious_state_count = 0;
    /// Volume of the union of non-spurious cells.
    Scalar non_spurious_volume;
    bool fixed_point = false;
};

struct Level {
    SymbolicSystem system;
    MetricsReport metrics;
};

/// {(x, u) : x in src_cell, u in U, A x + B u + f in dst_cell} for the given mode.
Polytope lifted_transition_set(const PwaSystem& sys, const Polytope& src_cell, std::size_t mode,
                               const Polytope& dst_cell);

/// Shadow of the lifted set on the input coordinates. Empty when unreachable.
Polytope transition_input_set(const PwaSystem& sys, const Polytope& src_cell, std::size_t mode,
                              const Polytope& dst_cell);

/// Shadow of the lifted set on the state coordinates.
Polytope compute_Z(const PwaSystem& sys, const SymbolicState& state, const Polytope& dst_cell);

/// All transitions between the given states. A pair is linked when its lifted
/// set has full dimension, i.e. the states touch in more than a boundary.
std::vector<SymbolicTransition> compute_transitions(const PwaSystem& sys, const std::vector<SymbolicState>& states);

/// True when two outgoing transitions to distinct destinations have input sets
/// overlapping in a set of dimension input_affine_dim.
bool detect_spurious(const std::vector<SymbolicTransition>& outgoing, int input_affine_dim);

SymbolicSystem build_A1(const PwaSystem& sys, const Scalar& lambda);

SymbolicSystem refine(const PwaSystem& sys, const SymbolicSystem& am, const Scalar& lambda);

Scalar gran(const SymbolicSystem& am);

/// Equal multisets of (mode, cell) pairs.
bool same_states(const SymbolicSystem& a, const SymbolicSystem& b);

MetricsReport metrics(const SymbolicSystem& am);

/// Refines until a fixed point, gran <= epsilon_target, or level max_level.
std::vector<Level> refinement_sequence(const PwaSystem& sys, const Scalar& lambda, int max_level,
                                       const Scalar& epsilon_target);

enum class Direction {
    /// The concrete system is simulated by the abstraction.
    Forward,
    /// The abstraction is simulated by the concrete system.
    Backward,
};

struct SimulationVerdict {
    bool passed = true;
    std::size_t checked = 0;
    std::string message;
    std::optional<Vector> witness_state;
    std::optional<Vector> witness_input;
};

/// Sampled check of the epsilon-approximate simulation relation that pairs a
/// state x with every cell containing it whose mode is mode_of(x).
SimulationVerdict check_simulation(const PwaSystem& sys, const SymbolicSystem& am, const Scalar& epsilon,
                                   std::size_t sample_count, std::uint64_t seed,
                                   Direction direction = Direction::Forward);

} // namespace pwa
