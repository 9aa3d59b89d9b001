// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "oracles.hpp"
#include "pwa/io.hpp"
#include "pwa/synthesis.hpp"

namespace fixture {

using namespace pwa;

inline PwaSystem load_system(const std::string& name) {
    return io::system_from_json(io::read_json(oracle::data_path(name)));
}

inline SpecAutomaton load_spec(const std::string& name, const PwaSystem& sys) {
    return io::spec_from_json(io::read_json(oracle::data_path(name)), sys.mode_count());
}

/// One source state with four outgoing input sets: V1 and V3 overlap, V2 and
/// V4 overlap, all other pairs are disjoint. V1, V3 lead into the successors
/// of the source's spec state; V2, V4 lead outside the specification.
struct FourInputs {
    PwaSystem sys;
    SymbolicSystem am;
    SpecAutomaton spec;
    Polytope v1, v2, v3, v4;
};

inline FourInputs four_inputs() {
    auto interval = [](Scalar a, Scalar b) { return Polytope::box({a}, {b}); };
    auto guard = [](Scalar a, Scalar b) { return std::vector<Halfspace>{{{-1}, -a}, {{1}, b}}; };
    auto mode = [&](Scalar a, Scalar b) { return Mode{Matrix(1, 1), Matrix::from_rows({{1}}, 1), {0}, guard(a, b)}; };
    PwaSystem sys = PwaSystem::create({mode(0, 1), mode(1, 2), mode(2, 3), mode(3, 5)}, interval(0, 7), interval(0, 5));
    FourInputs f{sys, {}, SpecAutomaton::create({0, 1, 2}, {{0, 1}, {0, 2}, {1, 1}, {2, 2}}, 4),
                 interval(0, 2), interval(4, 6), interval(1, 3), interval(5, 7)};
    std::vector<SymbolicState> states{{0, interval(0, 1), 0, true},
                                      {1, interval(1, 2), 1, false},
                                      {2, interval(3, 4), 3, false},
                                      {3, interval(2, 3), 2, false},
                                      {4, interval(4, 5), 3, false}};
    std::vector<SymbolicTransition> trans{{0, 1, f.v1}, {0, 2, f.v2}, {0, 3, f.v3}, {0, 4, f.v4}};
    f.am = SymbolicSystem(1, std::move(states), std::move(trans));
    return f;
}

} // namespace fixture
