// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "pwa/geometry.hpp"

namespace pwa {

/// Axis-aligned grid splitting with contraction rate lambda and scale rho.
struct SplitPolicy {
    Scalar lambda;
    Scalar rho;
};

/// rho is the smallest diameter in the collection.
/// Throws EmptyCollection or LambdaOutOfRange.
SplitPolicy make_policy(const std::vector<Polytope>& collection, const Scalar& lambda);

/// Cuts p along the origin-anchored grid of side lambda * min(rho, Diam p).
/// A point-like p (diameter zero) is returned unchanged.
std::vector<Polytope> split(const SplitPolicy& policy, const Polytope& p);

/// Non-empty intersections of p with the closed lattice cells of the given
/// side whose affine dimension matches p, in lattice index order.
std::vector<Polytope> grid_split(const Polytope& p, const Scalar& side);

} // namespace pwa
