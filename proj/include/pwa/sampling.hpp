// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <random>

#include "pwa/geometry.hpp"

namespace pwa {

using Rng = std::mt19937_64;

/// Denominator of sampled coordinates. Prime, so samples avoid dyadic grid lines.
inline constexpr long kSampleDenominator = 1000003;

/// Uniform rational in [lo, hi] on the lattice lo + k (hi - lo) / kSampleDenominator.
Scalar sample_scalar(Rng& rng, const Scalar& lo, const Scalar& hi);

Vector sample_box(Rng& rng, const Vector& lo, const Vector& hi);

/// Point of p. Full-dimensional polytopes use rejection sampling in the
/// bounding box; others a random convex combination of vertices.
/// nullopt only for the empty polytope or when rejection keeps failing.
std::optional<Vector> sample_point(Rng& rng, const Polytope& p, int max_tries = 10000);

/// Point of the union.
std::optional<Vector> sample_point(Rng& rng, const PolytopeSet& s, int max_tries = 10000);

} // namespace pwa
