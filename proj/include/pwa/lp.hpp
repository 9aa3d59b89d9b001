// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "pwa/scalar.hpp"

namespace pwa {

struct Halfspace;

namespace lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Scalar value;
    Vector point;
};

/// Exact two-phase simplex (Bland's rule) for max c.x subject to a_i.x <= b_i, x free.
Result maximize(const Vector& objective, std::span<const Halfspace> constraints, std::size_t dim);

bool feasible(std::span<const Halfspace> constraints, std::size_t dim);

} // namespace lp
} // namespace pwa
