// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "pwa/geometry.hpp"

namespace pwa {

/// One affine piece x' = A x + B u + f, active on its guard.
struct Mode {
    Matrix a;
    Matrix b;
    Vector f;
    /// Closed guard as raw halfspaces; it may be unbounded.
    std::vector<Halfspace> guard;
};

struct Trajectory {
    std::vector<Vector> states;
    std::vector<Vector> inputs;
    bool exited = false;
};

/// A piecewise affine system restricted to a bounded analysis region.
class PwaSystem {
  public:
    /// Validates the model. Throws ModelError when the region or input set is
    /// empty or unbounded, dimensions disagree, a restricted guard has empty
    /// interior, or the restricted guards do not partition the region.
    static PwaSystem create(std::vector<Mode> modes, Polytope input_set, Polytope region);

    std::size_t state_dim() const { return region_.dim(); }
    std::size_t input_dim() const { return input_set_.dim(); }
    std::size_t mode_count() const { return modes_.size(); }

    const std::vector<Mode>& modes() const { return modes_; }
    const Mode& mode(std::size_t i) const { return modes_.at(i); }
    const Polytope& input_set() const { return input_set_; }
    const Polytope& region() const { return region_; }
    /// Guard i intersected with the region.
    const Polytope& restricted_guard(std::size_t i) const { return restricted_.at(i); }
    const std::vector<Polytope>& restricted_guards() const { return restricted_; }

    bool is_autonomous() const { return sgn(diameter(input_set_)) == 0; }

    /// Lowest index whose closed restricted guard holds x. Throws OutsideRegion.
    std::size_t mode_of(const Vector& x) const;

    /// Throws OutsideRegion or InputNotAdmissible.
    Vector step(const Vector& x, const Vector& u) const;

    /// Stops with exited set at the first state outside the region.
    Trajectory run(const Vector& x0, const std::vector<Vector>& inputs) const;

    /// The affine map of mode i applied without any membership checks.
    Vector apply_mode(std::size_t i, const Vector& x, const Vector& u) const;

  private:
    PwaSystem() = default;

    std::vector<Mode> modes_;
    Polytope input_set_;
    Polytope region_;
    std::vector<Polytope> restricted_;
};

/// Largest diameter among the restricted guards.
Scalar gran_of_embedding(const PwaSystem& sys);

} // namespace pwa
