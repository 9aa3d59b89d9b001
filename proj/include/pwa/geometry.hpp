// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "pwa/scalar.hpp"

namespace pwa {

/// The closed half-space normal . x <= offset.
struct Halfspace {
    Vector normal;
    Scalar offset;

    bool contains(const Vector& x) const { return dot(normal, x) <= offset; }
    bool operator==(const Halfspace& other) const = default;
};

/// Closed, bounded convex polytope held in both H- and V-representation.
///
/// Construction canonicalizes: halfspaces are scaled so that the largest
/// normal coefficient has magnitude one, duplicates and redundant
/// constraints are dropped, and both lists are sorted. Two polytopes are
/// the same point set exactly when their vertex lists are equal.
class Polytope {
  public:
    Polytope() = default;

    /// Throws UnboundedRegion when the feasible set is non-empty and unbounded.
    static Polytope from_halfspaces(std::size_t dim, std::vector<Halfspace> halfspaces);

    /// Same as from_halfspaces but skips the boundedness LPs. The caller must
    /// know the set is bounded (e.g. it contains the constraints of a polytope).
    static Polytope from_bounded_halfspaces(std::size_t dim, std::vector<Halfspace> halfspaces);

    static Polytope box(const Vector& lower, const Vector& upper);
    static Polytope point(const Vector& p);
    static Polytope empty(std::size_t dim);

    std::size_t dim() const { return data_ ? data_->dim : 0; }
    bool is_empty() const { return !data_ || data_->empty; }

    const std::vector<Halfspace>& halfspaces() const;
    const std::vector<Vector>& vertices() const;

    /// -1 for the empty polytope.
    int affine_dimension() const { return data_ ? data_->affine_dim : -1; }
    bool is_full_dimensional() const { return affine_dimension() == static_cast<int>(dim()); }

    const Vector& lower() const;
    const Vector& upper() const;

    bool contains(const Vector& x) const;
    bool contains(const Polytope& other) const;
    bool same_set(const Polytope& other) const;

    std::string describe() const;

  private:
    struct Data {
        std::size_t dim = 0;
        bool empty = true;
        std::vector<Halfspace> halfspaces;
        std::vector<Vector> vertices;
        int affine_dim = -1;
        Vector lower;
        Vector upper;
    };

    explicit Polytope(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

/// Lexicographic order on vertex lists. Equal keys mean equal point sets.
bool polytope_less(const Polytope& a, const Polytope& b);

/// Finite union of polytopes of one ambient dimension. Parts built through
/// unite() have pairwise disjoint relative interiors.
class PolytopeSet {
  public:
    PolytopeSet() = default;
    explicit PolytopeSet(std::size_t dim) : dim_(dim) {}
    PolytopeSet(std::size_t dim, std::vector<Polytope> parts);

    std::size_t dim() const { return dim_; }
    bool is_empty() const { return parts_.empty(); }
    const std::vector<Polytope>& parts() const { return parts_; }

    /// Appends without any overlap processing.
    void push_back(const Polytope& p);
    /// Adds the closure of p minus the current union, keeping interiors disjoint.
    void unite(const Polytope& p);

    bool contains(const Vector& x) const;

  private:
    std::size_t dim_ = 0;
    std::vector<Polytope> parts_;
};

std::vector<Vector> vertex_enumeration(const Polytope& p);

Polytope intersect(const Polytope& a, const Polytope& b);

/// Image {A x + b : x in P} (convex hull of the mapped vertices). Throws EmptyPolytope.
Polytope affine_image(const Polytope& p, const Matrix& a, const Vector& b);

/// Shadow on the listed coordinates by Fourier-Motzkin elimination of the
/// others, in ascending index order, reducing after every step.
Polytope project(const Polytope& p, const std::vector<std::size_t>& kept);

/// Convex decomposition of cl(a \ b) by slicing along b's halfspaces in order.
PolytopeSet set_difference(const Polytope& a, const Polytope& b);

/// cl(a \ union(b)) as disjoint parts.
PolytopeSet subtract(const PolytopeSet& a, const PolytopeSet& b);

/// a is contained in union(b) up to a set of lower dimension than a's parts.
bool covered_by(const PolytopeSet& a, const PolytopeSet& b);
bool same_point_set(const PolytopeSet& a, const PolytopeSet& b);

/// Intersection of a and b has affine dimension reference_dim. With
/// reference_dim the dimension of the common ambient set (e.g. the input
/// polytope) this is "overlap up to boundaries".
bool overlaps(const Polytope& a, const Polytope& b, int reference_dim);

/// Infinity-norm diameter; zero for the empty set.
Scalar diameter(const Polytope& p);
Scalar diameter(const PolytopeSet& s);

/// Diameter of the symmetric difference of the two unions.
Scalar dp_distance(const PolytopeSet& a, const PolytopeSet& b);
Scalar dp_distance(const Polytope& a, const Polytope& b);

/// Max infinity distance over the vertices of both arguments (zero when the
/// sets are equal). An upper bound on dp_distance, tight when no vertex of one
/// argument lies in the interior of the other.
Scalar dp_vertex_bound(const PolytopeSet& a, const PolytopeSet& b);

/// Exact volume in the ambient dimension via triangulation; zero for
/// lower-dimensional polytopes.
Scalar volume(const Polytope& p);
Scalar volume(const PolytopeSet& s);

} // namespace pwa
