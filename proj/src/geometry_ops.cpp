// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <numeric>
#include <optional>

#include "pwa/errors.hpp"
#include "pwa/geometry.hpp"

namespace pwa {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                                std::to_string(b) + " differ");
    }
}

bool boxes_disjoint(const Polytope& a, const Polytope& b) {
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (a.upper()[k] < b.lower()[k] || b.upper()[k] < a.lower()[k]) {
            return true;
        }
    }
    return false;
}

Halfspace negated(const Halfspace& h) {
    return Halfspace{scale(h.normal, Scalar(-1)), -h.offset};
}

// Eliminates coordinate j from a bounded system, returning constraints on the
// remaining coordinates (still indexed in the full space, with a zero at j).
std::vector<Halfspace> eliminate(const std::vector<Halfspace>& hs, std::size_t j) {
    // An equality with a non-zero coefficient at j allows plain substitution.
    for (std::size_t e = 0; e < hs.size(); ++e) {
        if (sgn(hs[e].normal[j]) == 0) {
            continue;
        }
        const Halfspace opposite = negated(hs[e]);
        if (std::find(hs.begin(), hs.end(), opposite) == hs.end()) {
            continue;
        }
        const Halfspace& eq = hs[e];
        std::vector<Halfspace> out;
        for (const auto& h : hs) {
            if (h == eq || h == opposite) {
                continue;
            }
            if (sgn(h.normal[j]) == 0) {
                out.push_back(h);
                continue;
            }
            const Scalar f = h.normal[j] / eq.normal[j];
            Halfspace r{sub(h.normal, scale(eq.normal, f)), h.offset - f * eq.offset};
            r.normal[j] = 0;
            out.push_back(std::move(r));
        }
        return out;
    }

    std::vector<const Halfspace*> pos;
    std::vector<const Halfspace*> neg;
    std::vector<Halfspace> out;
    for (const auto& h : hs) {
        const int s = sgn(h.normal[j]);
        if (s > 0) {
            pos.push_back(&h);
        } else if (s < 0) {
            neg.push_back(&h);
        } else {
            out.push_back(h);
        }
    }
    for (const Halfspace* p : pos) {
        for (const Halfspace* n : neg) {
            const Scalar cp = p->normal[j];
            const Scalar cn = -n->normal[j];
            Halfspace r{add(scale(p->normal, cn), scale(n->normal, cp)), cn * p->offset + cp * n->offset};
            r.normal[j] = 0;
            out.push_back(std::move(r));
        }
    }
    return out;
}

Polytope drop_coordinate(const std::vector<Halfspace>& hs, std::size_t dim, std::size_t j) {
    std::vector<Halfspace> reduced;
    reduced.reserve(hs.size());
    for (const auto& h : hs) {
        Vector n;
        n.reserve(dim - 1);
        for (std::size_t k = 0; k < dim; ++k) {
            if (k != j) {
                n.push_back(h.normal[k]);
            }
        }
        reduced.push_back(Halfspace{std::move(n), h.offset});
    }
    return Polytope::from_bounded_halfspaces(dim - 1, std::move(reduced));
}

Scalar simplex_volume(const std::vector<Vector>& simplex) {
    const std::size_t d = simplex.size() - 1;
    std::vector<Vector> m(d);
    for (std::size_t i = 0; i < d; ++i) {
        m[i] = sub(simplex[i + 1], simplex[0]);
    }
    // Gaussian elimination determinant.
    Scalar det = 1;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        while (p < d && sgn(m[p][c]) == 0) {
            ++p;
        }
        if (p == d) {
            return 0;
        }
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < d; ++i) {
            if (sgn(m[i][c]) == 0) {
                continue;
            }
            const Scalar f = m[i][c] / m[c][c];
            for (std::size_t k = c; k < d; ++k) {
                m[i][k] -= f * m[c][k];
            }
        }
    }
    return abs(det);
}

// Sums simplex volumes of a triangulation of the face spanned by `verts` with
// the prefix `apex` (already chosen pulling vertices).
void triangulate(const std::vector<Vector>& verts, const std::vector<Halfspace>& facets, int k,
                 std::vector<Vector>& apex, Scalar& total) {
    if (k == 0) {
        apex.push_back(verts.front());
        total += simplex_volume(apex);
        apex.pop_back();
        return;
    }
    const Vector& v0 = *std::min_element(verts.begin(), verts.end());
    apex.push_back(v0);
    std::vector<std::vector<Vector>> seen;
    for (const auto& h : facets) {
        if (dot(h.normal, v0) == h.offset) {
            continue;
        }
        std::vector<Vector> face;
        for (const auto& v : verts) {
            if (dot(h.normal, v) == h.offset) {
                face.push_back(v);
            }
        }
        if (affine_dimension(face) != k - 1) {
            continue;
        }
        std::sort(face.begin(), face.end());
        if (std::find(seen.begin(), seen.end(), face) != seen.end()) {
            continue;
        }
        seen.push_back(face);
        triangulate(face, facets, k - 1, apex, total);
    }
    apex.pop_back();
}

Scalar factorial(std::size_t n) {
    Scalar f = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        f *= static_cast<unsigned long>(i);
    }
    return f;
}

} // namespace

PolytopeSet::PolytopeSet(std::size_t dim, std::vector<Polytope> parts) : dim_(dim) {
    for (auto& p : parts) {
        push_back(p);
    }
}

void PolytopeSet::push_back(const Polytope& p) {
    require_same_dim(dim_, p.dim(), "PolytopeSet::push_back");
    if (!p.is_empty()) {
        parts_.push_back(p);
    }
}

void PolytopeSet::unite(const Polytope& p) {
    require_same_dim(dim_, p.dim(), "PolytopeSet::unite");
    if (p.is_empty()) {
        return;
    }
    PolytopeSet fresh = subtract(PolytopeSet(dim_, {p}), *this);
    for (const auto& q : fresh.parts()) {
        parts_.push_back(q);
    }
}

bool PolytopeSet::contains(const Vector& x) const {
    return std::any_of(parts_.begin(), parts_.end(), [&](const Polytope& p) { return p.contains(x); });
}

Polytope intersect(const Polytope& a, const Polytope& b) {
    require_same_dim(a.dim(), b.dim(), "intersect");
    if (a.is_empty() || b.is_empty() || boxes_disjoint(a, b)) {
        return Polytope::empty(a.dim());
    }
    std::vector<Halfspace> hs = a.halfspaces();
    hs.insert(hs.end(), b.halfspaces().begin(), b.halfspaces().end());
    return Polytope::from_bounded_halfspaces(a.dim(), std::move(hs));
}

Polytope project(const Polytope& p, const std::vector<std::size_t>& kept) {
    const std::size_t n = p.dim();
    if (kept.empty()) {
        throw DimensionMismatch("projection onto zero coordinates");
    }
    std::vector<bool> keep(n, false);
    for (std::size_t k : kept) {
        if (k >= n || keep[k]) {
            throw DimensionMismatch("projection coordinates must be distinct and in range");
        }
        keep[k] = true;
    }
    if (p.is_empty()) {
        return Polytope::empty(kept.size());
    }
    // Work on the remaining coordinates in ascending order, then permute.
    Polytope cur = p;
    std::vector<std::size_t> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (keep[j]) {
            continue;
        }
        const auto pos = static_cast<std::size_t>(
            std::find(remaining.begin(), remaining.end(), j) - remaining.begin());
        std::vector<Halfspace> hs = eliminate(cur.halfspaces(), pos);
        cur = drop_coordinate(hs, cur.dim(), pos);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pos));
        if (cur.is_empty()) {
            return Polytope::empty(kept.size());
        }
    }
    std::vector<std::size_t> order(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        order[i] = static_cast<std::size_t>(
            std::find(remaining.begin(), remaining.end(), kept[i]) - remaining.begin());
    }
    bool identity = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        identity = identity && order[i] == i;
    }
    if (identity) {
        return cur;
    }
    std::vector<Halfspace> permuted;
    for (const auto& h : cur.halfspaces()) {
        Vector nrm(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            nrm[i] = h.normal[order[i]];
        }
        permuted.push_back(Halfspace{std::move(nrm), h.offset});
    }
    return Polytope::from_bounded_halfspaces(order.size(), std::move(permuted));
}

Polytope affine_image(const Polytope& p, const Matrix& a, const Vector& b) {
    const std::size_t n = p.dim();
    if (a.cols() != n || a.rows() != b.size()) {
        throw DimensionMismatch("affine map does not match polytope dimension");
    }
    const std::size_t k = a.rows();
    if (p.is_empty()) {
        throw EmptyPolytope("affine image of an empty polytope");
    }
    // {(x, y) : x in P, y = A x + b}, projected onto y.
    std::vector<Halfspace> hs;
    for (const auto& h : p.halfspaces()) {
        Vector nrm(n + k);
        std::copy(h.normal.begin(), h.normal.end(), nrm.begin());
        hs.push_back(Halfspace{std::move(nrm), h.offset});
    }
    for (std::size_t i = 0; i < k; ++i) {
        Vector nrm(n + k);
        for (std::size_t j = 0; j < n; ++j) {
            nrm[j] = -a(i, j);
        }
        nrm[n + i] = 1;
        Halfspace up{nrm, b[i]};
        hs.push_back(up);
        hs.push_back(negated(up));
    }
    const Polytope lifted = Polytope::from_bounded_halfspaces(n + k, std::move(hs));
    std::vector<std::size_t> kept(k);
    std::iota(kept.begin(), kept.end(), n);
    return project(lifted, kept);
}

PolytopeSet set_difference(const Polytope& a, const Polytope& b) {
    require_same_dim(a.dim(), b.dim(), "set_difference");
    PolytopeSet out(a.dim());
    if (a.is_empty()) {
        return out;
    }
    if (b.is_empty() || boxes_disjoint(a, b)) {
        out.push_back(a);
        return out;
    }
    if (b.contains(a)) {
        return out;
    }
    const int adim = a.affine_dimension();
    Polytope rest = a;
    for (const auto& h : b.halfspaces()) {
        std::vector<Halfspace> hs = rest.halfspaces();
        hs.push_back(negated(h));
        Polytope piece = Polytope::from_bounded_halfspaces(a.dim(), std::move(hs));
        if (!piece.is_empty() && piece.affine_dimension() == adim &&
            std::any_of(piece.vertices().begin(), piece.vertices().end(),
                        [&](const Vector& v) { return !h.contains(v); })) {
            out.push_back(piece);
        }
        std::vector<Halfspace> keep = rest.halfspaces();
        keep.push_back(h);
        rest = Polytope::from_bounded_halfspaces(a.dim(), std::move(keep));
        if (rest.is_empty() || rest.affine_dimension() < adim) {
            break;
        }
    }
    return out;
}

PolytopeSet subtract(const PolytopeSet& a, const PolytopeSet& b) {
    require_same_dim(a.dim(), b.dim(), "subtract");
    PolytopeSet out(a.dim());
    for (const auto& p : a.parts()) {
        std::vector<Polytope> current{p};
        for (const auto& q : b.parts()) {
            std::vector<Polytope> next;
            for (const auto& c : current) {
                const PolytopeSet d = set_difference(c, q);
                next.insert(next.end(), d.parts().begin(), d.parts().end());
            }
            current = std::move(next);
            if (current.empty()) {
                break;
            }
        }
        for (const auto& c : current) {
            out.push_back(c);
        }
    }
    return out;
}

bool covered_by(const PolytopeSet& a, const PolytopeSet& b) {
    return subtract(a, b).is_empty();
}

bool same_point_set(const PolytopeSet& a, const PolytopeSet& b) {
    return covered_by(a, b) && covered_by(b, a);
}

bool overlaps(const Polytope& a, const Polytope& b, int reference_dim) {
    const Polytope c = intersect(a, b);
    return !c.is_empty() && c.affine_dimension() == reference_dim;
}

Scalar diameter(const Polytope& p) {
    if (p.is_empty()) {
        return 0;
    }
    Scalar best = 0;
    for (std::size_t k = 0; k < p.dim(); ++k) {
        const Scalar w = p.upper()[k] - p.lower()[k];
        if (w > best) {
            best = w;
        }
    }
    return best;
}

Scalar diameter(const PolytopeSet& s) {
    if (s.is_empty()) {
        return 0;
    }
    Vector lo = s.parts().front().lower();
    Vector hi = s.parts().front().upper();
    for (const auto& p : s.parts()) {
        for (std::size_t k = 0; k < s.dim(); ++k) {
            if (p.lower()[k] < lo[k]) {
                lo[k] = p.lower()[k];
            }
            if (p.upper()[k] > hi[k]) {
                hi[k] = p.upper()[k];
            }
        }
    }
    Scalar best = 0;
    for (std::size_t k = 0; k < s.dim(); ++k) {
        const Scalar w = hi[k] - lo[k];
        if (w > best) {
            best = w;
        }
    }
    return best;
}

Scalar dp_distance(const PolytopeSet& a, const PolytopeSet& b) {
    require_same_dim(a.dim(), b.dim(), "dp_distance");
    PolytopeSet sym = subtract(a, b);
    const PolytopeSet back = subtract(b, a);
    for (const auto& p : back.parts()) {
        sym.push_back(p);
    }
    return diameter(sym);
}

Scalar dp_distance(const Polytope& a, const Polytope& b) {
    return dp_distance(PolytopeSet(a.dim(), {a}), PolytopeSet(b.dim(), {b}));
}

Scalar dp_vertex_bound(const PolytopeSet& a, const PolytopeSet& b) {
    require_same_dim(a.dim(), b.dim(), "dp_vertex_bound");
    if (same_point_set(a, b)) {
        return 0;
    }
    PolytopeSet both = a;
    for (const auto& p : b.parts()) {
        both.push_back(p);
    }
    return diameter(both);
}

Scalar volume(const Polytope& p) {
    if (p.is_empty() || !p.is_full_dimensional()) {
        return 0;
    }
    const int d = static_cast<int>(p.dim());
    std::vector<Vector> apex;
    Scalar total = 0;
    triangulate(p.vertices(), p.halfspaces(), d, apex, total);
    return total / factorial(p.dim());
}

Scalar volume(const PolytopeSet& s) {
    Scalar total = 0;
    for (const auto& p : s.parts()) {
        total += volume(p);
    }
    return total;
}

} // namespace pwa
