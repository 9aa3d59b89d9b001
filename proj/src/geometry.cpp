// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/geometry.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "pwa/errors.hpp"
#include "pwa/lp.hpp"

namespace pwa {

namespace {

// Above this many constraint subsets, LP-based pruning runs before the
// combinatorial vertex search.
constexpr double kSubsetBudget = 20000.0;

double subset_count(std::size_t m, std::size_t d) {
    if (d > m) {
        return 0.0;
    }
    double c = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        c = c * static_cast<double>(m - i) / static_cast<double>(i + 1);
    }
    return c;
}

// Scales so that the largest |coefficient| is one. Returns nullopt for a zero normal.
std::optional<Halfspace> normalize(const Halfspace& h) {
    Scalar m = norm_inf(h.normal);
    if (sgn(m) == 0) {
        return std::nullopt;
    }
    Halfspace out{scale(h.normal, 1 / m), h.offset / m};
    return out;
}

std::optional<Vector> solve_square(const std::vector<const Halfspace*>& rows, std::size_t d) {
    if (d == 1) {
        if (sgn(rows[0]->normal[0]) == 0) {
            return std::nullopt;
        }
        return Vector{rows[0]->offset / rows[0]->normal[0]};
    }
    if (d == 2) {
        const auto& a = rows[0]->normal;
        const auto& b = rows[1]->normal;
        const Scalar det = a[0] * b[1] - a[1] * b[0];
        if (sgn(det) == 0) {
            return std::nullopt;
        }
        return Vector{(rows[0]->offset * b[1] - a[1] * rows[1]->offset) / det,
                      (a[0] * rows[1]->offset - rows[0]->offset * b[0]) / det};
    }
    std::vector<Vector> m(d, Vector(d + 1));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            m[i][k] = rows[i]->normal[k];
        }
        m[i][d] = rows[i]->offset;
    }
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        while (p < d && sgn(m[p][c]) == 0) {
            ++p;
        }
        if (p == d) {
            return std::nullopt;
        }
        std::swap(m[p], m[c]);
        for (std::size_t i = 0; i < d; ++i) {
            if (i == c || sgn(m[i][c]) == 0) {
                continue;
            }
            const Scalar f = m[i][c] / m[c][c];
            for (std::size_t k = c; k <= d; ++k) {
                m[i][k] -= f * m[c][k];
            }
        }
    }
    Vector x(d);
    for (std::size_t i = 0; i < d; ++i) {
        x[i] = m[i][d] / m[i][i];
    }
    return x;
}

std::vector<Halfspace> prune_with_lp(std::vector<Halfspace> hs, std::size_t dim) {
    for (std::size_t i = 0; i < hs.size();) {
        std::vector<Halfspace> others;
        others.reserve(hs.size() - 1);
        for (std::size_t j = 0; j < hs.size(); ++j) {
            if (j != i) {
                others.push_back(hs[j]);
            }
        }
        const auto r = lp::maximize(hs[i].normal, others, dim);
        if (r.status == lp::Status::Optimal && r.value <= hs[i].offset) {
            hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return hs;
}

std::vector<Vector> enumerate_vertices(const std::vector<Halfspace>& hs, std::size_t d) {
    std::set<Vector> found;
    const std::size_t m = hs.size();
    if (m < d) {
        return {};
    }
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) {
        idx[i] = i;
    }
    std::vector<const Halfspace*> rows(d);
    while (true) {
        for (std::size_t i = 0; i < d; ++i) {
            rows[i] = &hs[idx[i]];
        }
        if (auto x = solve_square(rows, d)) {
            bool ok = true;
            for (const auto& h : hs) {
                if (!h.contains(*x)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                found.insert(std::move(*x));
            }
        }
        // next combination
        std::size_t k = d;
        while (k > 0 && idx[k - 1] == m - d + (k - 1)) {
            --k;
        }
        if (k == 0) {
            break;
        }
        ++idx[k - 1];
        for (std::size_t j = k; j < d; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
    return {found.begin(), found.end()};
}

bool halfspace_less(const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) {
        return a.normal < b.normal;
    }
    return a.offset < b.offset;
}

} // namespace

Polytope Polytope::empty(std::size_t dim) {
    auto d = std::make_shared<Data>();
    d->dim = dim;
    d->empty = true;
    return Polytope(std::move(d));
}

Polytope Polytope::from_bounded_halfspaces(std::size_t dim, std::vector<Halfspace> halfspaces) {
    if (dim == 0) {
        throw DimensionMismatch("polytopes need a positive ambient dimension");
    }
    // Normalize and keep the tightest offset per normal direction.
    std::map<Vector, Scalar> tightest;
    for (const auto& h : halfspaces) {
        if (h.normal.size() != dim) {
            throw DimensionMismatch("halfspace normal has length " + std::to_string(h.normal.size()) +
                                    ", expected " + std::to_string(dim));
        }
        auto n = normalize(h);
        if (!n) {
            if (sgn(h.offset) < 0) {
                return empty(dim);
            }
            continue;
        }
        auto [it, inserted] = tightest.emplace(std::move(n->normal), n->offset);
        if (!inserted && n->offset < it->second) {
            it->second = n->offset;
        }
    }
    std::vector<Halfspace> hs;
    hs.reserve(tightest.size());
    for (auto& [normal, offset] : tightest) {
        hs.push_back(Halfspace{normal, offset});
    }
    if (subset_count(hs.size(), dim) > kSubsetBudget) {
        if (!lp::feasible(hs, dim)) {
            return empty(dim);
        }
        hs = prune_with_lp(std::move(hs), dim);
    }

    std::vector<Vector> verts = enumerate_vertices(hs, dim);
    if (verts.empty()) {
        return empty(dim);
    }
    const int adim = pwa::affine_dimension(verts);

    std::vector<Halfspace> kept;
    for (const auto& h : hs) {
        std::vector<Vector> tight;
        for (const auto& v : verts) {
            if (dot(h.normal, v) == h.offset) {
                tight.push_back(v);
            }
        }
        if (tight.empty()) {
            continue;
        }
        if (adim == static_cast<int>(dim) && pwa::affine_dimension(tight) != adim - 1) {
            continue;
        }
        kept.push_back(h);
    }
    std::sort(kept.begin(), kept.end(), halfspace_less);

    auto d = std::make_shared<Data>();
    d->dim = dim;
    d->empty = false;
    d->halfspaces = std::move(kept);
    d->affine_dim = adim;
    d->lower = verts.front();
    d->upper = verts.front();
    for (const auto& v : verts) {
        for (std::size_t k = 0; k < dim; ++k) {
            if (v[k] < d->lower[k]) {
                d->lower[k] = v[k];
            }
            if (v[k] > d->upper[k]) {
                d->upper[k] = v[k];
            }
        }
    }
    d->vertices = std::move(verts);
    return Polytope(std::move(d));
}

Polytope Polytope::from_halfspaces(std::size_t dim, std::vector<Halfspace> halfspaces) {
    for (const auto& h : halfspaces) {
        if (h.normal.size() != dim) {
            throw DimensionMismatch("halfspace normal has length " + std::to_string(h.normal.size()) +
                                    ", expected " + std::to_string(dim));
        }
    }
    if (!lp::feasible(halfspaces, dim)) {
        return empty(dim);
    }
    for (std::size_t k = 0; k < dim; ++k) {
        for (int s : {1, -1}) {
            Vector c(dim);
            c[k] = s;
            if (lp::maximize(c, halfspaces, dim).status == lp::Status::Unbounded) {
                throw UnboundedRegion("constraints do not bound coordinate " + std::to_string(k));
            }
        }
    }
    return from_bounded_halfspaces(dim, std::move(halfspaces));
}

Polytope Polytope::box(const Vector& lower, const Vector& upper) {
    if (lower.size() != upper.size()) {
        throw DimensionMismatch("box corners differ in length");
    }
    const std::size_t n = lower.size();
    std::vector<Halfspace> hs;
    for (std::size_t k = 0; k < n; ++k) {
        Vector e(n);
        e[k] = 1;
        hs.push_back({e, upper[k]});
        e[k] = -1;
        hs.push_back({e, -lower[k]});
    }
    return from_bounded_halfspaces(n, std::move(hs));
}

Polytope Polytope::point(const Vector& p) {
    return box(p, p);
}

const std::vector<Halfspace>& Polytope::halfspaces() const {
    static const std::vector<Halfspace> none;
    return data_ ? data_->halfspaces : none;
}

const std::vector<Vector>& Polytope::vertices() const {
    static const std::vector<Vector> none;
    return data_ ? data_->vertices : none;
}

const Vector& Polytope::lower() const {
    if (is_empty()) {
        throw EmptyPolytope("empty polytope has no bounding box");
    }
    return data_->lower;
}

const Vector& Polytope::upper() const {
    if (is_empty()) {
        throw EmptyPolytope("empty polytope has no bounding box");
    }
    return data_->upper;
}

bool Polytope::contains(const Vector& x) const {
    if (is_empty()) {
        return false;
    }
    if (x.size() != dim()) {
        throw DimensionMismatch("point dimension differs from polytope dimension");
    }
    for (std::size_t k = 0; k < dim(); ++k) {
        if (x[k] < data_->lower[k] || x[k] > data_->upper[k]) {
            return false;
        }
    }
    return std::all_of(data_->halfspaces.begin(), data_->halfspaces.end(),
                       [&](const Halfspace& h) { return h.contains(x); });
}

bool Polytope::contains(const Polytope& other) const {
    if (other.is_empty()) {
        return true;
    }
    if (is_empty()) {
        return false;
    }
    return std::all_of(other.vertices().begin(), other.vertices().end(),
                       [&](const Vector& v) { return contains(v); });
}

bool Polytope::same_set(const Polytope& other) const {
    if (dim() != other.dim()) {
        return false;
    }
    if (is_empty() || other.is_empty()) {
        return is_empty() && other.is_empty();
    }
    return vertices() == other.vertices();
}

std::string Polytope::describe() const {
    std::ostringstream os;
    if (is_empty()) {
        os << "empty(" << dim() << ")";
        return os.str();
    }
    os << "conv{";
    for (std::size_t i = 0; i < vertices().size(); ++i) {
        os << (i ? ", " : "") << "(";
        for (std::size_t k = 0; k < dim(); ++k) {
            os << (k ? "," : "") << to_string(vertices()[i][k]);
        }
        os << ")";
    }
    os << "}";
    return os.str();
}

bool polytope_less(const Polytope& a, const Polytope& b) {
    if (a.dim() != b.dim()) {
        return a.dim() < b.dim();
    }
    return a.vertices() < b.vertices();
}

std::vector<Vector> vertex_enumeration(const Polytope& p) {
    if (p.is_empty()) {
        throw EmptyPolytope("vertex enumeration of an empty polytope");
    }
    return p.vertices();
}

} // namespace pwa
