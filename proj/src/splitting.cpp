// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/splitting.hpp"

#include <algorithm>

#include "pwa/errors.hpp"

namespace pwa {

namespace {

mpz_class floor_div(const Scalar& x, const Scalar& s) {
    const Scalar q = x / s;
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpz_class ceil_div(const Scalar& x, const Scalar& s) {
    const Scalar q = x / s;
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

} // namespace

SplitPolicy make_policy(const std::vector<Polytope>& collection, const Scalar& lambda) {
    if (collection.empty()) {
        throw EmptyCollection("splitting policy needs at least one polytope");
    }
    if (lambda <= 0 || lambda >= 1) {
        throw LambdaOutOfRange("lambda must lie strictly between 0 and 1, got " + to_string(lambda));
    }
    Scalar rho = -1;
    for (const auto& p : collection) {
        if (p.is_empty()) {
            throw EmptyCollection("splitting policy collection contains an empty polytope");
        }
        const Scalar d = diameter(p);
        if (rho < 0 || d < rho) {
            rho = d;
        }
    }
    if (sgn(rho) <= 0) {
        throw EmptyCollection("splitting policy collection contains a single point");
    }
    return SplitPolicy{lambda, rho};
}

std::vector<Polytope> split(const SplitPolicy& policy, const Polytope& p) {
    if (p.is_empty()) {
        throw EmptyPolytope("cannot split an empty polytope");
    }
    const Scalar diam = diameter(p);
    if (sgn(diam) == 0) {
        return {p};
    }
    const Scalar rho = std::min(policy.rho, diam);
    const Scalar side = policy.lambda * rho;
    return grid_split(p, side);
}

std::vector<Polytope> grid_split(const Polytope& p, const Scalar& side) {
    if (p.is_empty()) {
        throw EmptyPolytope("cannot split an empty polytope");
    }
    if (sgn(side) <= 0) {
        throw LambdaOutOfRange("grid side must be positive");
    }
    const std::size_t n = p.dim();
    std::vector<mpz_class> lo(n);
    std::vector<mpz_class> hi(n);
    for (std::size_t k = 0; k < n; ++k) {
        lo[k] = floor_div(p.lower()[k], side) - 1;
        hi[k] = ceil_div(p.upper()[k], side);
    }
    std::vector<Polytope> out;
    std::vector<mpz_class> idx = lo;
    const int adim = p.affine_dimension();
    while (true) {
        Vector cl(n);
        Vector cu(n);
        for (std::size_t k = 0; k < n; ++k) {
            cl[k] = side * Scalar(idx[k]);
            cu[k] = cl[k] + side;
        }
        const Polytope cell = intersect(p, Polytope::box(cl, cu));
        if (!cell.is_empty() && cell.affine_dimension() == adim &&
            std::none_of(out.begin(), out.end(), [&](const Polytope& q) { return q.same_set(cell); })) {
            out.push_back(cell);
        }
        // Odometer over the index box, first coordinate slowest.
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (idx[k] < hi[k]) {
                ++idx[k];
                break;
            }
            idx[k] = lo[k];
            if (k == 0) {
                return out;
            }
        }
    }
}

} // namespace pwa
