// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/sampling.hpp"

namespace pwa {

namespace {

Vector convex_combination(Rng& rng, const std::vector<Vector>& verts) {
    std::uniform_int_distribution<long> weight(0, kSampleDenominator);
    std::vector<Scalar> w(verts.size());
    Scalar total = 0;
    for (auto& wi : w) {
        wi = Scalar(weight(rng));
        total += wi;
    }
    if (sgn(total) == 0) {
        return verts.front();
    }
    Vector x(verts.front().size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] += w[i] * verts[i][k];
        }
    }
    return scale(x, 1 / total);
}

} // namespace

Scalar sample_scalar(Rng& rng, const Scalar& lo, const Scalar& hi) {
    std::uniform_int_distribution<long> step(0, kSampleDenominator);
    const Scalar t = frac(step(rng), kSampleDenominator);
    Scalar x = lo + (hi - lo) * t;
    x.canonicalize();
    return x;
}

Vector sample_box(Rng& rng, const Vector& lo, const Vector& hi) {
    Vector x(lo.size());
    for (std::size_t k = 0; k < lo.size(); ++k) {
        x[k] = sample_scalar(rng, lo[k], hi[k]);
    }
    return x;
}

std::optional<Vector> sample_point(Rng& rng, const Polytope& p, int max_tries) {
    if (p.is_empty()) {
        return std::nullopt;
    }
    if (!p.is_full_dimensional()) {
        return convex_combination(rng, p.vertices());
    }
    for (int i = 0; i < max_tries; ++i) {
        Vector x = sample_box(rng, p.lower(), p.upper());
        if (p.contains(x)) {
            return x;
        }
    }
    return std::nullopt;
}

std::optional<Vector> sample_point(Rng& rng, const PolytopeSet& s, int max_tries) {
    if (s.is_empty()) {
        return std::nullopt;
    }
    std::vector<const Polytope*> full;
    for (const auto& p : s.parts()) {
        if (p.is_full_dimensional()) {
            full.push_back(&p);
        }
    }
    if (full.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, s.parts().size() - 1);
        return sample_point(rng, s.parts()[pick(rng)], max_tries);
    }
    // Rejection over the joint bounding box keeps the union uniform.
    Vector lo = full.front()->lower();
    Vector hi = full.front()->upper();
    for (const Polytope* p : full) {
        for (std::size_t k = 0; k < lo.size(); ++k) {
            if (p->lower()[k] < lo[k]) {
                lo[k] = p->lower()[k];
            }
            if (p->upper()[k] > hi[k]) {
                hi[k] = p->upper()[k];
            }
        }
    }
    for (int i = 0; i < max_tries; ++i) {
        Vector x = sample_box(rng, lo, hi);
        for (const Polytope* p : full) {
            if (p->contains(x)) {
                return x;
            }
        }
    }
    return std::nullopt;
}

} // namespace pwa
