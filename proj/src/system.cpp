// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/system.hpp"

#include "pwa/errors.hpp"

namespace pwa {

PwaSystem PwaSystem::create(std::vector<Mode> modes, Polytope input_set, Polytope region) {
    if (region.is_empty()) {
        throw ModelError("analysis region is empty");
    }
    if (input_set.is_empty()) {
        throw ModelError("input set is empty");
    }
    if (modes.empty()) {
        throw ModelError("system has no modes");
    }
    const std::size_t n = region.dim();
    const std::size_t m = input_set.dim();
    if (!region.is_full_dimensional()) {
        throw ModelError("analysis region has empty interior");
    }
    PwaSystem sys;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Mode& md = modes[i];
        const std::string tag = "mode " + std::to_string(i) + ": ";
        if (md.a.rows() != n || md.a.cols() != n) {
            throw ModelError(tag + "A must be " + std::to_string(n) + "x" + std::to_string(n));
        }
        if (md.b.rows() != n || md.b.cols() != m) {
            throw ModelError(tag + "B must be " + std::to_string(n) + "x" + std::to_string(m));
        }
        if (md.f.size() != n) {
            throw ModelError(tag + "f must have length " + std::to_string(n));
        }
        std::vector<Halfspace> hs = region.halfspaces();
        for (const auto& h : md.guard) {
            if (h.normal.size() != n) {
                throw ModelError(tag + "guard halfspace has wrong dimension");
            }
            hs.push_back(h);
        }
        Polytope g = Polytope::from_bounded_halfspaces(n, std::move(hs));
        if (!g.is_full_dimensional()) {
            throw ModelError(tag + "guard restricted to the region has empty interior");
        }
        sys.restricted_.push_back(std::move(g));
    }
    Scalar total = 0;
    for (std::size_t i = 0; i < sys.restricted_.size(); ++i) {
        total += volume(sys.restricted_[i]);
        for (std::size_t j = i + 1; j < sys.restricted_.size(); ++j) {
            if (overlaps(sys.restricted_[i], sys.restricted_[j], static_cast<int>(n))) {
                throw ModelError("guards of modes " + std::to_string(i) + " and " + std::to_string(j) +
                                 " overlap");
            }
        }
    }
    if (total != volume(region)) {
        throw ModelError("guards do not cover the analysis region");
    }
    sys.modes_ = std::move(modes);
    sys.input_set_ = std::move(input_set);
    sys.region_ = std::move(region);
    return sys;
}

std::size_t PwaSystem::mode_of(const Vector& x) const {
    if (x.size() != state_dim()) {
        throw DimensionMismatch("state has wrong dimension");
    }
    for (std::size_t i = 0; i < restricted_.size(); ++i) {
        if (restricted_[i].contains(x)) {
            return i;
        }
    }
    throw OutsideRegion("state lies outside the analysis region");
}

Vector PwaSystem::apply_mode(std::size_t i, const Vector& x, const Vector& u) const {
    const Mode& md = modes_.at(i);
    return add(add(md.a.apply(x), md.b.apply(u)), md.f);
}

Vector PwaSystem::step(const Vector& x, const Vector& u) const {
    const std::size_t i = mode_of(x);
    if (u.size() != input_dim() || !input_set_.contains(u)) {
        throw InputNotAdmissible("input lies outside the input set");
    }
    return apply_mode(i, x, u);
}

Trajectory PwaSystem::run(const Vector& x0, const std::vector<Vector>& inputs) const {
    Trajectory t;
    mode_of(x0);
    t.states.push_back(x0);
    for (const auto& u : inputs) {
        Vector next = step(t.states.back(), u);
        t.inputs.push_back(u);
        t.states.push_back(std::move(next));
        if (!region_.contains(t.states.back())) {
            t.exited = true;
            break;
        }
    }
    return t;
}

Scalar gran_of_embedding(const PwaSystem& sys) {
    Scalar best = 0;
    for (const auto& g : sys.restricted_guards()) {
        const Scalar d = diameter(g);
        if (d > best) {
            best = d;
        }
    }
    return best;
}

} // namespace pwa
