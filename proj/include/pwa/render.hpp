// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "pwa/system.hpp"

namespace pwa {

struct RenderCell {
    /// Vertices of a planar polygon, in any order.
    std::vector<Vector> vertices;
    std::string fill;
    std::string label;
};

inline constexpr const char* kColorExact = "#8fd19e";
inline constexpr const char* kColorSpurious = "#f4a582";
inline constexpr const char* kColorControlled = "#92c5de";
inline constexpr const char* kColorUncontrolled = "#dddddd";

/// Standalone SVG of the cells over the region. Throws DimensionUnsupported
/// unless the state space is planar. Output depends only on the arguments.
std::string render_svg(const PwaSystem& sys, const std::vector<RenderCell>& cells, const std::string& title);

/// Counter-clockwise order around the centroid, starting from the lowest angle.
std::vector<Vector> polygon_order(std::vector<Vector> vertices);

} // namespace pwa
