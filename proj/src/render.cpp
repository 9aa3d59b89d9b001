// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pwa/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pwa/errors.hpp"

namespace pwa {

namespace {

constexpr double kWidth = 640.0;
constexpr double kMargin = 20.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::vector<Vector> polygon_order(std::vector<Vector> vertices) {
    if (vertices.size() < 3) {
        return vertices;
    }
    Vector c(2);
    for (const auto& v : vertices) {
        c = add(c, v);
    }
    c = scale(c, frac(1, static_cast<long>(vertices.size())));
    // Upper half-plane (angle in [0, pi)) first, then by cross product.
    auto half = [&](const Vector& v) {
        const Scalar dy = v[1] - c[1];
        const Scalar dx = v[0] - c[0];
        return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
    };
    std::sort(vertices.begin(), vertices.end(), [&](const Vector& a, const Vector& b) {
        const int ha = half(a);
        const int hb = half(b);
        if (ha != hb) {
            return ha < hb;
        }
        const Scalar cross = (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]);
        return cross > 0;
    });
    return vertices;
}

std::string render_svg(const PwaSystem& sys, const std::vector<RenderCell>& cells, const std::string& title) {
    if (sys.state_dim() != 2) {
        throw DimensionUnsupported("rendering needs a planar state space, got dimension " +
                                   std::to_string(sys.state_dim()));
    }
    const Vector& lo = sys.region().lower();
    const Vector& hi = sys.region().upper();
    const double w = to_double(hi[0] - lo[0]);
    const double h = to_double(hi[1] - lo[1]);
    const double s = (kWidth - 2 * kMargin) / std::max(w, h);
    const double height = h * s + 2 * kMargin;
    auto px = [&](const Vector& v) {
        return fmt(kMargin + to_double(v[0] - lo[0]) * s) + "," + fmt(height - kMargin - to_double(v[1] - lo[1]) * s);
    };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(height)
       << "\" viewBox=\"0 0 " << fmt(kWidth) << " " << fmt(height) << "\">\n";
    os << "<title>" << escape(title) << "</title>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(height)
       << "\" fill=\"#ffffff\"/>\n";
    for (const auto& c : cells) {
        os << "<polygon points=\"";
        const auto ordered = polygon_order(c.vertices);
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            os << (i ? " " : "") << px(ordered[i]);
        }
        os << "\" fill=\"" << c.fill << "\" fill-opacity=\"0.8\" stroke=\"#333333\" stroke-width=\"0.5\">";
        if (!c.label.empty()) {
            os << "<title>" << escape(c.label) << "</title>";
        }
        os << "</polygon>\n";
    }
    os << "<polygon points=\"";
    const auto outline = polygon_order(sys.region().vertices());
    for (std::size_t i = 0; i < outline.size(); ++i) {
        os << (i ? " " : "") << px(outline[i]);
    }
    os << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace pwa
