#pragma once

#include "rangeopt/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <vector>

// Renders a scene into a fixed 800x800 viewport: the point bounding box is
// fitted with a uniform scale and a 5% margin, y pointing up. Stations are
// small squares so that the circle count equals the ball/range count exactly.
class SvgScene {
public:
    explicit SvgScene(const rangeopt::PointSet& stations) : stations_(stations) {
        double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
        bool first = true;
        for (const auto& p : stations_) {
            double x = p[0], y = stations_.dim() > 1 ? p[1] : 0.0;
            if (first) {
                lo_x = hi_x = x;
                lo_y = hi_y = y;
                first = false;
            }
            lo_x = std::min(lo_x, x); hi_x = std::max(hi_x, x);
            lo_y = std::min(lo_y, y); hi_y = std::max(hi_y, y);
        }
        double w = hi_x - lo_x, h = hi_y - lo_y;
        double span = std::max(w, h);
        scale_ = span > 0.0 ? content / span : 1.0;
        off_x_ = margin + (content - w * scale_) / 2.0 - lo_x * scale_;
        off_y_ = margin + (content - h * scale_) / 2.0 - lo_y * scale_;
    }

    void add_circle(const rangeopt::Point& center, double radius) {
        circles_.push_back({px(center), py(center), radius * scale_});
    }

    // One polyline; vertices are station indices (repeats allowed).
    void add_path(const std::vector<int>& vertices) { paths_.push_back(vertices); }

    void write(std::ostream& out) const {
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
               "viewBox=\"0 0 800 800\">\n";
        for (const auto& c : circles_)
            out << "  <circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\""
                << num(c.r) << "\" fill=\"none\" stroke=\"#4682b4\" stroke-width=\"1.5\"/>\n";
        for (const auto& path : paths_) {
            out << "  <polyline points=\"";
            for (size_t i = 0; i < path.size(); ++i) {
                const auto& p = stations_[static_cast<size_t>(path[i])];
                out << (i ? " " : "") << num(px(p)) << "," << num(py(p));
            }
            out << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        }
        for (const auto& p : stations_)
            out << "  <rect x=\"" << num(px(p) - 2.0) << "\" y=\"" << num(py(p) - 2.0)
                << "\" width=\"4\" height=\"4\" fill=\"#c03020\"/>\n";
        out << "</svg>\n";
    }

private:
    static constexpr double margin = 40.0;  // 5% of the viewport per side
    static constexpr double content = 720.0;

    struct Circle {
        double x, y, r;
    };

    double px(const rangeopt::Point& p) const { return off_x_ + p[0] * scale_; }
    double py(const rangeopt::Point& p) const {
        double y = stations_.dim() > 1 ? p[1] : 0.0;
        return 800.0 - (off_y_ + y * scale_);
    }
    static std::string num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }

    const rangeopt::PointSet& stations_;
    double scale_ = 1.0, off_x_ = 0.0, off_y_ = 0.0;
    std::vector<Circle> circles_;
    std::vector<std::vector<int>> paths_;
};
