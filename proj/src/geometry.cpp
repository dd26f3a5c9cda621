#include "rangeopt/geometry.hpp"
#include "rangeopt/errors.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace rangeopt {

double dist2(const Point& p, const Point& q) {
    double s = 0.0;
    for (size_t i = 0; i < p.coords.size(); ++i) {
        double d = p.coords[i] - q.coords[i];
        s += d * d;
    }
    return s;
}

double dist(const Point& p, const Point& q) {
    return std::sqrt(dist2(p, q));
}

double power_cost(const Point& p, const Point& q, double alpha) {
    if (p.dim() != q.dim())
        throw InputError("power_cost: dimension mismatch (" + std::to_string(p.dim()) +
                         " vs " + std::to_string(q.dim()) + ")");
    if (alpha < 1.0)
        throw InputError("power_cost: alpha must be >= 1");
    double d2 = dist2(p, q);
    if (alpha == 2.0)
        return d2;
    return std::pow(std::sqrt(d2), alpha);
}

void PointSet::add(Point p) {
    if (pts_.empty() && dim_ == 0) {
        dim_ = p.dim();
    } else if (p.dim() != dim_) {
        throw InputError("PointSet: point dimension " + std::to_string(p.dim()) +
                         " does not match set dimension " + std::to_string(dim_));
    }
    if (dim_ < 1)
        throw InputError("PointSet: dimension must be at least 1");
    pts_.push_back(std::move(p));
}

namespace {

// floor((x - o)/w) with a post-correction so the result is the true cell index
// under exact comparison against the grid lines o + i*w. Without it, rounding in
// the division can put a point that sits exactly on a grid line into the wrong
// cell, and re-snapping a representative would not be the identity.
int64_t cell_index(double x, double o, double w) {
    auto i = static_cast<int64_t>(std::floor((x - o) / w));
    while (x >= o + static_cast<double>(i + 1) * w) ++i;
    while (x < o + static_cast<double>(i) * w) --i;
    return i;
}

// Nearest grid vertex index, ties broken upward (round half up).
int64_t vertex_index(double x, double o, double w) {
    auto i = static_cast<int64_t>(std::floor((x - o) / w + 0.5));
    int64_t best = i;
    double bestd = std::abs(x - (o + static_cast<double>(i) * w));
    for (int64_t j : {i - 1, i + 1}) {
        double dj = std::abs(x - (o + static_cast<double>(j) * w));
        if (dj < bestd || (dj == bestd && j > best)) {
            best = j;
            bestd = dj;
        }
    }
    return best;
}

SnapResult snap_impl(const PointSet& ps, const GridSpec& grid, bool nearest) {
    if (grid.cell_width <= 0.0)
        throw InputError("grid cell width must be positive");
    if (!ps.empty() && grid.origin.dim() != ps.dim())
        throw InputError("grid origin dimension does not match point set");
    SnapResult out;
    out.assignment.reserve(ps.size());
    std::map<std::vector<int64_t>, int> seen;
    PointSet reps(ps.dim());
    for (const Point& p : ps) {
        std::vector<int64_t> cell(static_cast<size_t>(ps.dim()));
        for (int a = 0; a < ps.dim(); ++a)
            cell[static_cast<size_t>(a)] =
                nearest ? vertex_index(p[a], grid.origin[a], grid.cell_width)
                        : cell_index(p[a], grid.origin[a], grid.cell_width);
        auto it = seen.find(cell);
        if (it == seen.end()) {
            it = seen.emplace(cell, static_cast<int>(reps.size())).first;
            Point rep;
            rep.coords.resize(static_cast<size_t>(ps.dim()));
            for (int a = 0; a < ps.dim(); ++a)
                rep[a] = grid.origin[a] + static_cast<double>(cell[static_cast<size_t>(a)]) * grid.cell_width;
            reps.add(std::move(rep));
        }
        out.assignment.push_back(it->second);
    }
    out.reps = std::move(reps);
    return out;
}

} // namespace

SnapResult snap_corner(const PointSet& ps, const GridSpec& grid) {
    return snap_impl(ps, grid, false);
}

SnapResult snap_nearest(const PointSet& ps, const GridSpec& grid) {
    return snap_impl(ps, grid, true);
}

Ball diametral_ball(const Point& p, const Point& q) {
    Ball b;
    b.center.coords.resize(p.coords.size());
    for (size_t i = 0; i < p.coords.size(); ++i)
        b.center.coords[i] = (p.coords[i] + q.coords[i]) / 2.0;
    b.radius = dist(p, q) / 2.0;
    return b;
}

std::optional<Ball> circumball(const Point& p, const Point& q, const Point& r) {
    if (p.dim() != 2 || q.dim() != 2 || r.dim() != 2)
        throw InputError("circumball is defined for dimension 2");
    double lox = std::min({p[0], q[0], r[0]}), hix = std::max({p[0], q[0], r[0]});
    double loy = std::min({p[1], q[1], r[1]}), hiy = std::max({p[1], q[1], r[1]});
    double diag2 = (hix - lox) * (hix - lox) + (hiy - loy) * (hiy - loy);
    double d = 2.0 * (p[0] * (q[1] - r[1]) + q[0] * (r[1] - p[1]) + r[0] * (p[1] - q[1]));
    // |d|/4 is the triangle area
    if (std::abs(d) / 4.0 <= 1e-12 * diag2)
        return std::nullopt;
    double p2 = p[0] * p[0] + p[1] * p[1];
    double q2 = q[0] * q[0] + q[1] * q[1];
    double r2 = r[0] * r[0] + r[1] * r[1];
    Ball b;
    b.center = Point{(p2 * (q[1] - r[1]) + q2 * (r[1] - p[1]) + r2 * (p[1] - q[1])) / d,
                     (p2 * (r[0] - q[0]) + q2 * (p[0] - r[0]) + r2 * (q[0] - p[0])) / d};
    b.radius = dist(b.center, p);
    return b;
}

PointSet parse_points(std::istream& in, const std::string& source_name) {
    PointSet ps;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ss(line);
        std::vector<double> coords;
        double v;
        while (ss >> v) {
            if (!std::isfinite(v))
                throw InputError(source_name + ":" + std::to_string(lineno) +
                                 ": coordinates must be finite");
            coords.push_back(v);
        }
        if (!ss.eof()) {
            std::string tok;
            ss.clear();
            ss >> tok;
            throw InputError(source_name + ":" + std::to_string(lineno) +
                             ": invalid token '" + tok + "'");
        }
        if (coords.empty())
            throw InputError(source_name + ":" + std::to_string(lineno) + ": empty data line");
        if (!ps.empty() && static_cast<int>(coords.size()) != ps.dim())
            throw InputError(source_name + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(ps.dim()) + " coordinates, got " +
                             std::to_string(coords.size()));
        ps.add(Point(std::move(coords)));
    }
    return ps;
}

PointSet read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open input file: " + path);
    return parse_points(in, path);
}

void write_points(std::ostream& out, const PointSet& ps) {
    char buf[64];
    for (const Point& p : ps) {
        for (int a = 0; a < ps.dim(); ++a) {
            std::snprintf(buf, sizeof buf, "%.17g", p[a]);
            if (a) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

} // namespace rangeopt
