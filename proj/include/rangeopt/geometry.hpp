#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rangeopt {

struct Point {
    std::vector<double> coords;

    Point() = default;
    Point(std::initializer_list<double> c) : coords(c) {}
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}

    int dim() const { return static_cast<int>(coords.size()); }
    double operator[](int i) const { return coords[static_cast<size_t>(i)]; }
    double& operator[](int i) { return coords[static_cast<size_t>(i)]; }
    bool operator==(const Point& o) const { return coords == o.coords; }
};

double dist2(const Point& p, const Point& q);
double dist(const Point& p, const Point& q);

// |pq|^alpha. Throws InputError on dimension mismatch or alpha < 1.
double power_cost(const Point& p, const Point& q, double alpha);

// Ordered list of points with a fixed dimension; indices are stable identities.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const Point& operator[](size_t i) const { return pts_[i]; }

    void add(Point p); // enforces the shared dimension, throws InputError

    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }

private:
    int dim_ = 0;
    std::vector<Point> pts_;
};

// Regular axis-aligned grid: cell i is [origin + i*w, origin + (i+1)*w) per axis.
struct GridSpec {
    double cell_width = 1.0;
    Point origin;
};

struct Ball {
    Point center;
    double radius = 0.0;
};

struct SnapResult {
    PointSet reps;               // deduplicated representatives, in first-seen order
    std::vector<int> assignment; // original index -> rep index
};

// Snap each point to the minimum-coordinate corner of its (half-open) grid cell.
SnapResult snap_corner(const PointSet& ps, const GridSpec& grid);

// Snap each point to the nearest grid vertex (ties round half up per axis).
SnapResult snap_nearest(const PointSet& ps, const GridSpec& grid);

// Smallest ball with p and q in diametral position.
Ball diametral_ball(const Point& p, const Point& q);

// Circle through three points in the plane; nullopt when (near-)collinear.
// Degeneracy: triangle area below 1e-12 x (bbox diagonal)^2.
std::optional<Ball> circumball(const Point& p, const Point& q, const Point& r);

// Text format shared by every tool: one point per line, whitespace-separated
// coordinates, '#' starts a comment line, dimension fixed by the first data line.
PointSet parse_points(std::istream& in, const std::string& source_name = "<input>");
PointSet read_points_file(const std::string& path);
void write_points(std::ostream& out, const PointSet& ps);

} // namespace rangeopt
