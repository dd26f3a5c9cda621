#pragma once

#include "rangeopt/disk_cover.hpp" // SolveStats
#include "rangeopt/geometry.hpp"

#include <vector>

namespace rangeopt {

// Bounded-hop multicast: assign transmission ranges so the induced directed
// graph (edge p->q iff r(p) >= |pq|) contains a tree rooted at the source,
// spanning all receivers, of depth at most `hops`, minimizing sum r(p)^alpha.
struct MulticastInstance {
    PointSet stations;          // dimension 2
    int source = 0;
    std::vector<int> receivers; // indices into stations
    int hops = 1;               // k
    double alpha = 2.0;
    double epsilon = 1.0;

    void validate() const;
};

// epsilon/(4*alpha): each of the two lossy directions of the grid reduction
// costs (1+eps_int)^alpha, and (1+eps/(4a))^(2a) <= 1+eps for eps <= 1.
double internal_epsilon(double epsilon, double alpha);

struct MulticastCoreset {
    PointSet reps;                  // grid vertices, in normalized coordinates
    int source_rep = 0;
    std::vector<int> receiver_reps; // sorted, deduplicated
    GridSpec grid;                  // width Delta, normalized coordinates
    double scale = 0.0;             // normalization factor (original units per unit)
    std::vector<int> assignment;    // original station -> rep
    int source_original = 0;        // s itself represents its cell when lifting
    bool trivial = false;           // all receivers coincide with the source
    double delta() const { return trivial ? 0.0 : grid.cell_width; }
};

struct RangeAssignment {
    std::vector<double> ranges; // per point index; 0 for silent stations
    double cost = 0.0;
};

// True iff breadth-first exploration from `source` over edges
// {p -> q : ranges[p] >= |pq| - 1e-9} reaches every receiver in <= hops levels.
bool check_valid(const std::vector<double>& ranges, const PointSet& pts, int source,
                 const std::vector<int>& receivers, int hops);

// Translate so the source is the origin, scale so the farthest receiver is at
// distance exactly 1 (any root-to-receiver path then has total range >= 1,
// which is what pays for the snapping slack), snap stations down to the cell
// corners of a grid of width Delta/2, Delta = (1/sqrt 2) * eps_int/(hops*c).
// A corner at half width has the same worst-case snap error as the nearest
// vertex at full width (Delta/sqrt 2), and corner grids with a fixed origin
// nest exactly when epsilon doubles, so coreset sizes cannot grow with
// epsilon. The grid extends over all stations, not only the unit box.
MulticastCoreset build_multicast_coreset(const MulticastInstance& inst);

// Exact optimum over the representatives: sender subsets of size <= hops*c'
// containing the source rep, candidate ranges per sender either the exact
// pairwise rep distances (ladder=false) or the geometric ladder
// {d_min*(1+eps_int)^j} up to d_max (ladder=true).
RangeAssignment solve_multicast(const MulticastCoreset& cs, int hops, double alpha,
                                bool ladder, double eps_int, SolveStats* stats = nullptr);

// Map a representative solution back to the original stations: positive ranges
// become (r + sqrt(2)*Delta) * scale on one original per used vertex, Delta
// being twice the stored cell width (the source's vertex maps to s itself);
// everything else stays silent. The slack absorbs both endpoints' snap error.
RangeAssignment lift_ranges(const RangeAssignment& reduced, const MulticastCoreset& cs,
                            const MulticastInstance& inst);

// Parent edges (p, q) of a breadth-first witness tree, pruned to the paths
// that actually reach receivers. Empty when nothing needs transmitting.
std::vector<std::pair<int, int>> witness_tree(const std::vector<double>& ranges,
                                              const PointSet& pts, int source,
                                              const std::vector<int>& receivers, int hops);

struct MulticastRun {
    MulticastCoreset coreset;
    RangeAssignment reduced;
    RangeAssignment lifted;
    SolveStats stats;
    long long candidate_ranges = 0; // distinct range values offered per solve
    double coreset_ms = 0.0, solve_ms = 0.0, lift_ms = 0.0;
};

MulticastRun multicast_pipeline(const MulticastInstance& inst, bool ladder);

namespace detail {

std::vector<double> positive_distances(const PointSet& pts);
std::vector<double> range_ladder(const PointSet& pts, double eps_int);

// Core enumeration shared by the coreset solver and the exact oracle: sender
// subsets containing `source` of size <= max_senders, per-sender candidate
// ranges (exact distances, or `ladder` when given), validity via check_valid.
RangeAssignment enumerate_ranges(const PointSet& pts, int source,
                                 const std::vector<int>& receivers, int hops,
                                 int max_senders, double alpha,
                                 const std::vector<double>* ladder, SolveStats* stats);

} // namespace detail

} // namespace rangeopt
