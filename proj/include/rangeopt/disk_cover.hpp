#pragma once

#include "rangeopt/geometry.hpp"

#include <chrono>
#include <optional>
#include <vector>

namespace rangeopt {

struct CoverConfig {
    int k = 1;            // number of balls
    double alpha = 2.0;   // power gradient, >= 1
    double epsilon = 1.0; // approximation parameter, in (0, 1]
    int outliers = 0;     // c: points a cover may leave uncovered
    bool discrete = true; // centers restricted to input points

    void validate() const; // throws InputError on bad values
};

// Grid reduction of an instance. The solve-then-lift pipeline on `reps`
// is within (1+epsilon) of the optimum on the original points.
struct Coreset {
    PointSet reps;
    std::vector<int> assignment; // original index -> rep index
    GridSpec grid;               // unused when degenerate
    double opt_estimate = 0.0;
    int k_effective = 1;         // k, or k + c for the outlier variant
    bool degenerate = false;     // zero-cost instance: input kept verbatim, no grid
    double delta() const { return degenerate ? 0.0 : grid.cell_width; }
};

struct DiskCover {
    std::vector<Ball> balls;
    double cost = 0.0;
    std::vector<int> uncovered;      // point indices left uncovered (outlier variant)
    std::vector<int> center_indices; // per ball: index of the point used as center,
                                     // -1 for free (non-discrete) centers
};

// Enumeration bookkeeping, plus an optional wall-clock deadline the
// enumerative solvers honor (they throw BudgetError when it passes).
struct SolveStats {
    long long candidates = 0; // candidate solutions evaluated
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Lower bound on the optimal k-ball cover cost via farthest-point traversal:
// returns (r_g/2)^alpha where r_g is the traversal's k-center radius.
// Zero means the instance is coverable at zero cost.
double estimate_opt(const PointSet& ps, int k, double alpha);

// Constant c in the grid width formula delta' = epsilon*OPT^(1/alpha)/(k*c):
// (epsilon/k) / ((1 + epsilon/k)^(1/alpha) - 1). Bounded by 1/(2^(1/alpha)-1)
// whenever epsilon <= 1 <= k.
double grid_constant(double epsilon, int k, double alpha);

Coreset build_coreset(const PointSet& ps, const CoverConfig& cfg);

// Exact minimum-cost cover of `reps` with at most k balls centered on points
// of `reps`. Candidate radii per center are the distances to the points.
DiskCover solve_discrete(const PointSet& reps, int k, double alpha, SolveStats* stats = nullptr);

// Exact minimum-cost cover with unrestricted centers (dimension 2): candidate
// balls are diametral pairs, circumballs of non-collinear triples, and
// radius-0 balls on the points.
DiskCover solve_nondiscrete(const PointSet& reps, int k, double alpha, SolveStats* stats = nullptr);

// Exact optimum allowing up to c uncovered points, discrete centers only.
// `weights` (default: all 1) is the uncovered budget each point consumes;
// the pipeline passes cell multiplicities so the lifted cover never leaves
// more than c original points out.
DiskCover solve_with_outliers(const PointSet& reps, int k, int c, double alpha,
                              const std::vector<long long>* weights = nullptr,
                              SolveStats* stats = nullptr);

// Map a cover of the representatives back to the original points: radii grow
// by sqrt(d)*delta (free centers) or 2*sqrt(d)*delta (discrete, whose centers
// also move back onto original points); `uncovered` is translated to original
// indices.
DiskCover lift_cover(const DiskCover& cover, const Coreset& cs, const PointSet& original,
                     const CoverConfig& cfg);

struct CoverRun {
    Coreset coreset;
    DiskCover reduced;  // solution on the representatives
    DiskCover lifted;   // solution on the original points
    SolveStats stats;
    double coreset_ms = 0.0, solve_ms = 0.0, lift_ms = 0.0;
};

// Full pipeline: estimate, snap, solve, lift.
CoverRun cover_pipeline(const PointSet& ps, const CoverConfig& cfg);

// True iff every point outside `uncovered` is within `slack` of some ball.
bool cover_is_feasible(const DiskCover& cover, const PointSet& ps, double slack = 1e-9);

} // namespace rangeopt
