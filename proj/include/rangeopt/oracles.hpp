#pragma once

#include "rangeopt/disk_cover.hpp"
#include "rangeopt/energy_tsp.hpp"
#include "rangeopt/multicast.hpp"

#include <optional>

namespace rangeopt {

// Instance-size caps for the exact reference solvers. Oracles refuse (throw
// BudgetError) instead of silently approximating: they are the ground truth
// the approximation guarantees are tested against.
struct OracleBudget {
    int max_cover_points = 12;
    int max_multicast_points = 12;
    int max_multicast_kc = 4;
    int max_tsp_points = 9;
    std::optional<double> time_limit_sec; // enforced during enumeration
};

// True optimum of the original (un-snapped) cover instance; c > 0 selects the
// outlier variant (discrete centers only).
DiskCover exact_disk_cover(const PointSet& ps, int k, int c, double alpha, bool discrete,
                           const OracleBudget& budget = {});

// True optimum over sender subsets and exact pairwise-distance ranges on the
// original stations. Requires hops * |receivers| within budget.
RangeAssignment exact_multicast(const MulticastInstance& inst,
                                const OracleBudget& budget = {});

// Globally optimal tour by enumerating (n-1)!/2 permutations; canonical form
// starts at index 0 with order[1] < order[n-1].
Tour exact_tsp(const PointSet& ps, double alpha, const OracleBudget& budget = {});

} // namespace rangeopt
