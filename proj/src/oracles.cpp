#include "rangeopt/oracles.hpp"
#include "rangeopt/errors.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <string>

namespace rangeopt {

namespace {

SolveStats with_deadline(const OracleBudget& budget) {
    SolveStats stats;
    if (budget.time_limit_sec)
        stats.deadline = std::chrono::steady_clock::now() +
                         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(*budget.time_limit_sec));
    return stats;
}

void refuse_over(size_t n, int cap, const std::string& what) {
    if (n > static_cast<size_t>(cap))
        throw BudgetError(what + ": instance has " + std::to_string(n) +
                          " points, budget allows " + std::to_string(cap));
}

} // namespace

DiskCover exact_disk_cover(const PointSet& ps, int k, int c, double alpha, bool discrete,
                           const OracleBudget& budget) {
    refuse_over(ps.size(), budget.max_cover_points, "exact_disk_cover");
    if (c < 0) throw InputError("exact_disk_cover: outlier count must be >= 0");
    SolveStats stats = with_deadline(budget);
    if (c > 0) {
        if (!discrete)
            throw UnsupportedError("the outlier variant requires discrete centers");
        return solve_with_outliers(ps, k, c, alpha, nullptr, &stats);
    }
    return discrete ? solve_discrete(ps, k, alpha, &stats)
                    : solve_nondiscrete(ps, k, alpha, &stats);
}

RangeAssignment exact_multicast(const MulticastInstance& inst, const OracleBudget& budget) {
    inst.validate();
    refuse_over(inst.stations.size(), budget.max_multicast_points, "exact_multicast");
    std::vector<int> recv = inst.receivers;
    std::sort(recv.begin(), recv.end());
    recv.erase(std::unique(recv.begin(), recv.end()), recv.end());
    long long kc = static_cast<long long>(inst.hops) * static_cast<long long>(recv.size());
    if (kc > budget.max_multicast_kc)
        throw BudgetError("exact_multicast: hops * receivers = " + std::to_string(kc) +
                          ", budget allows " + std::to_string(budget.max_multicast_kc));
    SolveStats stats = with_deadline(budget);
    int needed = 0;
    for (int r : recv)
        if (r != inst.source) ++needed;
    int max_senders = static_cast<int>(std::min<long long>(
        static_cast<long long>(inst.hops) * needed, static_cast<long long>(inst.stations.size())));
    if (needed == 0) {
        RangeAssignment zero;
        zero.ranges.assign(inst.stations.size(), 0.0);
        return zero;
    }
    return detail::enumerate_ranges(inst.stations, inst.source, recv, inst.hops, max_senders,
                                    inst.alpha, nullptr, &stats);
}

Tour exact_tsp(const PointSet& ps, double alpha, const OracleBudget& budget) {
    if (ps.empty()) throw InputError("exact_tsp: empty point set");
    refuse_over(ps.size(), budget.max_tsp_points, "exact_tsp");
    size_t n = ps.size();
    Tour best;
    if (n == 1) {
        best.order = {0};
        return best;
    }
    SolveStats stats = with_deadline(budget);
    std::vector<int> perm(n - 1);
    std::iota(perm.begin(), perm.end(), 1);
    best.cost = std::numeric_limits<double>::infinity();
    long long count = 0;
    do {
        // Fix point 0 and skip reversals: keep tours whose second element is
        // smaller than their last, the canonical representative.
        if (n > 2 && perm.front() > perm.back()) continue;
        if (((++count) & 0x3ff) == 0 && stats.deadline &&
            std::chrono::steady_clock::now() > *stats.deadline)
            throw BudgetError("exact_tsp: time budget exceeded");
        double c = power_cost(ps[0], ps[static_cast<size_t>(perm.front())], alpha);
        for (size_t i = 0; i + 1 < perm.size() && c < best.cost; ++i)
            c += power_cost(ps[static_cast<size_t>(perm[i])],
                            ps[static_cast<size_t>(perm[i + 1])], alpha);
        c += power_cost(ps[static_cast<size_t>(perm.back())], ps[0], alpha);
        if (c < best.cost) {
            best.cost = c;
            best.order.assign(1, 0);
            best.order.insert(best.order.end(), perm.begin(), perm.end());
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace rangeopt
