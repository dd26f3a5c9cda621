#include "rangeopt/multicast.hpp"
#include "rangeopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace rangeopt {

namespace {

constexpr double kEdgeSlack = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double powa(double x, double alpha) {
    return alpha == 2.0 ? x * x : std::pow(x, alpha);
}

void bump(SolveStats* stats) {
    if (!stats) return;
    if ((++stats->candidates & 0xfff) == 0 && stats->deadline &&
        std::chrono::steady_clock::now() > *stats->deadline)
        throw BudgetError("solver exceeded its time budget");
}

std::vector<int> unique_sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

void MulticastInstance::validate() const {
    if (stations.empty()) throw InputError("multicast: empty station set");
    if (stations.dim() != 2) throw UnsupportedError("multicast is implemented for dimension 2");
    auto in_range = [&](int i) { return i >= 0 && static_cast<size_t>(i) < stations.size(); };
    if (!in_range(source)) throw InputError("multicast: source index out of range");
    if (receivers.empty()) throw InputError("multicast: at least one receiver required");
    for (int r : receivers)
        if (!in_range(r)) throw InputError("multicast: receiver index out of range");
    if (hops < 1) throw InputError("multicast: hop count must be >= 1");
    if (alpha < 1.0) throw InputError("multicast: alpha must be >= 1");
    if (!(epsilon > 0.0) || epsilon > 1.0) throw InputError("multicast: epsilon must be in (0, 1]");
}

double internal_epsilon(double epsilon, double alpha) {
    return epsilon / (4.0 * alpha);
}

bool check_valid(const std::vector<double>& ranges, const PointSet& pts, int source,
                 const std::vector<int>& receivers, int hops) {
    size_t n = pts.size();
    if (ranges.size() != n) throw InputError("check_valid: range vector size mismatch");
    std::vector<char> reached(n, 0);
    reached[static_cast<size_t>(source)] = 1;
    std::vector<int> frontier{source};
    for (int level = 0; level < hops && !frontier.empty(); ++level) {
        std::vector<int> next;
        for (int p : frontier) {
            // No skip for zero ranges: r(p) >= |pq| admits coincident stations.
            double rp = ranges[static_cast<size_t>(p)];
            for (size_t q = 0; q < n; ++q) {
                if (reached[q]) continue;
                if (rp >= dist(pts[static_cast<size_t>(p)], pts[q]) - kEdgeSlack) {
                    reached[q] = 1;
                    next.push_back(static_cast<int>(q));
                }
            }
        }
        frontier = std::move(next);
    }
    for (int r : receivers)
        if (!reached[static_cast<size_t>(r)]) return false;
    return true;
}

MulticastCoreset build_multicast_coreset(const MulticastInstance& inst) {
    inst.validate();
    MulticastCoreset cs;
    cs.source_original = inst.source;
    const PointSet& P = inst.stations;
    const Point& s = P[static_cast<size_t>(inst.source)];
    std::vector<int> recv = unique_sorted(inst.receivers);

    double scale = 0.0;
    for (int r : recv) scale = std::max(scale, dist(s, P[static_cast<size_t>(r)]));
    if (scale <= 0.0) {
        // Every receiver sits exactly on the source: nothing to transmit.
        cs.trivial = true;
        cs.scale = 0.0;
        PointSet reps(2);
        reps.add(Point{0.0, 0.0});
        cs.reps = std::move(reps);
        cs.source_rep = 0;
        cs.receiver_reps = {0};
        cs.assignment.assign(P.size(), 0);
        cs.grid.cell_width = 0.0;
        cs.grid.origin = Point{0.0, 0.0};
        return cs;
    }
    cs.scale = scale;
    PointSet normalized(2);
    for (const Point& p : P)
        normalized.add(Point{(p[0] - s[0]) / scale, (p[1] - s[1]) / scale});

    double eps_int = internal_epsilon(inst.epsilon, inst.alpha);
    int c = static_cast<int>(recv.size());
    // Half of Delta = (1/sqrt 2)*eps_int/(hops*c): corner snapping at half
    // width keeps the per-endpoint error at Delta/sqrt 2 while the grids for
    // epsilon and 2*epsilon nest (cell_width is linear in epsilon and the
    // origin is pinned), so doubling epsilon can only merge representatives.
    cs.grid.cell_width = 0.5 * (1.0 / std::sqrt(2.0)) * eps_int / (inst.hops * c);
    cs.grid.origin = Point{0.0, 0.0};
    SnapResult sr = snap_corner(normalized, cs.grid);
    cs.reps = std::move(sr.reps);
    cs.assignment = std::move(sr.assignment);
    cs.source_rep = cs.assignment[static_cast<size_t>(inst.source)];
    std::vector<int> rr;
    for (int r : recv) rr.push_back(cs.assignment[static_cast<size_t>(r)]);
    cs.receiver_reps = unique_sorted(std::move(rr));
    return cs;
}

namespace detail {

// Distinct positive pairwise distances, ascending.
std::vector<double> positive_distances(const PointSet& pts) {
    std::set<double> vals;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            double d = dist(pts[i], pts[j]);
            if (d > 0.0) vals.insert(d);
        }
    return {vals.begin(), vals.end()};
}

std::vector<double> range_ladder(const PointSet& pts, double eps_int) {
    auto ds = positive_distances(pts);
    if (ds.empty()) return {};
    double lo = ds.front(), hi = ds.back();
    std::vector<double> ladder;
    for (double v = lo; v < hi; v *= 1.0 + eps_int) ladder.push_back(v);
    ladder.push_back(hi);
    return ladder;
}

// Minimum-cost valid assignment over sender subsets that contain `source`,
// of size at most max_senders. Candidate ranges per sender: its distances to
// the other points (shrinking an optimal range to the farthest point it needs
// loses nothing), or the shared `ladder` values when given. Subsets are tried
// smallest-first in lexicographic order and updates are strict, so ties
// resolve deterministically.
RangeAssignment enumerate_ranges(const PointSet& pts, int source,
                                 const std::vector<int>& receivers, int hops,
                                 int max_senders, double alpha,
                                 const std::vector<double>* ladder, SolveStats* stats) {
    size_t n = pts.size();
    RangeAssignment best;
    best.ranges.assign(n, 0.0);
    best.cost = 0.0;
    std::vector<int> need;
    for (int r : receivers)
        if (r != source) need.push_back(r);
    if (need.empty()) return best;
    // Zero-length edges can already reach everything when stations coincide.
    if (check_valid(best.ranges, pts, source, need, hops)) return best;

    std::vector<std::vector<double>> cand(n);
    if (ladder) {
        for (size_t i = 0; i < n; ++i) cand[i] = *ladder;
    } else {
        for (size_t i = 0; i < n; ++i) {
            std::set<double> vals;
            for (size_t j = 0; j < n; ++j) {
                double d = dist(pts[i], pts[j]);
                if (d > 0.0) vals.insert(d);
            }
            cand[i].assign(vals.begin(), vals.end());
        }
    }

    double best_cost = kInf;
    std::vector<double> work(n, 0.0);
    std::vector<int> senders;
    senders.reserve(static_cast<size_t>(max_senders));

    auto assign_ranges = [&](auto&& self, size_t idx, double cost) -> void {
        if (idx == senders.size()) {
            bump(stats);
            if (check_valid(work, pts, source, need, hops) && cost < best_cost) {
                best_cost = cost;
                best.ranges = work;
            }
            return;
        }
        int p = senders[idx];
        for (double r : cand[static_cast<size_t>(p)]) {
            double c2 = cost + powa(r, alpha);
            if (c2 >= best_cost) break;
            work[static_cast<size_t>(p)] = r;
            self(self, idx + 1, c2);
        }
        work[static_cast<size_t>(p)] = 0.0;
    };

    auto pick = [&](auto&& self, int from, int remaining) -> void {
        if (remaining == 0) {
            assign_ranges(assign_ranges, 0, 0.0);
            return;
        }
        for (int i = from; i < static_cast<int>(n); ++i) {
            if (i == source) continue;
            senders.push_back(i);
            self(self, i + 1, remaining - 1);
            senders.pop_back();
        }
    };

    max_senders = std::min<int>(max_senders, static_cast<int>(n));
    for (int size = 1; size <= max_senders; ++size) {
        senders.assign(1, source);
        pick(pick, 0, size - 1);
    }
    if (!std::isfinite(best_cost))
        throw InputError("multicast solver: no valid assignment found"); // unreachable
    best.cost = best_cost;
    return best;
}

} // namespace detail

RangeAssignment solve_multicast(const MulticastCoreset& cs, int hops, double alpha,
                                bool ladder, double eps_int, SolveStats* stats) {
    size_t n = cs.reps.size();
    RangeAssignment zero;
    zero.ranges.assign(n, 0.0);
    if (cs.trivial) return zero;
    std::vector<int> need;
    for (int r : cs.receiver_reps)
        if (r != cs.source_rep) need.push_back(r);
    if (need.empty()) return zero;

    // Every receiver rep is reached by a root path with at most `hops`
    // transmitting nodes, so an optimal solution never needs more senders
    // than hops * (receiver reps beyond the source's).
    int max_senders = static_cast<int>(std::min<long long>(
        static_cast<long long>(hops) * static_cast<long long>(need.size()),
        static_cast<long long>(n)));
    std::vector<double> lad;
    if (ladder) lad = detail::range_ladder(cs.reps, eps_int);
    return detail::enumerate_ranges(cs.reps, cs.source_rep, cs.receiver_reps, hops,
                                    max_senders, alpha, ladder ? &lad : nullptr, stats);
}

RangeAssignment lift_ranges(const RangeAssignment& reduced, const MulticastCoreset& cs,
                            const MulticastInstance& inst) {
    RangeAssignment out;
    out.ranges.assign(inst.stations.size(), 0.0);
    out.cost = 0.0;
    if (cs.trivial) return out;
    std::vector<int> first_orig(cs.reps.size(), -1);
    for (size_t o = 0; o < cs.assignment.size(); ++o) {
        int g = cs.assignment[o];
        if (first_orig[static_cast<size_t>(g)] < 0) first_orig[static_cast<size_t>(g)] = static_cast<int>(o);
    }
    double slack = 2.0 * std::sqrt(2.0) * cs.grid.cell_width; // sqrt(2)*Delta
    for (size_t g = 0; g < reduced.ranges.size(); ++g) {
        double r = reduced.ranges[g];
        if (r <= 0.0) continue;
        int o = static_cast<int>(g) == cs.source_rep ? cs.source_original : first_orig[g];
        out.ranges[static_cast<size_t>(o)] = (r + slack) * cs.scale;
        out.cost += powa(out.ranges[static_cast<size_t>(o)], inst.alpha);
    }
    return out;
}

std::vector<std::pair<int, int>> witness_tree(const std::vector<double>& ranges,
                                              const PointSet& pts, int source,
                                              const std::vector<int>& receivers, int hops) {
    size_t n = pts.size();
    std::vector<int> parent(n, -1);
    std::vector<char> reached(n, 0);
    reached[static_cast<size_t>(source)] = 1;
    std::vector<int> frontier{source};
    for (int level = 0; level < hops && !frontier.empty(); ++level) {
        std::vector<int> next;
        for (int p : frontier) {
            double rp = ranges[static_cast<size_t>(p)];
            for (size_t q = 0; q < n; ++q) {
                if (reached[q]) continue;
                if (rp >= dist(pts[static_cast<size_t>(p)], pts[q]) - kEdgeSlack) {
                    reached[q] = 1;
                    parent[q] = p;
                    next.push_back(static_cast<int>(q));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<char> keep(n, 0);
    for (int r : receivers)
        for (int v = r; v >= 0 && reached[static_cast<size_t>(v)] && !keep[static_cast<size_t>(v)];
             v = parent[static_cast<size_t>(v)])
            keep[static_cast<size_t>(v)] = 1;
    std::vector<std::pair<int, int>> edges;
    for (size_t v = 0; v < n; ++v)
        if (keep[v] && parent[v] >= 0) edges.emplace_back(parent[v], static_cast<int>(v));
    std::sort(edges.begin(), edges.end());
    return edges;
}

MulticastRun multicast_pipeline(const MulticastInstance& inst, bool ladder) {
    inst.validate();
    using Clock = std::chrono::steady_clock;
    auto ms = [](Clock::time_point a, Clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    MulticastRun run;
    auto t0 = Clock::now();
    run.coreset = build_multicast_coreset(inst);
    auto t1 = Clock::now();
    double eps_int = internal_epsilon(inst.epsilon, inst.alpha);
    run.reduced = solve_multicast(run.coreset, inst.hops, inst.alpha, ladder, eps_int, &run.stats);
    if (ladder)
        run.candidate_ranges =
            static_cast<long long>(detail::range_ladder(run.coreset.reps, eps_int).size());
    else
        run.candidate_ranges =
            static_cast<long long>(detail::positive_distances(run.coreset.reps).size());
    auto t2 = Clock::now();
    run.lifted = lift_ranges(run.reduced, run.coreset, inst);
    auto t3 = Clock::now();
    run.coreset_ms = ms(t0, t1);
    run.solve_ms = ms(t1, t2);
    run.lift_ms = ms(t2, t3);
    return run;
}

} // namespace rangeopt
