#include "rangeopt/disk_cover.hpp"
#include "rangeopt/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace rangeopt {

namespace {

constexpr double kCoverSlack = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double powa(double x, double alpha) {
    return alpha == 2.0 ? x * x : std::pow(x, alpha);
}

void check_deadline(SolveStats* stats) {
    if (stats && stats->deadline && std::chrono::steady_clock::now() > *stats->deadline)
        throw BudgetError("solver exceeded its time budget");
}

void bump(SolveStats* stats) {
    if (!stats) return;
    if ((++stats->candidates & 0xfff) == 0) check_deadline(stats);
}

std::vector<std::vector<double>> pairwise_dist(const PointSet& ps) {
    size_t n = ps.size();
    std::vector<std::vector<double>> D(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            D[i][j] = D[j][i] = dist(ps[i], ps[j]);
    return D;
}

struct RadiusStep {
    double r;      // candidate radius (a distance from the center, 0 included)
    uint64_t mask; // points within r of the center
};

// Per center: candidate radii ascending with cumulative coverage masks.
std::vector<std::vector<RadiusStep>> radius_steps(const std::vector<std::vector<double>>& D) {
    size_t n = D.size();
    std::vector<std::vector<RadiusStep>> steps(n);
    std::vector<int> order(n);
    for (size_t i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return D[i][static_cast<size_t>(a)] < D[i][static_cast<size_t>(b)]; });
        uint64_t mask = 0;
        for (int j : order) {
            double r = D[i][static_cast<size_t>(j)];
            mask |= uint64_t{1} << j;
            if (!steps[i].empty() && steps[i].back().r == r)
                steps[i].back().mask = mask;
            else
                steps[i].push_back({r, mask});
        }
    }
    return steps;
}

uint64_t full_mask(size_t n) {
    return n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

void require_solvable(const PointSet& reps, int k) {
    if (reps.empty()) throw InputError("solver: empty point set");
    if (k < 1) throw InputError("solver: k must be >= 1");
    if (reps.size() > 64) throw UnsupportedError("enumerative solvers handle at most 64 points");
}

// First index whose mask has bit j; steps are cumulative so this is the
// smallest radius covering j from that center.
double max_dist_over(const std::vector<double>& row, uint64_t mask) {
    double m = 0.0;
    while (mask) {
        int j = std::countr_zero(mask);
        mask &= mask - 1;
        m = std::max(m, row[static_cast<size_t>(j)]);
    }
    return m;
}

} // namespace

double grid_constant(double epsilon, int k, double alpha) {
    double t = epsilon / k;
    return t / (std::pow(1.0 + t, 1.0 / alpha) - 1.0);
}

void CoverConfig::validate() const {
    if (k < 1) throw InputError("k must be >= 1");
    if (alpha < 1.0) throw InputError("alpha must be >= 1");
    if (!(epsilon > 0.0) || epsilon > 1.0) throw InputError("epsilon must be in (0, 1]");
    if (outliers < 0) throw InputError("outliers must be >= 0");
    if (outliers > 0 && !discrete)
        throw UnsupportedError("the outlier variant requires discrete centers");
}

double estimate_opt(const PointSet& ps, int k, double alpha) {
    if (ps.empty()) throw InputError("estimate_opt: empty point set");
    if (k < 1) throw InputError("estimate_opt: k must be >= 1");
    if (alpha < 1.0) throw InputError("estimate_opt: alpha must be >= 1");
    size_t n = ps.size();
    if (static_cast<size_t>(k) >= n) return 0.0;
    // Farthest-point traversal from index 0; r_g is within 2x of the optimal
    // k-center radius r*, and (r*)^alpha lower-bounds the k-ball cover cost.
    std::vector<double> d(n);
    for (size_t i = 0; i < n; ++i) d[i] = dist(ps[i], ps[0]);
    for (int c = 1; c < k; ++c) {
        size_t far = 0;
        for (size_t i = 1; i < n; ++i)
            if (d[i] > d[far]) far = i;
        for (size_t i = 0; i < n; ++i) d[i] = std::min(d[i], dist(ps[i], ps[far]));
    }
    double rg = *std::max_element(d.begin(), d.end());
    return powa(rg / 2.0, alpha);
}

Coreset build_coreset(const PointSet& ps, const CoverConfig& cfg) {
    cfg.validate();
    if (ps.empty()) throw InputError("build_coreset: empty point set");
    Coreset cs;
    cs.k_effective = cfg.k + cfg.outliers;
    cs.opt_estimate = estimate_opt(ps, cs.k_effective, cfg.alpha);
    int d = ps.dim();
    Point origin;
    origin.coords.assign(static_cast<size_t>(d), kInf);
    for (const Point& p : ps)
        for (int a = 0; a < d; ++a) origin[a] = std::min(origin[a], p[a]);
    if (cs.opt_estimate <= 0.0) {
        // Coverable at zero cost (at most k_effective distinct positions):
        // no grid to build, the input is its own reduction.
        cs.degenerate = true;
        cs.reps = ps;
        cs.assignment.resize(ps.size());
        std::iota(cs.assignment.begin(), cs.assignment.end(), 0);
        cs.grid.cell_width = 0.0;
        cs.grid.origin = origin;
        return cs;
    }
    double root = std::pow(cs.opt_estimate, 1.0 / cfg.alpha);
    double ca = grid_constant(cfg.epsilon, cs.k_effective, cfg.alpha);
    // Width budget: snapping moves every point by up to sqrt(d)*delta, and the
    // lift adds the same again (free centers) or twice more (discrete centers
    // move too), so a ball in an optimal cover grows by at most 2*sqrt(d)*delta
    // resp. 4*sqrt(d)*delta end to end. The grid constant is calibrated so that
    // a total growth of delta' = epsilon*OPT^(1/alpha)/(k*c) keeps the cost sum
    // within (1+epsilon)*OPT; dividing by 2 resp. 4 spends exactly that budget.
    double divisor = cfg.discrete ? 4.0 : 2.0;
    double delta = cfg.epsilon * root / (cs.k_effective * ca * std::sqrt(double(d)) * divisor);
    // Round down onto a power-of-two family anchored independently of epsilon:
    // halving epsilon then refines the grid in place (cells nest), which keeps
    // representative counts monotone in epsilon.
    double anchor = root / (cs.k_effective * std::sqrt(double(d)));
    delta = anchor * std::exp2(std::floor(std::log2(delta / anchor)));
    cs.grid.cell_width = delta;
    cs.grid.origin = origin;
    SnapResult sr = snap_corner(ps, cs.grid);
    cs.reps = std::move(sr.reps);
    cs.assignment = std::move(sr.assignment);
    return cs;
}

DiskCover solve_discrete(const PointSet& reps, int k, double alpha, SolveStats* stats) {
    require_solvable(reps, k);
    size_t n = reps.size();
    int kk = std::min<size_t>(static_cast<size_t>(k), n);
    auto D = pairwise_dist(reps);
    auto steps = radius_steps(D);
    uint64_t full = full_mask(n);

    double best = kInf;
    std::vector<int> best_centers;
    std::vector<double> best_radii;
    std::vector<int> centers(static_cast<size_t>(kk));
    std::vector<double> radii(static_cast<size_t>(kk));

    // For each k-subset of centers (lexicographic), assign radii ascending per
    // center; the last center's radius is forced to the farthest uncovered
    // point. First minimum found wins, which makes ties resolve to the
    // lexicographically smallest (centers, radii) assignment.
    auto rec = [&](auto&& self, int slot, uint64_t uncovered, double cost) -> void {
        int ci = centers[static_cast<size_t>(slot)];
        if (slot == kk - 1) {
            double r = max_dist_over(D[static_cast<size_t>(ci)], uncovered);
            double total = cost + powa(r, alpha);
            bump(stats);
            if (total < best) {
                best = total;
                radii[static_cast<size_t>(slot)] = r;
                best_centers = centers;
                best_radii = radii;
            }
            return;
        }
        for (const RadiusStep& s : steps[static_cast<size_t>(ci)]) {
            double c2 = cost + powa(s.r, alpha);
            if (c2 >= best) break;
            radii[static_cast<size_t>(slot)] = s.r;
            self(self, slot + 1, uncovered & ~s.mask, c2);
        }
    };

    auto subsets = [&](auto&& self, int slot, int from) -> void {
        if (slot == kk) {
            rec(rec, 0, full, 0.0);
            return;
        }
        for (int i = from; i <= static_cast<int>(n) - (kk - slot); ++i) {
            centers[static_cast<size_t>(slot)] = i;
            self(self, slot + 1, i + 1);
        }
    };
    subsets(subsets, 0, 0);

    DiskCover out;
    out.cost = best;
    for (int i = 0; i < kk; ++i) {
        out.balls.push_back({reps[static_cast<size_t>(best_centers[static_cast<size_t>(i)])],
                             best_radii[static_cast<size_t>(i)]});
        out.center_indices.push_back(best_centers[static_cast<size_t>(i)]);
    }
    return out;
}

DiskCover solve_nondiscrete(const PointSet& reps, int k, double alpha, SolveStats* stats) {
    require_solvable(reps, k);
    if (reps.dim() != 2)
        throw UnsupportedError("free-center solving is implemented for dimension 2");
    size_t n = reps.size();
    int kk = std::min<size_t>(static_cast<size_t>(k), n);

    struct Cand {
        Ball ball;
        double cost;
        uint64_t mask;
    };
    std::vector<Cand> cands;
    for (size_t i = 0; i < n; ++i)
        cands.push_back({{reps[i], 0.0}, 0.0, 0});
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            cands.push_back({diametral_ball(reps[i], reps[j]), 0.0, 0});
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t l = j + 1; l < n; ++l)
                if (auto b = circumball(reps[i], reps[j], reps[l]))
                    cands.push_back({*b, 0.0, 0});

    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.ball.radius != b.ball.radius) return a.ball.radius < b.ball.radius;
        if (a.ball.center[0] != b.ball.center[0]) return a.ball.center[0] < b.ball.center[0];
        return a.ball.center[1] < b.ball.center[1];
    });
    // Collinear and cocircular inputs produce the same ball many times over.
    auto near = [](const Cand& a, const Cand& b) {
        return std::abs(a.ball.radius - b.ball.radius) <= 1e-9 &&
               std::abs(a.ball.center[0] - b.ball.center[0]) <= 1e-9 &&
               std::abs(a.ball.center[1] - b.ball.center[1]) <= 1e-9;
    };
    cands.erase(std::unique(cands.begin(), cands.end(), near), cands.end());

    for (Cand& c : cands) {
        c.cost = powa(c.ball.radius, alpha);
        for (size_t j = 0; j < n; ++j)
            if (dist(c.ball.center, reps[j]) <= c.ball.radius + kCoverSlack)
                c.mask |= uint64_t{1} << j;
    }

    uint64_t full = full_mask(n);
    size_t m = cands.size();
    double best = kInf;
    std::vector<int> chosen(static_cast<size_t>(kk));
    std::vector<int> best_chosen;

    // Subsets of at most k candidate balls in ascending-cost order with
    // prefix-cost pruning; a prefix that already covers everything is itself
    // a solution (padding with radius-0 balls cannot improve it).
    auto rec = [&](auto&& self, int slot, size_t from, uint64_t uncovered, double cost) -> void {
        if (uncovered == 0) {
            bump(stats);
            if (cost < best) {
                best = cost;
                best_chosen.assign(chosen.begin(), chosen.begin() + slot);
            }
            return;
        }
        if (slot == kk) {
            bump(stats);
            return;
        }
        if (slot == kk - 1) {
            for (size_t i = from; i < m; ++i) {
                if (cost + cands[i].cost >= best) break;
                if ((cands[i].mask & uncovered) == uncovered) {
                    bump(stats);
                    best = cost + cands[i].cost;
                    best_chosen.assign(chosen.begin(), chosen.begin() + slot);
                    best_chosen.push_back(static_cast<int>(i));
                    break;
                }
            }
            return;
        }
        for (size_t i = from; i < m; ++i) {
            double c2 = cost + cands[i].cost;
            if (c2 >= best) break;
            if ((cands[i].mask & uncovered) == 0) continue; // useless here
            chosen[static_cast<size_t>(slot)] = static_cast<int>(i);
            self(self, slot + 1, i + 1, uncovered & ~cands[i].mask, c2);
        }
    };
    rec(rec, 0, 0, full, 0.0);

    DiskCover out;
    out.cost = best;
    for (int idx : best_chosen) {
        out.balls.push_back(cands[static_cast<size_t>(idx)].ball);
        out.center_indices.push_back(-1);
    }
    return out;
}

DiskCover solve_with_outliers(const PointSet& reps, int k, int c, double alpha,
                              const std::vector<long long>* weights, SolveStats* stats) {
    require_solvable(reps, k);
    if (c < 0) throw InputError("solver: outlier count must be >= 0");
    size_t n = reps.size();
    std::vector<long long> w;
    if (weights) {
        if (weights->size() != n) throw InputError("solver: weight vector size mismatch");
        w = *weights;
    } else {
        w.assign(n, 1);
    }
    long long total_w = std::accumulate(w.begin(), w.end(), 0LL);
    auto weight_of = [&](uint64_t mask) {
        long long s = 0;
        while (mask) {
            int j = std::countr_zero(mask);
            mask &= mask - 1;
            s += w[static_cast<size_t>(j)];
        }
        return s;
    };

    uint64_t full = full_mask(n);
    DiskCover out;
    if (total_w <= c) {
        // Everything may be left out; the empty cover is optimal.
        for (size_t i = 0; i < n; ++i) out.uncovered.push_back(static_cast<int>(i));
        out.cost = 0.0;
        return out;
    }

    int kk = std::min<size_t>(static_cast<size_t>(k), n);
    auto D = pairwise_dist(reps);
    auto steps = radius_steps(D);

    double best = kInf;
    uint64_t best_unc = 0;
    std::vector<int> centers(static_cast<size_t>(kk));
    std::vector<double> radii(static_cast<size_t>(kk));
    std::vector<int> best_centers;
    std::vector<double> best_radii;

    auto rec = [&](auto&& self, int slot, uint64_t covered, double cost) -> void {
        if (slot == kk) {
            bump(stats);
            uint64_t unc = full & ~covered;
            if (weight_of(unc) <= c && cost < best) {
                best = cost;
                best_unc = unc;
                best_centers = centers;
                best_radii = radii;
            }
            return;
        }
        int ci = centers[static_cast<size_t>(slot)];
        for (const RadiusStep& s : steps[static_cast<size_t>(ci)]) {
            double c2 = cost + powa(s.r, alpha);
            if (c2 >= best) break;
            radii[static_cast<size_t>(slot)] = s.r;
            self(self, slot + 1, covered | s.mask, c2);
        }
    };
    auto subsets = [&](auto&& self, int slot, int from) -> void {
        if (slot == kk) {
            rec(rec, 0, 0, 0.0);
            return;
        }
        for (int i = from; i <= static_cast<int>(n) - (kk - slot); ++i) {
            centers[static_cast<size_t>(slot)] = i;
            self(self, slot + 1, i + 1);
        }
    };
    subsets(subsets, 0, 0);

    out.cost = best;
    for (int i = 0; i < kk; ++i) {
        out.balls.push_back({reps[static_cast<size_t>(best_centers[static_cast<size_t>(i)])],
                             best_radii[static_cast<size_t>(i)]});
        out.center_indices.push_back(best_centers[static_cast<size_t>(i)]);
    }
    for (uint64_t u = best_unc; u;) {
        int j = std::countr_zero(u);
        u &= u - 1;
        out.uncovered.push_back(j);
    }
    return out;
}

DiskCover lift_cover(const DiskCover& cover, const Coreset& cs, const PointSet& original,
                     const CoverConfig& cfg) {
    double growth = (cfg.discrete ? 2.0 : 1.0) * std::sqrt(double(original.dim())) * cs.delta();
    // First original point in each representative's cell, for recentering.
    std::vector<int> first_orig(cs.reps.size(), -1);
    for (size_t o = 0; o < cs.assignment.size(); ++o) {
        int r = cs.assignment[o];
        if (first_orig[static_cast<size_t>(r)] < 0) first_orig[static_cast<size_t>(r)] = static_cast<int>(o);
    }
    DiskCover out;
    out.cost = 0.0;
    for (size_t i = 0; i < cover.balls.size(); ++i) {
        Ball b = cover.balls[i];
        int ci = i < cover.center_indices.size() ? cover.center_indices[i] : -1;
        int oi = -1;
        if (cfg.discrete) {
            if (ci < 0) throw InputError("lift_cover: discrete cover lacks center indices");
            oi = first_orig[static_cast<size_t>(ci)];
            b.center = original[static_cast<size_t>(oi)];
        }
        b.radius += growth;
        out.cost += powa(b.radius, cfg.alpha);
        out.balls.push_back(std::move(b));
        out.center_indices.push_back(oi);
    }
    for (int u : cover.uncovered)
        for (size_t o = 0; o < cs.assignment.size(); ++o)
            if (cs.assignment[o] == u) out.uncovered.push_back(static_cast<int>(o));
    std::sort(out.uncovered.begin(), out.uncovered.end());
    return out;
}

CoverRun cover_pipeline(const PointSet& ps, const CoverConfig& cfg) {
    using Clock = std::chrono::steady_clock;
    auto ms = [](Clock::time_point a, Clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    CoverRun run;
    auto t0 = Clock::now();
    run.coreset = build_coreset(ps, cfg);
    auto t1 = Clock::now();
    if (cfg.outliers > 0) {
        std::vector<long long> mult(run.coreset.reps.size(), 0);
        for (int r : run.coreset.assignment) ++mult[static_cast<size_t>(r)];
        run.reduced = solve_with_outliers(run.coreset.reps, cfg.k, cfg.outliers, cfg.alpha,
                                          &mult, &run.stats);
    } else if (cfg.discrete) {
        run.reduced = solve_discrete(run.coreset.reps, cfg.k, cfg.alpha, &run.stats);
    } else {
        run.reduced = solve_nondiscrete(run.coreset.reps, cfg.k, cfg.alpha, &run.stats);
    }
    auto t2 = Clock::now();
    run.lifted = lift_cover(run.reduced, run.coreset, ps, cfg);
    auto t3 = Clock::now();
    run.coreset_ms = ms(t0, t1);
    run.solve_ms = ms(t1, t2);
    run.lift_ms = ms(t2, t3);
    return run;
}

bool cover_is_feasible(const DiskCover& cover, const PointSet& ps, double slack) {
    for (size_t i = 0; i < ps.size(); ++i) {
        if (std::binary_search(cover.uncovered.begin(), cover.uncovered.end(), static_cast<int>(i)))
            continue;
        bool ok = false;
        for (const Ball& b : cover.balls)
            if (dist(ps[i], b.center) <= b.radius + slack) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

} // namespace rangeopt
