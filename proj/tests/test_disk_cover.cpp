#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rangeopt/disk_cover.hpp"
#include "rangeopt/errors.hpp"
#include "rangeopt/oracles.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace rangeopt;

namespace {

PointSet line3() {
    PointSet ps(2);
    ps.add(Point{0.0, 0.0});
    ps.add(Point{1.0, 0.0});
    ps.add(Point{5.0, 0.0});
    return ps;
}

} // namespace

TEST_CASE("config validation") {
    CoverConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CoverConfig bad = cfg;
    bad.k = 0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = cfg;
    bad.alpha = 0.9;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = cfg;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = cfg;
    bad.epsilon = 1.5;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = cfg;
    bad.outliers = -1;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = cfg;
    bad.outliers = 1;
    bad.discrete = false;
    CHECK_THROWS_AS(bad.validate(), UnsupportedError);
}

TEST_CASE("grid constant") {
    // epsilon = k = 1, alpha = 2: 1/(sqrt 2 - 1)
    CHECK(grid_constant(1.0, 1, 2.0) == doctest::Approx(1.0 / (std::sqrt(2.0) - 1.0)));
    // t/( (1+t)^(1/a) - 1 ) grows with t = eps/k, so on (0,1] it stays within
    // [alpha, 1/(2^(1/a)-1)].
    for (double alpha : {2.0, 3.0, 4.0}) {
        double cap = 1.0 / (std::pow(2.0, 1.0 / alpha) - 1.0);
        double prev = 0.0;
        for (int k : {1, 2, 3, 5}) {
            for (double eps : {0.1, 0.25, 0.5, 1.0}) {
                double c = grid_constant(eps, k, alpha);
                CHECK(c >= alpha - 1e-9);
                CHECK(c <= cap + 1e-9);
            }
        }
        // monotone in epsilon for fixed k
        prev = 0.0;
        for (double eps : {0.1, 0.2, 0.4, 0.8}) {
            double c = grid_constant(eps, 2, alpha);
            CHECK(c > prev);
            prev = c;
        }
    }
}

TEST_CASE("optimum estimate") {
    PointSet two(2);
    two.add(Point{0.0, 0.0});
    two.add(Point{10.0, 0.0});
    CHECK(estimate_opt(two, 1, 2.0) == doctest::Approx(25.0)); // (10/2)^2
    CHECK(estimate_opt(two, 2, 2.0) == 0.0);
    CHECK(estimate_opt(two, 5, 2.0) == 0.0);

    // sandwich against the exact optimum: (r_g/2)^a <= OPT <= k (r_g)^a = k 4 E
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        PointSet ps = testutil::random_points(10, 2, 1000 + seed);
        for (int k : {1, 2, 3}) {
            double est = estimate_opt(ps, k, 2.0);
            double opt = exact_disk_cover(ps, k, 0, 2.0, true).cost;
            CHECK(est <= opt + 1e-9);
            CHECK(opt <= k * 4.0 * est + 1e-9);
        }
    }
}

TEST_CASE("discrete solver on a line") {
    PointSet ps = line3();
    DiskCover one = solve_discrete(ps, 1, 2.0);
    CHECK(one.cost == doctest::Approx(16.0)); // center (1,0), radius 4
    REQUIRE(one.balls.size() == 1);
    CHECK(one.center_indices[0] == 1);

    DiskCover two = solve_discrete(ps, 2, 2.0);
    CHECK(two.cost == doctest::Approx(1.0)); // radius 1 pair + radius 0
    CHECK(cover_is_feasible(two, ps));
}

TEST_CASE("non-discrete solver on a line") {
    PointSet ps = line3();
    DiskCover one = solve_nondiscrete(ps, 1, 2.0);
    CHECK(one.cost == doctest::Approx(6.25)); // diametral ball, radius 2.5
    REQUIRE(one.balls.size() == 1);
    CHECK(one.center_indices[0] == -1);
    CHECK(one.balls[0].center[0] == doctest::Approx(2.5));

    DiskCover two = solve_nondiscrete(ps, 2, 2.0);
    CHECK(two.cost == doctest::Approx(0.25)); // diametral on {0,1} + point ball
    CHECK(cover_is_feasible(two, ps));
}

TEST_CASE("free centers never cost more than discrete ones") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        PointSet ps = testutil::random_points(9, 2, 2000 + seed);
        for (int k : {1, 2}) {
            DiskCover d = solve_discrete(ps, k, 2.0);
            DiskCover n = solve_nondiscrete(ps, k, 2.0);
            CHECK(cover_is_feasible(d, ps));
            CHECK(cover_is_feasible(n, ps));
            CHECK(n.cost <= d.cost + 1e-9);
        }
    }
}

TEST_CASE("outlier solver") {
    PointSet ps = line3();
    DiskCover c1 = solve_with_outliers(ps, 1, 1, 2.0);
    CHECK(c1.cost == doctest::Approx(1.0));
    CHECK(c1.uncovered == std::vector<int>{2});

    SUBCASE("weights model cell multiplicities") {
        // dropping a weight-2 point would blow the budget, so it must be covered
        std::vector<long long> w{2, 1, 1};
        DiskCover cw = solve_with_outliers(ps, 1, 1, 2.0, &w);
        CHECK(cw.cost == doctest::Approx(1.0));
        // with budget 2 the far point and the weight-1 neighbor can both go
        DiskCover cw2 = solve_with_outliers(ps, 1, 2, 2.0, &w);
        CHECK(cw2.cost == doctest::Approx(0.0));
    }

    SUBCASE("budget >= total weight covers nothing") {
        DiskCover all = solve_with_outliers(ps, 1, 3, 2.0);
        CHECK(all.cost == 0.0);
        CHECK(all.uncovered.size() == 3);
    }
}

TEST_CASE("coreset structure") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PointSet ps = testutil::random_points(40, 2, 3000 + seed);
        for (int k : {1, 2, 3}) {
            for (double eps : {0.5, 1.0}) {
                CoverConfig cfg;
                cfg.k = k;
                cfg.epsilon = eps;
                Coreset cs = build_coreset(ps, cfg);
                REQUIRE_FALSE(cs.degenerate);
                REQUIRE(cs.assignment.size() == ps.size());
                double maxerr = std::sqrt(2.0) * cs.delta();
                for (size_t i = 0; i < ps.size(); ++i) {
                    int g = cs.assignment[i];
                    REQUIRE(g >= 0);
                    REQUIRE(static_cast<size_t>(g) < cs.reps.size());
                    CHECK(dist(ps[i], cs.reps[static_cast<size_t>(g)]) <= maxerr + 1e-12);
                }
                // size envelope, d = 2 (the frozen acceptance constant is 64;
                // anything near that here means the envelope logic regressed)
                double bound = 64.0 * std::pow(double(cs.k_effective), 5.0) / (eps * eps);
                CHECK(static_cast<double>(cs.reps.size()) <= bound);
            }
        }
    }
}

TEST_CASE("doubling epsilon never enlarges the coreset") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PointSet ps = testutil::random_points(40, 2, 4000 + seed);
        for (int k : {1, 2, 3}) {
            CoverConfig cfg;
            cfg.k = k;
            size_t prev = SIZE_MAX;
            for (double eps : {0.25, 0.5, 1.0}) {
                cfg.epsilon = eps;
                Coreset cs = build_coreset(ps, cfg);
                CHECK(cs.reps.size() <= prev);
                prev = cs.reps.size();
            }
        }
    }
}

TEST_CASE("grid widths for doubled epsilon are powers of two apart") {
    PointSet ps = testutil::random_points(30, 2, 77);
    CoverConfig a, b;
    a.k = b.k = 2;
    a.epsilon = 0.5;
    b.epsilon = 1.0;
    double wa = build_coreset(ps, a).delta();
    double wb = build_coreset(ps, b).delta();
    double ratio = wb / wa;
    CHECK(ratio == doctest::Approx(std::exp2(std::round(std::log2(ratio)))));
    CHECK(ratio >= 1.0);
}

TEST_CASE("degenerate instances collapse to zero cost") {
    PointSet ps(2);
    ps.add(Point{3.0, 4.0});
    ps.add(Point{3.0, 4.0});
    CoverConfig cfg;
    Coreset cs = build_coreset(ps, cfg);
    CHECK(cs.degenerate);
    CHECK(cs.opt_estimate == 0.0);
    CHECK(cs.delta() == 0.0);
    CoverRun run = cover_pipeline(ps, cfg);
    CHECK(run.lifted.cost == 0.0);
    CHECK(cover_is_feasible(run.lifted, ps));

    PointSet spread = testutil::random_points(3, 2, 5);
    CoverConfig k3;
    k3.k = 3;
    CoverRun exactly = cover_pipeline(spread, k3);
    CHECK(exactly.lifted.cost == 0.0); // one zero-radius ball per point
    CHECK(cover_is_feasible(exactly.lifted, spread));
}

TEST_CASE("pipeline meets the approximation bound on small instances") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        PointSet ps = testutil::random_points(12, 2, 5000 + seed);
        for (int k : {1, 2}) {
            for (bool discrete : {true, false}) {
                CoverConfig cfg;
                cfg.k = k;
                cfg.epsilon = 1.0;
                cfg.discrete = discrete;
                CoverRun run = cover_pipeline(ps, cfg);
                CHECK(cover_is_feasible(run.lifted, ps));
                double opt = exact_disk_cover(ps, k, 0, 2.0, discrete).cost;
                CHECK(run.lifted.cost <= 2.0 * opt + 1e-9);
                if (discrete) {
                    for (size_t bi = 0; bi < run.lifted.balls.size(); ++bi) {
                        int ci = run.lifted.center_indices[bi];
                        REQUIRE(ci >= 0);
                        CHECK(run.lifted.balls[bi].center == ps[static_cast<size_t>(ci)]);
                    }
                }
            }
        }
    }
}

TEST_CASE("pipeline on a mid-size discrete instance stays within budget") {
    PointSet ps = testutil::random_points(50, 2, 424242);
    CoverConfig cfg;
    cfg.k = 2;
    cfg.epsilon = 1.0;
    CoverRun run = cover_pipeline(ps, cfg);
    CHECK(cover_is_feasible(run.lifted, ps));
    OracleBudget budget;
    budget.max_cover_points = 50;
    double opt = exact_disk_cover(ps, 2, 0, 2.0, true, budget).cost;
    CHECK(run.lifted.cost <= 2.0 * opt + 1e-9);
    CHECK(run.lifted.cost >= opt - 1e-9); // a heuristic can't beat the oracle
}

TEST_CASE("outlier pipeline leaves at most c points out") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        PointSet ps = testutil::random_points(12, 2, 6000 + seed);
        for (int c : {1, 2}) {
            CoverConfig cfg;
            cfg.k = 2;
            cfg.outliers = c;
            cfg.epsilon = 1.0;
            CoverRun run = cover_pipeline(ps, cfg);
            CHECK(run.lifted.uncovered.size() <= static_cast<size_t>(c));
            std::vector<char> skip(ps.size(), 0);
            for (int u : run.lifted.uncovered) skip[static_cast<size_t>(u)] = 1;
            for (size_t i = 0; i < ps.size(); ++i) {
                if (skip[i]) continue;
                bool inside = false;
                for (const Ball& b : run.lifted.balls)
                    inside = inside || dist(b.center, ps[i]) <= b.radius + 1e-9;
                CHECK(inside);
            }
            double opt = exact_disk_cover(ps, 2, c, 2.0, true).cost;
            CHECK(run.lifted.cost <= 2.0 * opt + 1e-9);
        }
    }
}

TEST_CASE("enumeration honors a wall-clock deadline") {
    PointSet ps = testutil::random_points(40, 2, 31337);
    SolveStats stats;
    stats.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    CHECK_THROWS_AS(solve_discrete(ps, 3, 2.0, &stats), BudgetError);
}

TEST_CASE("solvers reject unusable inputs") {
    PointSet empty(2);
    CHECK_THROWS_AS(solve_discrete(empty, 1, 2.0), InputError);
    PointSet big = testutil::random_points(65, 2, 1);
    CHECK_THROWS_AS(solve_discrete(big, 1, 2.0), UnsupportedError);
    PointSet d3 = testutil::random_points(5, 3, 2);
    CHECK_THROWS_AS(solve_nondiscrete(d3, 1, 2.0), UnsupportedError);
    CHECK_NOTHROW(solve_discrete(d3, 1, 2.0)); // discrete works in any dimension
}

TEST_CASE("solvers are deterministic") {
    PointSet ps = testutil::random_points(11, 2, 8888);
    for (int k : {1, 2}) {
        DiskCover a = solve_discrete(ps, k, 2.0);
        DiskCover b = solve_discrete(ps, k, 2.0);
        CHECK(a.cost == b.cost);
        REQUIRE(a.balls.size() == b.balls.size());
        for (size_t i = 0; i < a.balls.size(); ++i) {
            CHECK(a.balls[i].center == b.balls[i].center);
            CHECK(a.balls[i].radius == b.balls[i].radius);
        }
        CHECK(a.center_indices == b.center_indices);
        DiskCover na = solve_nondiscrete(ps, k, 2.0);
        DiskCover nb = solve_nondiscrete(ps, k, 2.0);
        CHECK(na.cost == nb.cost);
        for (size_t i = 0; i < na.balls.size(); ++i)
            CHECK(na.balls[i].center == nb.balls[i].center);
    }
}
