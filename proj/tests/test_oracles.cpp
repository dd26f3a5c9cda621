#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rangeopt/errors.hpp"
#include "rangeopt/oracles.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <cmath>

using namespace rangeopt;

namespace {

// Tiny independent reference for k = 1 discrete covers: best single center.
double one_ball_cost(const PointSet& ps, double alpha) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& c : ps) {
        double r = 0.0;
        for (const Point& p : ps) r = std::max(r, dist(c, p));
        best = std::min(best, std::pow(r, alpha));
    }
    return best;
}

} // namespace

TEST_CASE("cover oracle equals a direct one-ball scan") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PointSet ps = testutil::random_points(9, 2, 600 + seed);
        for (double alpha : {2.0, 3.0}) {
            DiskCover c = exact_disk_cover(ps, 1, 0, alpha, true);
            CHECK(c.cost == doctest::Approx(one_ball_cost(ps, alpha)).epsilon(1e-12));
            CHECK(cover_is_feasible(c, ps));
        }
    }
}

TEST_CASE("cover oracle respects variant ordering") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        PointSet ps = testutil::random_points(10, 2, 700 + seed);
        double d1 = exact_disk_cover(ps, 1, 0, 2.0, true).cost;
        double d2 = exact_disk_cover(ps, 2, 0, 2.0, true).cost;
        double n1 = exact_disk_cover(ps, 1, 0, 2.0, false).cost;
        double o1 = exact_disk_cover(ps, 1, 1, 2.0, true).cost;
        CHECK(d2 <= d1 + 1e-12);  // more balls never hurt
        CHECK(n1 <= d1 + 1e-12);  // free centers never hurt
        CHECK(o1 <= d1 + 1e-12);  // skipping a point never hurts
    }
}

TEST_CASE("cover oracle budget refusals") {
    PointSet big = testutil::random_points(13, 2, 1);
    CHECK_THROWS_WITH_AS(exact_disk_cover(big, 1, 0, 2.0, true),
                         doctest::Contains("13 points"), BudgetError);
    OracleBudget wider;
    wider.max_cover_points = 13;
    CHECK_NOTHROW(exact_disk_cover(big, 1, 0, 2.0, true, wider));
    CHECK_THROWS_AS(exact_disk_cover(big, 1, 1, 2.0, false, wider), UnsupportedError);
}

TEST_CASE("multicast oracle on hand-checked lines") {
    MulticastInstance inst;
    PointSet ps(2);
    ps.add(Point{0.0, 0.0});
    ps.add(Point{1.0, 0.0});
    ps.add(Point{2.0, 0.0});
    inst.stations = std::move(ps);
    inst.source = 0;
    inst.receivers = {2};
    inst.hops = 2;
    CHECK(exact_multicast(inst).cost == doctest::Approx(2.0));
    inst.hops = 1;
    CHECK(exact_multicast(inst).cost == doctest::Approx(4.0));
    inst.receivers = {0};
    CHECK(exact_multicast(inst).cost == 0.0);
}

TEST_CASE("multicast oracle handles coincident stations") {
    MulticastInstance inst;
    PointSet ps(2);
    ps.add(Point{0.0, 0.0});
    ps.add(Point{0.0, 0.0});
    ps.add(Point{1.0, 0.0});
    inst.stations = std::move(ps);
    inst.source = 0;
    inst.receivers = {1};
    inst.hops = 1;
    CHECK(exact_multicast(inst).cost == 0.0); // receiver sits on the source
    inst.receivers = {1, 2};
    CHECK(exact_multicast(inst).cost == doctest::Approx(1.0));
}

TEST_CASE("multicast oracle budget refusals") {
    MulticastInstance inst;
    inst.stations = testutil::random_points(13, 2, 2);
    inst.source = 0;
    inst.receivers = {1};
    CHECK_THROWS_AS(exact_multicast(inst), BudgetError);

    MulticastInstance wide;
    wide.stations = testutil::random_points(8, 2, 3);
    wide.source = 0;
    wide.receivers = {1, 2, 3};
    wide.hops = 2; // hops * receivers = 6 > 4
    CHECK_THROWS_AS(exact_multicast(wide), BudgetError);
    wide.hops = 1;
    CHECK_NOTHROW(exact_multicast(wide));
}

TEST_CASE("tour oracle on squares and triangles") {
    PointSet square(2);
    square.add(Point{0.0, 0.0});
    square.add(Point{1.0, 0.0});
    square.add(Point{1.0, 1.0});
    square.add(Point{0.0, 1.0});
    Tour t = exact_tsp(square, 2.0);
    CHECK(t.cost == doctest::Approx(4.0)); // perimeter beats both diagonals
    REQUIRE(t.order.size() == 4);
    CHECK(t.order[0] == 0);
    CHECK(t.order[1] < t.order[3]); // canonical direction

    PointSet tri = gap_instance(3);
    CHECK(exact_tsp(tri, 2.0).cost == doctest::Approx(6.0));
}

TEST_CASE("tour oracle is a true lower bound for heuristics") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PointSet ps = testutil::random_points(7, 2, 800 + seed);
        Tour exact = exact_tsp(ps, 3.0);
        Tour approx = approx_tour(ps, 3.0);
        CHECK(exact.cost <= approx.cost + 1e-12);
        CHECK(exact.cost <= tour_cost({0, 1, 2, 3, 4, 5, 6}, ps, 3.0) + 1e-12);
    }
}

TEST_CASE("tour oracle budget refusals") {
    PointSet big = testutil::random_points(10, 2, 4);
    CHECK_THROWS_AS(exact_tsp(big, 2.0), BudgetError);

    OracleBudget rushed;
    rushed.time_limit_sec = 0.0;
    PointSet nine = testutil::random_points(9, 2, 5);
    CHECK_THROWS_AS(exact_tsp(nine, 2.0, rushed), BudgetError);
}

TEST_CASE("oracles are deterministic") {
    PointSet ps = testutil::random_points(8, 2, 900);
    Tour a = exact_tsp(ps, 2.0);
    Tour b = exact_tsp(ps, 2.0);
    CHECK(a.order == b.order);
    CHECK(a.cost == b.cost);

    DiskCover ca = exact_disk_cover(ps, 2, 0, 2.0, false);
    DiskCover cb = exact_disk_cover(ps, 2, 0, 2.0, false);
    REQUIRE(ca.balls.size() == cb.balls.size());
    for (size_t i = 0; i < ca.balls.size(); ++i) {
        CHECK(ca.balls[i].center == cb.balls[i].center);
        CHECK(ca.balls[i].radius == cb.balls[i].radius);
    }

    MulticastInstance inst;
    inst.stations = ps;
    inst.source = 0;
    inst.receivers = {3, 5};
    inst.hops = 2;
    RangeAssignment ma = exact_multicast(inst);
    RangeAssignment mb = exact_multicast(inst);
    CHECK(ma.ranges == mb.ranges);
}
