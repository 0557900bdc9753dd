#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "prrtstar/geometry.hpp"

using namespace prrtstar;

namespace {

Environment empty_world_2d() {
    return Environment(Aabb({0.0, 0.0}, {10.0, 10.0}), {}, {1.0, 1.0}, {9.0, 9.0}, 0.5);
}

// Independent dense-sampling collision oracle: walk the segment at the given
// relative step and point-test every sample. Used only to cross-check the
// exact slab test.
bool segment_free_sampled(const Environment& env, const State& a, const State& b,
                          double rel_step) {
    if (!point_free(env, a) || !point_free(env, b)) return false;
    const std::size_t n = static_cast<std::size_t>(std::ceil(1.0 / rel_step));
    State x(a.size());
    for (std::size_t k = 1; k < n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n);
        for (std::size_t i = 0; i < a.size(); ++i) x[i] = (1.0 - t) * a[i] + t * b[i];
        if (!point_free(env, x)) return false;
    }
    return true;
}

// width of the parametric hit interval of segment a->b against box, < 0 if miss
double hit_interval_width(const State& a, const State& b, const Aabb& box) {
    double t0 = 0.0, t1 = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double dir = b[i] - a[i];
        if (dir == 0.0) {
            if (a[i] < box.min_corner[i] || a[i] > box.max_corner[i]) return -1.0;
        } else {
            double ta = (box.min_corner[i] - a[i]) / dir;
            double tb = (box.max_corner[i] - a[i]) / dir;
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return -1.0;
        }
    }
    return t1 - t0;
}

}  // namespace

TEST_CASE("distance basics") {
    CHECK(distance({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(distance({2.0, 7.0}, {2.0, 7.0}) == 0.0);
    CHECK(distance({1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}) == doctest::Approx(std::sqrt(3.0)));
    CHECK_THROWS_AS(distance({0.0, 0.0}, {0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("distance triangle inequality on random triples") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int trial = 0; trial < 100000; ++trial) {
        State a{u(rng), u(rng), u(rng)};
        State b{u(rng), u(rng), u(rng)};
        State c{u(rng), u(rng), u(rng)};
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
        CHECK(distance(a, b) == doctest::Approx(distance(b, a)));
    }
}

TEST_CASE("point_free boundary convention") {
    Environment env(Aabb({0.0, 0.0}, {10.0, 10.0}), {Aabb({4.0, 4.0}, {6.0, 6.0})},
                    {1.0, 1.0}, {9.0, 9.0}, 0.5);
    CHECK(point_free(env, {2.0, 2.0}));
    CHECK_FALSE(point_free(env, {5.0, 5.0}));      // obstacle center
    CHECK_FALSE(point_free(env, {4.0, 5.0}));      // exactly on a face
    CHECK_FALSE(point_free(env, {4.0, 4.0}));      // corner
    CHECK(point_free(env, {0.0, 0.0}));            // world boundary is free
    CHECK_FALSE(point_free(env, {-0.1, 5.0}));     // outside bounds
}

TEST_CASE("segment_free basics") {
    Environment env(Aabb({0.0, 0.0}, {10.0, 10.0}), {Aabb({4.0, 4.0}, {6.0, 6.0})},
                    {1.0, 1.0}, {9.0, 9.0}, 0.5);
    CHECK(segment_free(env, {1.0, 1.0}, {1.0, 9.0}));
    CHECK_FALSE(segment_free(env, {1.0, 5.0}, {9.0, 5.0}));  // crosses the box
    CHECK_FALSE(segment_free(env, {4.0, 1.0}, {4.0, 9.0}));  // grazes the face plane
    CHECK_FALSE(segment_free(env, {1.0, 7.0}, {7.0, 1.0}));  // clips the corner at (4,4)? no: midpoint (4,4) on corner
    CHECK(segment_free(env, {0.0, 0.0}, {10.0, 0.0}));       // along the world edge
    CHECK_FALSE(segment_free(env, {1.0, 1.0}, {11.0, 1.0})); // exits bounds

    Environment empty = empty_world_2d();
    CHECK(segment_free(empty, {1.0, 1.0}, {9.0, 9.0}));
}

TEST_CASE("segment_free equals point_free on degenerate segments") {
    Environment env(Aabb({0.0, 0.0}, {10.0, 10.0}), {Aabb({4.0, 4.0}, {6.0, 6.0})},
                    {1.0, 1.0}, {9.0, 9.0}, 0.5);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        State x{u(rng), u(rng)};
        CHECK(segment_free(env, x, x) == point_free(env, x));
    }
}

TEST_CASE("segment_free agrees with the dense-sampling oracle") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    std::size_t disputes = 0;
    for (int world = 0; world < 25; ++world) {
        std::vector<Aabb> boxes;
        for (int k = 0; k < 6; ++k) {
            const double x0 = 10.0 + 80.0 * u01(rng);
            const double y0 = 10.0 + 80.0 * u01(rng);
            const double wx = 1.0 + 9.0 * u01(rng);
            const double wy = 1.0 + 9.0 * u01(rng);
            boxes.emplace_back(State{x0, y0},
                               State{std::min(x0 + wx, 99.0), std::min(y0 + wy, 99.0)});
        }
        Environment env(Aabb({0.0, 0.0}, {100.0, 100.0}), boxes, {1.0, 1.0},
                        {99.0, 99.0}, 0.5);
        for (int seg = 0; seg < 400; ++seg) {
            State a{100.0 * u01(rng), 100.0 * u01(rng)};
            State b{100.0 * u01(rng), 100.0 * u01(rng)};
            const bool exact = segment_free(env, a, b);
            const bool sampled = segment_free_sampled(env, a, b, 1e-4);
            if (exact == sampled) continue;
            // The sampler can only miss sub-resolution grazes; verify that is
            // what happened and escalate otherwise.
            ++disputes;
            REQUIRE_FALSE(exact);  // sampled=blocked while exact=free is a real bug
            double widest = -1.0;
            for (const Aabb& box : env.obstacles) {
                widest = std::max(widest, hit_interval_width(a, b, box));
            }
            CHECK(widest <= 2e-4);
        }
    }
    CHECK(disputes <= 5);  // grazing hits are rare among random segments
}

TEST_CASE("nearest_obstacle examples") {
    Environment env(Aabb({-10.0, -10.0}, {10.0, 10.0}), {Aabb({1.0, 1.0}, {2.0, 2.0})},
                    {-5.0, -5.0}, {8.0, 8.0}, 0.5);
    const auto r = nearest_obstacle(env, {0.0, 0.0});
    CHECK(r.dist == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.closest[0] == doctest::Approx(1.0));
    CHECK(r.closest[1] == doctest::Approx(1.0));

    CHECK(nearest_obstacle(env, {1.5, 1.5}).dist == 0.0);

    Environment empty = empty_world_2d();
    CHECK(nearest_obstacle(empty, {5.0, 5.0}).dist ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("nearest_obstacle matches the surface-sampling oracle") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Aabb> boxes;
        for (int k = 0; k < 4; ++k) {
            const double x0 = 10.0 + 70.0 * u01(rng);
            const double y0 = 10.0 + 70.0 * u01(rng);
            boxes.emplace_back(State{x0, y0}, State{x0 + 2.0 + 10.0 * u01(rng),
                                                    y0 + 2.0 + 10.0 * u01(rng)});
        }
        Environment env(Aabb({0.0, 0.0}, {100.0, 100.0}), boxes, {1.0, 1.0},
                        {99.0, 99.0}, 0.5);

        State x{100.0 * u01(rng), 100.0 * u01(rng)};
        bool inside = false;
        for (const Aabb& b : boxes) inside = inside || b.contains(x);
        if (inside) continue;  // the oracle samples surfaces only

        const double exact = nearest_obstacle(env, x).dist;
        double sampled = std::numeric_limits<double>::infinity();
        double pitch = 0.0;
        for (const Aabb& b : boxes) {
            // 2500 samples per edge: ~1e4 per box surface
            const int n = 2500;
            for (int e = 0; e < 4; ++e) {
                const bool horizontal = e < 2;
                const double fixed = (e % 2 == 0) ? (horizontal ? b.min_corner[1] : b.min_corner[0])
                                                  : (horizontal ? b.max_corner[1] : b.max_corner[0]);
                const double lo = horizontal ? b.min_corner[0] : b.min_corner[1];
                const double hi = horizontal ? b.max_corner[0] : b.max_corner[1];
                pitch = std::max(pitch, (hi - lo) / n);
                for (int i = 0; i <= n; ++i) {
                    const double t = lo + (hi - lo) * i / n;
                    const State s = horizontal ? State{t, fixed} : State{fixed, t};
                    const double d = distance(x, s);
                    sampled = std::min(sampled, d);
                    CHECK(exact <= d + 1e-12);
                }
            }
        }
        CHECK(sampled - exact >= -1e-12);
        CHECK(sampled - exact <= 2.0 * pitch);
    }
}

TEST_CASE("unit_ball_volume known values") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
    CHECK_THROWS_AS(unit_ball_volume(0), std::invalid_argument);
}

TEST_CASE("free_measure is the bounds volume by decision") {
    Environment plain(Aabb({0.0, 0.0}, {10.0, 10.0}), {}, {1.0, 1.0}, {9.0, 9.0}, 0.5);
    CHECK(free_measure(plain) == doctest::Approx(100.0));

    Environment cube(Aabb({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}), {}, {0.1, 0.1, 0.1},
                     {0.9, 0.9, 0.9}, 0.05);
    CHECK(free_measure(cube) == doctest::Approx(1.0));

    // obstacle volume is deliberately not subtracted
    Environment with_box(Aabb({0.0, 0.0}, {10.0, 10.0}), {Aabb({4.0, 4.0}, {6.0, 6.0})},
                         {1.0, 1.0}, {9.0, 9.0}, 0.5);
    CHECK(free_measure(with_box) == doctest::Approx(100.0));
}

TEST_CASE("environment invariants are validated") {
    CHECK_THROWS_AS(Aabb({1.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
    // start inside an obstacle
    CHECK_THROWS_AS(Environment(Aabb({0.0, 0.0}, {10.0, 10.0}),
                                {Aabb({0.5, 0.5}, {2.0, 2.0})}, {1.0, 1.0}, {9.0, 9.0}, 0.5),
                    std::invalid_argument);
    // goal ball poking out of bounds
    CHECK_THROWS_AS(Environment(Aabb({0.0, 0.0}, {10.0, 10.0}), {}, {1.0, 1.0},
                                {9.9, 9.9}, 0.5),
                    std::invalid_argument);
    // 1D world rejected
    CHECK_THROWS_AS(Environment(Aabb({0.0}, {10.0}), {}, {1.0}, {9.0}, 0.5),
                    std::invalid_argument);
}
