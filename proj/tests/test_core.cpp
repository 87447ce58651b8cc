#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "awl1/core.hpp"
#include "awl1/rng.hpp"

using namespace awl1;

namespace {

// Independent plain-L1 oracle for the unit-weight cross-check.
double plain_l1(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc;
}

RealPoint random_point(std::mt19937_64& rng, std::size_t d, double lo, double hi) {
    std::vector<double> coords(d);
    for (double& c : coords) c = lo + (hi - lo) * uniform01(rng);
    return RealPoint{std::move(coords)};
}

WeightVector random_weights(std::mt19937_64& rng, std::size_t d) {
    std::vector<double> w(d);
    for (double& v : w) v = -3.0 + 6.0 * uniform01(rng);
    return WeightVector{std::move(w)};
}

}  // namespace

TEST_CASE("weighted distance matches hand-computed values") {
    const WeightVector w({1.0, -1.0, 1.0});
    const RealPoint o{{-2.0, 0.0, 0.0}};
    const RealPoint q{{0.0, -1.0, 0.0}};
    CHECK(weighted_manhattan(o, q, w) == doctest::Approx(1.0));

    const WeightVector w2({2.0, 3.0});
    CHECK(weighted_manhattan(RealPoint{{1.0, 4.0}}, RealPoint{{3.0, 1.0}}, w2) ==
          doctest::Approx(13.0));

    const RealPoint same{{5.0, 7.0}};
    CHECK(weighted_manhattan(same, same, w2) == 0.0);

    const GridPoint go{{4, 0}};
    const GridPoint gq{{1, 2}};
    CHECK(weighted_manhattan(go, gq, w2) == doctest::Approx(2.0 * 3 + 3.0 * 2));
}

TEST_CASE("weighted distance rejects dimension mismatches") {
    const WeightVector w({1.0, 2.0});
    CHECK_THROWS_AS(weighted_manhattan(RealPoint{{1.0}}, RealPoint{{1.0, 2.0}}, w),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_manhattan(RealPoint{{1.0, 2.0}}, RealPoint{{1.0, 2.0}},
                                       WeightVector({1.0})),
                    std::invalid_argument);
}

TEST_CASE("weighted distance is symmetric and reduces to L1 under unit weights") {
    auto rng = make_stream(11, 0, 0);
    for (int it = 0; it < 200; ++it) {
        const std::size_t d = 1 + static_cast<std::size_t>(uniform01(rng) * 8);
        const auto o = random_point(rng, d, -5.0, 5.0);
        const auto q = random_point(rng, d, -5.0, 5.0);
        const auto w = random_weights(rng, d);
        CHECK(weighted_manhattan(o, q, w) == weighted_manhattan(q, o, w));

        const WeightVector ones(std::vector<double>(d, 1.0));
        CHECK(weighted_manhattan(o, q, ones) ==
              doctest::Approx(plain_l1(o.coords, q.coords)).epsilon(1e-12));
    }
}

TEST_CASE("weight vector caches and rejections") {
    const WeightVector w({1.5, -2.0, 0.0});
    CHECK(w.sum == doctest::Approx(-0.5));
    CHECK(w.sum_abs == doctest::Approx(3.5));
    CHECK(w.sum_sq == doctest::Approx(1.5 * 1.5 + 4.0));

    CHECK_THROWS_AS(WeightVector({0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("quantization grid validation") {
    const auto grid = QuantizationGrid::create(0.0, 1.0, 10.0);
    CHECK(grid.steps == 10);
    CHECK_THROWS_AS(QuantizationGrid::create(1.0, 1.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(QuantizationGrid::create(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(QuantizationGrid::create(0.0, 1.0, 0.5), std::invalid_argument);  // steps 0
}

TEST_CASE("quantize floors shifted coordinates") {
    const auto grid = QuantizationGrid::create(0.0, 1.0, 10.0);
    const auto g = quantize(RealPoint{{0.25, 0.999}}, grid);
    CHECK(g.coords == std::vector<std::uint32_t>{2, 9});

    const auto grid2 = QuantizationGrid::create(-1.0, 1.0, 10.0);
    CHECK(quantize(RealPoint{{-0.35}}, grid2).coords == std::vector<std::uint32_t>{6});

    CHECK(quantize(RealPoint{{-1.0, -1.0, -1.0}}, grid2).coords ==
          std::vector<std::uint32_t>{0, 0, 0});

    CHECK_THROWS_WITH_AS(quantize(RealPoint{{0.5, 1.2}}, grid),
                         doctest::Contains("coordinate 1"), std::invalid_argument);
}

TEST_CASE("quantize stays within the grid for random inputs") {
    auto rng = make_stream(12, 0, 0);
    const auto grid = QuantizationGrid::create(-2.5, 3.75, 7.0);
    for (int it = 0; it < 500; ++it) {
        const auto x = random_point(rng, 6, grid.lower, grid.upper);
        const auto g = quantize(x, grid);
        for (const auto c : g.coords) CHECK(c <= grid.steps);
    }
    // Exact bounds land on the extreme cells.
    const auto top = quantize(RealPoint{{3.75}}, QuantizationGrid::create(-2.5, 3.75, 7.0));
    CHECK(top.coords[0] == grid.steps);
}

TEST_CASE("quantization sandwich bracket holds for random pairs") {
    auto rng = make_stream(13, 0, 0);
    const auto grid = QuantizationGrid::create(-1.0, 2.0, 9.0);
    for (int it = 0; it < 1000; ++it) {
        const std::size_t d = 1 + static_cast<std::size_t>(uniform01(rng) * 7);
        const auto o = random_point(rng, d, grid.lower, grid.upper);
        const auto q = random_point(rng, d, grid.lower, grid.upper);
        const auto w = random_weights(rng, d);
        const double box = weighted_manhattan(o, q, w);
        const double gridd = weighted_manhattan(quantize(o, grid), quantize(q, grid), w);
        CHECK(gridd - w.sum_abs <= grid.t * box);
        CHECK(grid.t * box <= gridd + w.sum_abs);
    }
}

TEST_CASE("grid radii map to box radii") {
    const auto [r1, r2] = grid_radii_to_box(8.0, 12.0, WeightVector({1.0, -1.0}), 2.0);
    CHECK(r1 == doctest::Approx(3.0));
    CHECK(r2 == doctest::Approx(7.0));

    const auto [s1, s2] = grid_radii_to_box(0.0, 1.0, WeightVector({1.0}), 1.0);
    CHECK(s1 == doctest::Approx(-1.0));
    CHECK(s2 == doctest::Approx(2.0));

    CHECK_THROWS_AS(grid_radii_to_box(1.0, 2.0, WeightVector({1.0}), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(grid_radii_to_box(2.0, 1.0, WeightVector({1.0}), 1.0), std::invalid_argument);

    auto rng = make_stream(14, 0, 0);
    for (int it = 0; it < 200; ++it) {
        const double a = -10.0 + 20.0 * uniform01(rng);
        const double b = a + 1e-6 + 20.0 * uniform01(rng);
        const auto w = random_weights(rng, 4);
        const double t = 0.1 + 10.0 * uniform01(rng);
        const auto [lo, hi] = grid_radii_to_box(a, b, w, t);
        CHECK(lo < hi);
    }
}

TEST_CASE("box radii map to grid radii and can collapse") {
    const WeightVector w({1.0, -1.0});
    const auto [g1, g2] = box_radii_to_grid(3.0, 7.0, w, 2.0);
    CHECK(g1 == doctest::Approx(8.0));
    CHECK(g2 == doctest::Approx(12.0));
    // Tiny gap at coarse t inverts the ordering; callers must detect it.
    const auto [c1, c2] = box_radii_to_grid(1.0, 1.1, w, 2.0);
    CHECK(c1 >= c2);
}
