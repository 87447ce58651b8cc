#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "awl1/eval.hpp"
#include "awl1/rng.hpp"

using namespace awl1;

TEST_CASE("brute force scan returns the exact argmin") {
    const std::vector<RealPoint> data{RealPoint{{0.0, 0.0}}, RealPoint{{3.0, 3.0}}};
    const RealPoint q{{1.0, 1.0}};

    const auto [id, dist] = brute_force_nn(data, q, WeightVector({1.0, 1.0}));
    CHECK(id == 0);
    CHECK(dist == doctest::Approx(2.0));

    // Negative weights invert the preference toward far points.
    const auto [neg_id, neg_dist] = brute_force_nn(data, q, WeightVector({-1.0, -1.0}));
    CHECK(neg_id == 1);
    CHECK(neg_dist == doctest::Approx(-4.0));

    const auto [self_id, self_dist] =
        brute_force_nn(data, RealPoint{{3.0, 3.0}}, WeightVector({2.0, 0.5}));
    CHECK(self_id == 1);
    CHECK(self_dist == 0.0);

    CHECK_THROWS_AS(brute_force_nn({}, q, WeightVector({1.0, 1.0})), std::invalid_argument);
}

TEST_CASE("brute force breaks ties toward the smaller id") {
    const std::vector<RealPoint> data{RealPoint{{2.0}}, RealPoint{{0.0}}, RealPoint{{2.0}}};
    const auto [id, dist] = brute_force_nn(data, RealPoint{{1.0}}, WeightVector({1.0}));
    CHECK(id == 0);
    CHECK(dist == doctest::Approx(1.0));
}

TEST_CASE("coincident points always collide under the sign hash") {
    const GridPoint p{{1, 2, 3}};
    const auto est = estimate_collision_prob(p, p, WeightVector({1.0, 1.0, 1.0}),
                                             HashVariant::theta(), 4, 3, 500, 5);
    CHECK(est.empirical == 1.0);
    CHECK(est.theoretical == doctest::Approx(1.0));
    CHECK(est.distance == 0.0);
}

TEST_CASE("empirical collision rates match the closed forms") {
    // o = (0,0,0) vs q = (4,4,0) under unit weights realizes distance 8.
    const GridPoint o{{0, 0, 0}};
    const GridPoint q{{4, 4, 0}};
    const WeightVector w({1.0, 1.0, 1.0});

    const auto theta = estimate_collision_prob(o, q, w, HashVariant::theta(), 4, 3, 20000, 6);
    CHECK(theta.theoretical == doctest::Approx(0.6081734479693927).epsilon(1e-9));
    CHECK(std::abs(theta.empirical - theta.theoretical) <= 0.015);

    // Same pair under the floor hash with window 4: transformed distance 4.
    const auto l2 = estimate_collision_prob(o, q, w, HashVariant::l2(4.0), 4, 3, 20000, 7);
    CHECK(l2.theoretical == doctest::Approx(0.3687463803725072).epsilon(1e-9));
    CHECK(std::abs(l2.empirical - l2.theoretical) <= 0.015);

    CHECK_THROWS_AS(estimate_collision_prob(o, q, w, HashVariant::theta(), 4, 3, 0, 6),
                    std::invalid_argument);
}

TEST_CASE("estimates hold with mixed-sign weights") {
    const GridPoint o{{0, 0, 0}};
    const GridPoint q{{1, 2, 3}};
    const WeightVector w({2.0, -1.0, 1.0});
    const auto est = estimate_collision_prob(o, q, w, HashVariant::theta(), 4, 3, 20000, 8);
    CHECK(est.distance == doctest::Approx(3.0));
    CHECK(std::abs(est.empirical - est.theoretical) <= 0.015);
}

TEST_CASE("recall harness is exact when every query collides with itself") {
    auto rng = make_stream(61, 0, 0);
    std::vector<RealPoint> data;
    for (int i = 0; i < 200; ++i) {
        std::vector<double> coords(4);
        for (double& c : coords) c = uniform01(rng);
        data.push_back(RealPoint{std::move(coords)});
    }
    // Queries are the stored points themselves under unit weights, so the
    // true neighbor shares every hash and an exhaustive budget finds it.
    std::vector<std::pair<RealPoint, WeightVector>> queries;
    for (int i = 0; i < 50; ++i) {
        queries.emplace_back(data[i * 4], WeightVector(std::vector<double>(4, 1.0)));
    }

    IndexParams params;
    params.grid = QuantizationGrid::create(0.0, 1.0, 16.0);
    params.dim = 4;
    params.variant = HashVariant::theta();
    params.num_hashes = 1;
    params.num_tables = 4;
    params.seed = 11;

    const auto report = run_recall_harness(data, queries, params, 200);
    CHECK(report.recall_at_1 == 1.0);
    CHECK(report.num_queries == 50);
    CHECK(report.mean_candidates > 0.0);
    CHECK(report.mean_latency_us > 0.0);

    CHECK_THROWS_AS(run_recall_harness(data, {}, params, 200), std::invalid_argument);
}

TEST_CASE("recall harness runs end-to-end with mixed-sign weights") {
    auto rng = make_stream(62, 0, 0);
    std::vector<RealPoint> data;
    for (int i = 0; i < 300; ++i) {
        std::vector<double> coords(4);
        for (double& c : coords) c = uniform01(rng);
        data.push_back(RealPoint{std::move(coords)});
    }
    std::vector<std::pair<RealPoint, WeightVector>> queries;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> coords(4), weights(4);
        for (double& c : coords) c = uniform01(rng);
        for (double& v : weights) v = -1.0 + 2.0 * uniform01(rng);
        queries.emplace_back(RealPoint{std::move(coords)}, WeightVector(std::move(weights)));
    }
    IndexParams params;
    params.grid = QuantizationGrid::create(0.0, 1.0, 16.0);
    params.dim = 4;
    params.variant = HashVariant::theta();
    params.num_hashes = 2;
    params.num_tables = 8;
    params.seed = 12;

    const auto report = run_recall_harness(data, queries, params, 300);
    CHECK(report.recall_at_1 >= 0.0);
    CHECK(report.recall_at_1 <= 1.0);
    CHECK(report.num_queries == 20);
}

TEST_CASE("report rows are metric,name,value") {
    RecallReport report;
    report.recall_at_1 = 0.5;
    report.mean_candidates = 12.25;
    report.mean_latency_us = 3.5;
    report.median_latency_us = 3.0;
    report.num_queries = 8;
    std::ostringstream out;
    write_report_csv(report, out);
    CHECK(out.str() ==
          "recall,at1,0.5\n"
          "candidates,mean,12.25\n"
          "latency_us,mean,3.5\n"
          "latency_us,median,3\n"
          "queries,count,8\n");
}
