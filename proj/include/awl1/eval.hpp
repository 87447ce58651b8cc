#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "awl1/core.hpp"
#include "awl1/hash.hpp"
#include "awl1/index.hpp"

namespace awl1 {

/// Empirical vs. closed-form collision probability for one point pair.
struct CollisionEstimate {
    HashVariant variant;
    double distance = 0.0;     // weighted grid distance of the pair
    double empirical = 0.0;
    double theoretical = 0.0;
    std::uint32_t trials = 0;
};

/// Exact nearest neighbor by linear scan: argmin of the weighted
/// Manhattan distance, ties to the smallest id. Errors on empty data.
std::pair<std::uint32_t, double> brute_force_nn(const std::vector<RealPoint>& data,
                                                const RealPoint& q, const WeightVector& w);

/// Samples `trials` independent hash functions and counts how often the
/// data-side hash of o equals the query-side hash of (q, w). Each trial
/// draws one function whose draws serve both sides, as the asymmetric
/// construction requires.
CollisionEstimate estimate_collision_prob(const GridPoint& o, const GridPoint& q,
                                          const WeightVector& w, const HashVariant& variant,
                                          std::uint32_t steps, std::uint32_t dim,
                                          std::uint32_t trials, std::uint64_t seed);

struct RecallReport {
    double recall_at_1 = 0.0;
    double mean_candidates = 0.0;
    double mean_latency_us = 0.0;
    double median_latency_us = 0.0;
    std::uint64_t num_queries = 0;
};

/// Builds an index over `data` and compares query_top1 against
/// brute_force_nn for every (query, weights) pair. Deterministic given
/// params.seed. Errors on an empty query set.
RecallReport run_recall_harness(const std::vector<RealPoint>& data,
                                const std::vector<std::pair<RealPoint, WeightVector>>& queries,
                                const IndexParams& params, std::uint32_t budget);

/// Report rows as CSV `metric,name,value`.
void write_report_csv(const RecallReport& report, std::ostream& out);

}  // namespace awl1
