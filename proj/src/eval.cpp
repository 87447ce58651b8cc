#include "awl1/eval.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "awl1/io.hpp"
#include "awl1/rng.hpp"

namespace awl1 {

std::pair<std::uint32_t, double> brute_force_nn(const std::vector<RealPoint>& data,
                                                const RealPoint& q, const WeightVector& w) {
    if (data.empty()) throw std::invalid_argument("brute force scan over empty data");
    std::uint32_t best_id = 0;
    double best = weighted_manhattan(data[0], q, w);
    for (std::uint32_t id = 1; id < data.size(); ++id) {
        const double dist = weighted_manhattan(data[id], q, w);
        if (dist < best) {
            best = dist;
            best_id = id;
        }
    }
    return {best_id, best};
}

CollisionEstimate estimate_collision_prob(const GridPoint& o, const GridPoint& q,
                                          const WeightVector& w, const HashVariant& variant,
                                          std::uint32_t steps, std::uint32_t dim,
                                          std::uint32_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    std::uint32_t hits = 0;
    for (std::uint32_t trial = 0; trial < trials; ++trial) {
        auto rng = make_stream(seed, trial, 0);
        const HashFunctionSpec spec = sample_hash(variant, steps, dim, rng);
        hits += (hash_point(spec, o) == hash_point(spec, q, w)) ? 1 : 0;
    }
    const double r = weighted_manhattan(o, q, w);
    return CollisionEstimate{variant, r, static_cast<double>(hits) / trials,
                             collision_prob(variant, r, w, steps, dim), trials};
}

RecallReport run_recall_harness(const std::vector<RealPoint>& data,
                                const std::vector<std::pair<RealPoint, WeightVector>>& queries,
                                const IndexParams& params, std::uint32_t budget) {
    if (queries.empty()) throw std::invalid_argument("query set must not be empty");
    const Index index = Index::build(data, params);

    // Warm the caches so the first timed queries are not outliers.
    const std::size_t warmup = std::min<std::size_t>(queries.size(), 10);
    for (std::size_t i = 0; i < warmup; ++i) {
        index.query_top1(queries[i].first, queries[i].second, budget);
    }

    RecallReport report;
    report.num_queries = queries.size();
    std::vector<double> latencies;
    latencies.reserve(queries.size());
    std::uint64_t hits = 0;
    std::uint64_t candidates = 0;

    for (const auto& [q, w] : queries) {
        QueryStats stats;
        const auto start = std::chrono::steady_clock::now();
        const auto found = index.query_top1(q, w, budget, &stats);
        const auto stop = std::chrono::steady_clock::now();
        latencies.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
        candidates += stats.candidates_examined;
        const auto [true_id, true_dist] = brute_force_nn(data, q, w);
        if (found && found->first == true_id) ++hits;
    }

    report.recall_at_1 = static_cast<double>(hits) / static_cast<double>(queries.size());
    report.mean_candidates = static_cast<double>(candidates) / static_cast<double>(queries.size());
    double total = 0.0;
    for (const double v : latencies) total += v;
    report.mean_latency_us = total / static_cast<double>(latencies.size());
    std::sort(latencies.begin(), latencies.end());
    const std::size_t mid = latencies.size() / 2;
    report.median_latency_us = (latencies.size() % 2 == 1)
                                   ? latencies[mid]
                                   : 0.5 * (latencies[mid - 1] + latencies[mid]);
    return report;
}

void write_report_csv(const RecallReport& report, std::ostream& out) {
    out << "recall,at1," << format_double(report.recall_at_1) << '\n';
    out << "candidates,mean," << format_double(report.mean_candidates) << '\n';
    out << "latency_us,mean," << format_double(report.mean_latency_us) << '\n';
    out << "latency_us,median," << format_double(report.median_latency_us) << '\n';
    out << "queries,count," << report.num_queries << '\n';
}

}  // namespace awl1
