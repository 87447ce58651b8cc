#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "awl1/core.hpp"
#include "awl1/hash.hpp"

namespace awl1 {

/// Everything needed to rebuild an index deterministically. Hash
/// functions are derived from (seed, table, function), never stored.
struct IndexParams {
    HashVariant variant;
    std::uint32_t dim = 0;
    QuantizationGrid grid{0.0, 1.0, 1.0, 1};
    std::uint32_t num_hashes = 1;  // K per table
    std::uint32_t num_tables = 1;  // L
    std::uint64_t seed = 0;

    void validate() const;

    bool operator==(const IndexParams&) const = default;
};

/// Counters a query fills in when the caller wants them.
struct QueryStats {
    std::uint64_t candidates_examined = 0;  // exact distance evaluations
    std::uint64_t buckets_probed = 0;
};

/// Multi-table index over the weighted Manhattan distance. Data points
/// are hashed once with the weight-free data-side functions; queries
/// arrive with arbitrary weight vectors (negative entries included) and
/// use the query-side functions built from the same draws. Immutable
/// after build; concurrent queries are safe.
class Index {
public:
    Index() = default;

    /// Quantizes and inserts every point into each table under the key
    /// mixing its per-table hash values. Deterministic given params.
    static Index build(const std::vector<RealPoint>& data, const IndexParams& params);

    /// Near-neighbor decision query with box-space radii r1 < r2:
    /// probes the query's bucket in each table and returns the first
    /// candidate whose exact distance (on original real coordinates) is
    /// <= r2, examining at most 3 * num_tables candidates. If the radius
    /// gap collapses in grid space the chosen t is too coarse and this
    /// throws.
    std::optional<std::uint32_t> query_near(const RealPoint& q, const WeightVector& w, double r1,
                                            double r2, QueryStats* stats = nullptr) const;

    /// Practical top-1 mode: collects up to `budget` distinct colliding
    /// candidates across tables and returns the one with minimal exact
    /// distance (ties to the smaller id).
    std::optional<std::pair<std::uint32_t, double>> query_top1(const RealPoint& q,
                                                               const WeightVector& w,
                                                               std::uint32_t budget,
                                                               QueryStats* stats = nullptr) const;

    void save(const std::filesystem::path& path) const;
    static Index load(const std::filesystem::path& path);

    const IndexParams& params() const { return params_; }
    std::uint64_t size() const { return count_; }
    RealPoint real_point(std::uint32_t id) const;
    GridPoint grid_point(std::uint32_t id) const;

    bool operator==(const Index&) const = default;

private:
    using Bucket = std::vector<std::uint32_t>;
    using Table = std::unordered_map<std::uint64_t, Bucket>;

    std::uint64_t table_key(const GridPoint& x, const WeightVector* w, std::uint32_t table) const;
    void derive_functions();

    IndexParams params_;
    std::uint64_t count_ = 0;
    std::vector<double> reals_;          // count * dim, row-major arena
    std::vector<std::uint32_t> grids_;   // count * dim, row-major arena
    std::vector<Table> tables_;          // num_tables maps key -> ids
    std::vector<HashFunctionSpec> functions_;  // num_tables * num_hashes, table-major
};

}  // namespace awl1
