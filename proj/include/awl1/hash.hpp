#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "awl1/core.hpp"
#include "awl1/transform.hpp"

namespace awl1 {

enum class Variant : std::uint8_t {
    L2 = 0,     // floor of projection, integer buckets
    Theta = 1,  // sign of projection, one bit
};

/// Hash family selector. `window` is the bucket width of the
/// floor-of-projection hash (the classic p-stable parameter, renamed so
/// it cannot be confused with the query weight vector); it is required
/// for L2 and must be absent for Theta.
struct HashVariant {
    Variant tag = Variant::Theta;
    double window = 0.0;

    static HashVariant l2(double window);
    static HashVariant theta();

    bool operator==(const HashVariant&) const = default;
};

/// Default L2 window for a grid with `steps` levels. Transformed
/// distances grow as sqrt(steps) at fixed box-space distance, so the
/// window scales the same way to keep collision probabilities stable
/// as the grid is refined.
double default_window(std::uint32_t steps);

/// One sampled hash function: the prefix table of its Gaussian draw
/// vector, plus the uniform offset for the L2 variant. The same draws
/// serve both sides of the asymmetric pair; only the projection target
/// (data vs. query embedding) differs.
struct HashFunctionSpec {
    PrefixTable table;
    std::optional<double> offset;  // in [0, window], L2 only
    HashVariant variant;

    bool operator==(const HashFunctionSpec&) const = default;
};

/// Draws 2*steps*dim standard normals (then, for L2, the offset) from
/// `rng` and reduces them to a spec. Identical streams give
/// bit-identical specs. Draw order is fixed: all normals first, offset
/// last.
HashFunctionSpec sample_hash(const HashVariant& variant, std::uint32_t steps, std::uint32_t dim,
                             std::mt19937_64& rng);

/// Data-side hash (no weights consulted).
std::int64_t hash_point(const HashFunctionSpec& spec, std::span<const std::uint32_t> coords);
std::int64_t hash_point(const HashFunctionSpec& spec, const GridPoint& x);

/// Query-side hash of (point, weights).
std::int64_t hash_point(const HashFunctionSpec& spec, std::span<const std::uint32_t> coords,
                        const WeightVector& w);
std::int64_t hash_point(const HashFunctionSpec& spec, const GridPoint& x, const WeightVector& w);

/// Euclidean distance between the two embeddings of a pair at weighted
/// grid distance r: sqrt(steps*(dim + sum w^2) - 2*(steps*sum w - r)).
/// Tiny negatives under the root are rounding and clamp to 0; anything
/// materially negative means the caller passed an unrealizable r.
double transformed_l2_distance(double r, const WeightVector& w, std::uint32_t steps,
                               std::uint32_t dim);

/// Angle between the two embeddings at weighted grid distance r:
/// arccos((steps*sum w - r) / (steps * sqrt(dim * sum w^2))), with the
/// ratio clamped to [-1, 1] before arccos.
double transformed_angle(double r, const WeightVector& w, std::uint32_t steps, std::uint32_t dim);

/// Standard normal CDF, computed from std::erfc; absolute error is far
/// below the 1e-7 the collision-probability tolerances assume.
double normal_cdf(double x);

/// Collision probability of the base L2 hash at Euclidean distance s
/// with bucket width `window`; defined as 1 at s = 0.
double l2_collision_prob(double s, double window);

/// Exact collision probability of the asymmetric pair at weighted grid
/// distance r. Strictly decreasing in r for both variants.
double collision_prob(const HashVariant& variant, double r, const WeightVector& w,
                      std::uint32_t steps, std::uint32_t dim);

/// log(p1) / log(p2); the exponent governing query time n^rho and
/// space n^(1+rho). Requires 0 < p2 < p1 < 1, which makes it < 1.
double rho(double p1, double p2);

struct TableParams {
    std::uint32_t num_hashes;  // hashes concatenated per table (K)
    std::uint32_t num_tables;  // number of tables (L)
};

/// Standard (K, L) construction for n points given collision
/// probabilities p1 (near) and p2 (far):
///   K = ceil(ln n / ln(1/p2)),  L = ceil(n^rho).
TableParams select_params(std::uint64_t n, double p1, double p2);

}  // namespace awl1
