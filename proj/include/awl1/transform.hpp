#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "awl1/core.hpp"

namespace awl1 {

/// Upper bound on the grid step count. A prefix table costs
/// 2 * dim * (steps + 1) doubles per hash function, so a runaway t
/// would silently eat memory; exceeding the cap is a parameter error
/// telling the user to lower t.
inline constexpr std::uint32_t kMaxGridSteps = 4096;

/// Precomputed sums of one 2*steps*dim Gaussian draw vector, laid out as
/// 2*dim rows of (steps + 1) entries:
///   row i       (i < dim):  entry j = sum of draws j..steps-1 of block i,
///                           entry steps = 0   (suffix sums, cosine blocks)
///   row dim + i (i < dim):  entry 0 = 0,
///                           entry j = sum of draws 0..j-1 of block dim+i
///                           (prefix sums, sine blocks)
/// With this table a projection onto the trigonometric embedding of a
/// grid point costs 2*dim lookups instead of a 2*steps*dim dot product.
struct PrefixTable {
    std::uint32_t steps = 0;
    std::uint32_t dim = 0;
    std::vector<double> entries;  // 2*dim rows, row-major, steps+1 entries each

    double at(std::uint32_t row, std::uint32_t col) const {
        return entries[static_cast<std::size_t>(row) * (steps + 1) + col];
    }

    bool operator==(const PrefixTable&) const = default;
};

/// Unary code of a grid point: per coordinate, x_i ones followed by
/// (steps - x_i) zeros, blocks concatenated. Length steps * dim.
std::vector<std::uint8_t> unary_encode(const GridPoint& x, std::uint32_t steps);

/// Reference data-side embedding: elementwise cos(pi/2 * bit) over the
/// unary code, then elementwise sin. Entries are exact 0/1 constants;
/// squared norm is steps * dim. O(steps * dim) memory -- verification
/// path only, production hashing goes through PrefixTable.
std::vector<double> materialize_data_transform(const GridPoint& x, std::uint32_t steps);

/// Reference query-side embedding: the data-side layout with every trig
/// entry of block i scaled by w_i. Squared norm is steps * sum w_i^2.
std::vector<double> materialize_query_transform(const GridPoint& x, const WeightVector& w,
                                                std::uint32_t steps);

/// Builds the prefix table from raw draws (2*dim blocks of `steps`
/// values). Sums accumulate in a fixed direction so identical draws
/// give bit-identical tables.
PrefixTable build_prefix_table(std::span<const double> draws, std::uint32_t steps,
                               std::uint32_t dim);

/// Projection of the raw draw vector onto the data-side embedding of x,
/// via 2*dim table lookups. The span overloads read coordinates in
/// place, so bulk hashing can stream a contiguous arena.
double fast_projection(const PrefixTable& table, std::span<const std::uint32_t> coords);
double fast_projection(const PrefixTable& table, const GridPoint& x);

/// Query-side projection: each coordinate's lookup pair is scaled by w_i.
double fast_projection(const PrefixTable& table, std::span<const std::uint32_t> coords,
                       const WeightVector& w);
double fast_projection(const PrefixTable& table, const GridPoint& x, const WeightVector& w);

}  // namespace awl1
