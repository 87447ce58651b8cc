#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace awl1 {

/// Per-query weight vector. Entries may be negative or zero, but an
/// all-zero vector is rejected: the weighted distance would be
/// identically zero and the angular collision formula divides by
/// sqrt(sum of squares). Derived sums are cached at construction.
struct WeightVector {
    std::vector<double> weights;
    double sum = 0.0;      // sum w_i
    double sum_abs = 0.0;  // sum |w_i|
    double sum_sq = 0.0;   // sum w_i^2

    explicit WeightVector(std::vector<double> w);

    std::size_t dim() const { return weights.size(); }
    double operator[](std::size_t i) const { return weights[i]; }
};

/// Point with integer coordinates in {0, ..., steps}^dim, the canonical
/// indexed representation after quantization.
struct GridPoint {
    std::vector<std::uint32_t> coords;

    std::size_t dim() const { return coords.size(); }
    bool operator==(const GridPoint&) const = default;
};

/// Point with real coordinates, validated against grid bounds at ingestion.
struct RealPoint {
    std::vector<double> coords;

    std::size_t dim() const { return coords.size(); }
    bool operator==(const RealPoint&) const = default;
};

/// Maps the box [lower, upper]^d onto the integer grid {0, ..., steps}^d
/// at resolution t: coordinate x -> floor((x - lower) * t).
/// steps = floor((upper - lower) * t) and must be >= 1.
struct QuantizationGrid {
    double lower;
    double upper;
    double t;
    std::uint32_t steps;

    /// Validates bounds and derives steps from (lower, upper, t).
    static QuantizationGrid create(double lower, double upper, double t);

    bool operator==(const QuantizationGrid&) const = default;
};

/// Generalized weighted Manhattan distance: sum_i w_i * |o_i - q_i|.
/// May be negative when weights are negative; never clamped.
double weighted_manhattan(const GridPoint& o, const GridPoint& q, const WeightVector& w);
double weighted_manhattan(const RealPoint& o, const RealPoint& q, const WeightVector& w);

/// Quantizes a real point onto the grid. Every coordinate must lie in
/// [lower, upper]; violations raise an ingestion error naming the
/// offending coordinate.
GridPoint quantize(const RealPoint& x, const QuantizationGrid& grid);

/// Maps grid-space radii back to box-space radii:
///   (r1 - sum|w_i|) / t  and  (r2 + sum|w_i|) / t.
/// The output always preserves r1 < r2.
std::pair<double, double> grid_radii_to_box(double r1_grid, double r2_grid,
                                            const WeightVector& w, double t);

/// Inverse mapping used at query admission: box radii to grid radii,
///   t * r1 + sum|w_i|  and  t * r2 - sum|w_i|.
/// Unlike the forward direction this can invert the ordering when the
/// radius gap is too small for the chosen t; callers must check.
std::pair<double, double> box_radii_to_grid(double r1_box, double r2_box,
                                            const WeightVector& w, double t);

}  // namespace awl1
