#include "awl1/core.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace awl1 {

WeightVector::WeightVector(std::vector<double> w) : weights(std::move(w)) {
    if (weights.empty()) {
        throw std::invalid_argument("weight vector must not be empty");
    }
    bool any_nonzero = false;
    for (double v : weights) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("weight vector contains a non-finite entry");
        }
        any_nonzero |= (v != 0.0);
        sum += v;
        sum_abs += std::abs(v);
        sum_sq += v * v;
    }
    if (!any_nonzero) {
        throw std::invalid_argument("all-zero weight vector rejected");
    }
}

QuantizationGrid QuantizationGrid::create(double lower, double upper, double t) {
    if (!(lower < upper)) {
        throw std::invalid_argument("grid requires lower < upper");
    }
    if (!(t > 0.0)) {
        throw std::invalid_argument("grid resolution t must be positive");
    }
    const double steps = std::floor((upper - lower) * t);
    if (steps < 1.0) {
        throw std::invalid_argument(
            "grid resolves to zero steps; increase t so that (upper - lower) * t >= 1");
    }
    return QuantizationGrid{lower, upper, t, static_cast<std::uint32_t>(steps)};
}

namespace {

void check_same_dim(std::size_t a, std::size_t b, std::size_t c) {
    if (a != b || a != c) {
        throw std::invalid_argument("dimension mismatch between points and weights");
    }
}

}  // namespace

double weighted_manhattan(const GridPoint& o, const GridPoint& q, const WeightVector& w) {
    check_same_dim(o.dim(), q.dim(), w.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < o.coords.size(); ++i) {
        const auto a = static_cast<std::int64_t>(o.coords[i]);
        const auto b = static_cast<std::int64_t>(q.coords[i]);
        acc += w[i] * static_cast<double>(std::llabs(a - b));
    }
    return acc;
}

double weighted_manhattan(const RealPoint& o, const RealPoint& q, const WeightVector& w) {
    check_same_dim(o.dim(), q.dim(), w.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < o.coords.size(); ++i) {
        acc += w[i] * std::abs(o.coords[i] - q.coords[i]);
    }
    return acc;
}

GridPoint quantize(const RealPoint& x, const QuantizationGrid& grid) {
    GridPoint out;
    out.coords.reserve(x.dim());
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        const double v = x.coords[i];
        if (!(v >= grid.lower && v <= grid.upper)) {
            throw std::invalid_argument("coordinate " + std::to_string(i) + " = " +
                                        std::to_string(v) + " outside grid bounds [" +
                                        std::to_string(grid.lower) + ", " +
                                        std::to_string(grid.upper) + "]");
        }
        // Monotone in v, so the result never exceeds floor((upper - lower) * t).
        out.coords.push_back(static_cast<std::uint32_t>(std::floor((v - grid.lower) * grid.t)));
    }
    return out;
}

std::pair<double, double> grid_radii_to_box(double r1_grid, double r2_grid,
                                            const WeightVector& w, double t) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("grid resolution t must be positive");
    }
    if (!(r1_grid < r2_grid)) {
        throw std::invalid_argument("radii require r1 < r2");
    }
    return {(r1_grid - w.sum_abs) / t, (r2_grid + w.sum_abs) / t};
}

std::pair<double, double> box_radii_to_grid(double r1_box, double r2_box,
                                            const WeightVector& w, double t) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("grid resolution t must be positive");
    }
    if (!(r1_box < r2_box)) {
        throw std::invalid_argument("radii require r1 < r2");
    }
    return {t * r1_box + w.sum_abs, t * r2_box - w.sum_abs};
}

}  // namespace awl1
