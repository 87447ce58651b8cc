#include "awl1/hash.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "awl1/rng.hpp"

namespace awl1 {

HashVariant HashVariant::l2(double window) {
    if (!(window > 0.0)) {
        throw std::invalid_argument("l2 variant requires a positive window");
    }
    return HashVariant{Variant::L2, window};
}

HashVariant HashVariant::theta() { return HashVariant{Variant::Theta, 0.0}; }

double default_window(std::uint32_t steps) { return 4.0 * std::sqrt(static_cast<double>(steps)); }

HashFunctionSpec sample_hash(const HashVariant& variant, std::uint32_t steps, std::uint32_t dim,
                             std::mt19937_64& rng) {
    if (steps == 0 || dim == 0) {
        throw std::invalid_argument("steps and dim must be positive");
    }
    if (steps > kMaxGridSteps) {
        throw std::invalid_argument("grid steps " + std::to_string(steps) + " exceed the cap of " +
                                    std::to_string(kMaxGridSteps) +
                                    "; choose a smaller resolution t");
    }
    std::vector<double> draws(2 * static_cast<std::size_t>(steps) * dim);
    for (double& v : draws) v = gaussian(rng);

    HashFunctionSpec spec;
    spec.table = build_prefix_table(draws, steps, dim);
    spec.variant = variant;
    if (variant.tag == Variant::L2) {
        spec.offset = uniform01(rng) * variant.window;
    }
    return spec;
}

namespace {

std::int64_t bucket_of(const HashFunctionSpec& spec, double projection) {
    if (spec.variant.tag == Variant::Theta) {
        return projection < 0.0 ? 0 : 1;
    }
    return static_cast<std::int64_t>(std::floor((projection + *spec.offset) / spec.variant.window));
}

}  // namespace

std::int64_t hash_point(const HashFunctionSpec& spec, std::span<const std::uint32_t> coords) {
    return bucket_of(spec, fast_projection(spec.table, coords));
}

std::int64_t hash_point(const HashFunctionSpec& spec, const GridPoint& x) {
    return bucket_of(spec, fast_projection(spec.table, x));
}

std::int64_t hash_point(const HashFunctionSpec& spec, std::span<const std::uint32_t> coords,
                        const WeightVector& w) {
    return bucket_of(spec, fast_projection(spec.table, coords, w));
}

std::int64_t hash_point(const HashFunctionSpec& spec, const GridPoint& x, const WeightVector& w) {
    return bucket_of(spec, fast_projection(spec.table, x, w));
}

double transformed_l2_distance(double r, const WeightVector& w, std::uint32_t steps,
                               std::uint32_t dim) {
    const double m = static_cast<double>(steps);
    const double sq = m * (static_cast<double>(dim) + w.sum_sq) - 2.0 * (m * w.sum - r);
    const double scale = std::max(1.0, m * (static_cast<double>(dim) + w.sum_sq));
    if (sq < -1e-6 * scale) {
        throw std::invalid_argument("distance " + std::to_string(r) +
                                    " is not realizable for these weights");
    }
    return std::sqrt(std::max(0.0, sq));
}

double transformed_angle(double r, const WeightVector& w, std::uint32_t steps, std::uint32_t dim) {
    const double m = static_cast<double>(steps);
    const double denom = m * std::sqrt(static_cast<double>(dim) * w.sum_sq);
    double ratio = (m * w.sum - r) / denom;
    if (ratio > 1.0 + 1e-9 || ratio < -1.0 - 1e-9) {
        throw std::invalid_argument("distance " + std::to_string(r) +
                                    " is not realizable for these weights");
    }
    ratio = std::clamp(ratio, -1.0, 1.0);
    return std::acos(ratio);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double l2_collision_prob(double s, double window) {
    if (!(window > 0.0)) {
        throw std::invalid_argument("window must be positive");
    }
    if (s < 0.0) {
        throw std::invalid_argument("distance must be non-negative");
    }
    if (s == 0.0) return 1.0;  // limit of the formula for coincident points
    const double c = window / s;
    return 1.0 - 2.0 * normal_cdf(-c) -
           2.0 / (std::sqrt(2.0 * std::numbers::pi) * c) * (1.0 - std::exp(-c * c / 2.0));
}

double collision_prob(const HashVariant& variant, double r, const WeightVector& w,
                      std::uint32_t steps, std::uint32_t dim) {
    if (variant.tag == Variant::L2) {
        return l2_collision_prob(transformed_l2_distance(r, w, steps, dim), variant.window);
    }
    return 1.0 - transformed_angle(r, w, steps, dim) / std::numbers::pi;
}

double rho(double p1, double p2) {
    if (!(p2 > 0.0 && p2 < p1 && p1 < 1.0)) {
        throw std::invalid_argument("rho requires 0 < p2 < p1 < 1 (is the radius gap inverted?)");
    }
    return std::log(p1) / std::log(p2);
}

TableParams select_params(std::uint64_t n, double p1, double p2) {
    if (n < 2) {
        throw std::invalid_argument("parameter selection requires n >= 2");
    }
    const double exponent = rho(p1, p2);
    const double ln_n = std::log(static_cast<double>(n));
    const auto num_hashes = static_cast<std::uint32_t>(std::max(1.0, std::ceil(ln_n / std::log(1.0 / p2))));
    const auto num_tables =
        static_cast<std::uint32_t>(std::ceil(std::pow(static_cast<double>(n), exponent)));
    return TableParams{num_hashes, num_tables};
}

}  // namespace awl1
