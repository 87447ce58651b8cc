#include "awl1/transform.hpp"

#include <stdexcept>
#include <string>

namespace awl1 {

namespace {

void check_coords(const GridPoint& x, std::uint32_t steps) {
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i] > steps) {
            throw std::invalid_argument("grid coordinate " + std::to_string(i) + " = " +
                                        std::to_string(x.coords[i]) + " exceeds grid steps " +
                                        std::to_string(steps));
        }
    }
}

}  // namespace

std::vector<std::uint8_t> unary_encode(const GridPoint& x, std::uint32_t steps) {
    check_coords(x, steps);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(steps) * x.dim(), 0);
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        auto* block = bits.data() + i * steps;
        for (std::uint32_t j = 0; j < x.coords[i]; ++j) block[j] = 1;
    }
    return bits;
}

std::vector<double> materialize_data_transform(const GridPoint& x, std::uint32_t steps) {
    const auto bits = unary_encode(x, steps);
    const std::size_t half = bits.size();
    std::vector<double> out(2 * half);
    for (std::size_t k = 0; k < half; ++k) {
        // cos(pi/2 * b) and sin(pi/2 * b) for b in {0,1} are exactly 0 or 1.
        out[k] = bits[k] ? 0.0 : 1.0;
        out[half + k] = bits[k] ? 1.0 : 0.0;
    }
    return out;
}

std::vector<double> materialize_query_transform(const GridPoint& x, const WeightVector& w,
                                                std::uint32_t steps) {
    if (x.dim() != w.dim()) {
        throw std::invalid_argument("dimension mismatch between point and weights");
    }
    auto out = materialize_data_transform(x, steps);
    const std::size_t half = out.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const double wi = w[k / steps];
        out[k] *= wi;
        out[half + k] *= wi;
    }
    return out;
}

PrefixTable build_prefix_table(std::span<const double> draws, std::uint32_t steps,
                               std::uint32_t dim) {
    const std::size_t expected = 2 * static_cast<std::size_t>(steps) * dim;
    if (draws.size() != expected) {
        throw std::invalid_argument("expected " + std::to_string(expected) + " draws, got " +
                                    std::to_string(draws.size()));
    }
    PrefixTable table;
    table.steps = steps;
    table.dim = dim;
    table.entries.assign(2 * static_cast<std::size_t>(dim) * (steps + 1), 0.0);

    const std::size_t width = steps + 1;
    for (std::uint32_t i = 0; i < dim; ++i) {
        // Cosine rows: suffix sums, accumulated right to left, last entry 0.
        const double* block = draws.data() + static_cast<std::size_t>(i) * steps;
        double* row = table.entries.data() + static_cast<std::size_t>(i) * width;
        double acc = 0.0;
        row[steps] = 0.0;
        for (std::uint32_t j = steps; j-- > 0;) {
            acc += block[j];
            row[j] = acc;
        }
    }
    for (std::uint32_t i = 0; i < dim; ++i) {
        // Sine rows: prefix sums, accumulated left to right, first entry 0.
        const double* block = draws.data() + static_cast<std::size_t>(dim + i) * steps;
        double* row = table.entries.data() + static_cast<std::size_t>(dim + i) * width;
        double acc = 0.0;
        row[0] = 0.0;
        for (std::uint32_t j = 0; j < steps; ++j) {
            acc += block[j];
            row[j + 1] = acc;
        }
    }
    return table;
}

double fast_projection(const PrefixTable& table, std::span<const std::uint32_t> coords) {
    if (coords.size() != table.dim) {
        throw std::invalid_argument("dimension mismatch between point and prefix table");
    }
    const std::size_t width = table.steps + 1;
    const double* cos_rows = table.entries.data();
    const double* sin_rows = cos_rows + static_cast<std::size_t>(table.dim) * width;
    double acc = 0.0;
    for (std::uint32_t i = 0; i < table.dim; ++i) {
        const std::uint32_t c = coords[i];
        if (c > table.steps) {
            throw std::invalid_argument("grid coordinate " + std::to_string(i) +
                                        " exceeds grid steps");
        }
        acc += cos_rows[i * width + c] + sin_rows[i * width + c];
    }
    return acc;
}

double fast_projection(const PrefixTable& table, const GridPoint& x) {
    return fast_projection(table, std::span<const std::uint32_t>(x.coords));
}

double fast_projection(const PrefixTable& table, std::span<const std::uint32_t> coords,
                       const WeightVector& w) {
    if (coords.size() != table.dim || w.dim() != table.dim) {
        throw std::invalid_argument("dimension mismatch between point, weights and prefix table");
    }
    const std::size_t width = table.steps + 1;
    const double* cos_rows = table.entries.data();
    const double* sin_rows = cos_rows + static_cast<std::size_t>(table.dim) * width;
    double acc = 0.0;
    for (std::uint32_t i = 0; i < table.dim; ++i) {
        const std::uint32_t c = coords[i];
        if (c > table.steps) {
            throw std::invalid_argument("grid coordinate " + std::to_string(i) +
                                        " exceeds grid steps");
        }
        acc += w[i] * (cos_rows[i * width + c] + sin_rows[i * width + c]);
    }
    return acc;
}

double fast_projection(const PrefixTable& table, const GridPoint& x, const WeightVector& w) {
    return fast_projection(table, std::span<const std::uint32_t>(x.coords), w);
}

}  // namespace awl1
