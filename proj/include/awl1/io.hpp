#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "awl1/core.hpp"

namespace awl1 {

/// Shortest decimal string that round-trips the exact double, so text
/// output diffs are stable across runs.
std::string format_double(double v);

/// Dataset file: one point per line, d comma-separated decimals, no
/// header. Rectangularity and parse failures are reported with
/// 1-based line numbers. Blank lines are skipped.
std::vector<RealPoint> load_dataset(const std::filesystem::path& path);

/// Query file: 2d comma-separated decimals per line, the first d being
/// the weight vector and the next d the query point. All-zero weight
/// blocks are rejected with the line number.
std::vector<std::pair<WeightVector, RealPoint>> load_queries(const std::filesystem::path& path);

/// Parses a comma-separated list of decimals (used by CLI flags).
std::vector<double> parse_double_list(const std::string& text);

}  // namespace awl1
