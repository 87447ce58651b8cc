#include "awl1/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "awl1/errors.hpp"

namespace awl1 {

std::string format_double(double v) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

namespace {

double parse_field(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse \"" +
                                    std::string(field) + "\" as a decimal number");
    }
    return value;
}

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::size_t end = (comma == std::string::npos) ? line.size() : comma;
        row.push_back(parse_field(std::string_view(line).substr(start, end - start), line_no));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return row;
}

bool blank(const std::string& line) {
    for (const char c : line) {
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

struct NumberedRow {
    std::size_t line_no;
    std::vector<double> values;
};

std::vector<NumberedRow> load_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::vector<NumberedRow> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        auto row = parse_row(line, line_no);
        if (width == 0) {
            width = row.size();
        } else if (row.size() != width) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(width) + " fields, got " +
                                        std::to_string(row.size()));
        }
        rows.push_back(NumberedRow{line_no, std::move(row)});
    }
    if (in.bad()) throw IoError("read failed for " + path.string());
    return rows;
}

}  // namespace

std::vector<RealPoint> load_dataset(const std::filesystem::path& path) {
    auto rows = load_rows(path);
    std::vector<RealPoint> points;
    points.reserve(rows.size());
    for (auto& row : rows) points.push_back(RealPoint{std::move(row.values)});
    return points;
}

std::vector<std::pair<WeightVector, RealPoint>> load_queries(const std::filesystem::path& path) {
    auto rows = load_rows(path);
    std::vector<std::pair<WeightVector, RealPoint>> queries;
    queries.reserve(rows.size());
    for (const auto& [line_no, row] : rows) {
        if (row.size() % 2 != 0) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": query rows need 2*d fields (weights then point), got " +
                                        std::to_string(row.size()));
        }
        const std::size_t d = row.size() / 2;
        try {
            WeightVector w(std::vector<double>(row.begin(), row.begin() + d));
            RealPoint q{std::vector<double>(row.begin() + d, row.end())};
            queries.emplace_back(std::move(w), std::move(q));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return queries;
}

std::vector<double> parse_double_list(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number list");
    return parse_row(text, 0);
}

}  // namespace awl1
