#pragma once

// Dataset provisioning: seeded bivariate normal samples clipped to the unit
// square, and CSV ingestion of pre-embedded 2D datasets with optional class
// filtering. CSV format: optional header, rows `x,y[,label]`, UTF-8.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qugan/errors.hpp"
#include "qugan/point.hpp"
#include "qugan/rng.hpp"

namespace qugan {

// Independent per-dimension Gaussian parameters in data units.
struct BivariateParams {
    double mu_x = 0.65;
    double sigma_x = 0.10;
    double mu_y = 0.45;
    double sigma_y = 0.05;
};

struct LabeledDataset {
    PointCloud points;
    std::vector<int> labels;  // empty when the source had no label column

    bool has_labels() const { return !labels.empty(); }
};

// Independent Gaussian draws per dimension, clipped into [0,1] (expectation
// encoding cannot represent values outside it). Deterministic per seed.
inline PointCloud sample_bivariate(const BivariateParams& params, std::size_t count,
                                   std::uint64_t seed) {
    if (count < 1) throw ArgumentError("sample count must be >= 1");
    if (!(params.sigma_x > 0.0) || !(params.sigma_y > 0.0))
        throw ArgumentError("sigma must be positive");
    Rng rng(seed);
    auto clip = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
    PointCloud points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = rng.gaussian(params.mu_x, params.sigma_x);
        const double y = rng.gaussian(params.mu_y, params.sigma_y);
        points.push_back({clip(x), clip(y)});
    }
    return points;
}

namespace detail {

inline bool parse_double(std::string_view field, double& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && begin != end;
}

inline bool parse_int(std::string_view field, int& out) {
    double v;
    if (!parse_double(field, v)) return false;
    out = static_cast<int>(v);
    return static_cast<double>(out) == v;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

}  // namespace detail

// Loads `x,y[,label]` rows, keeping a row iff its label is in `class_filter`
// (when a filter is given). A single leading non-numeric row is treated as a
// header. Malformed rows raise ParseError with their line number.
inline LabeledDataset load_csv(const std::string& path,
                               const std::optional<std::set<int>>& class_filter = std::nullopt) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open " + path);

    LabeledDataset ds;
    std::string line;
    long line_number = 0;
    std::optional<bool> file_has_labels;
    while (std::getline(file, line)) {
        ++line_number;
        if (line.empty() || line == "\r") continue;
        const auto fields = detail::split_csv(line);
        if (fields.size() != 2 && fields.size() != 3)
            throw ParseError("expected 2 or 3 comma-separated fields, got " +
                                 std::to_string(fields.size()),
                             line_number);
        Point2 p;
        if (!detail::parse_double(fields[0], p.x) || !detail::parse_double(fields[1], p.y)) {
            if (!file_has_labels && line_number == 1) continue;  // header row
            throw ParseError("malformed numeric field", line_number);
        }
        int label = 0;
        const bool has_label = fields.size() == 3;
        if (has_label && !detail::parse_int(fields[2], label))
            throw ParseError("malformed label field", line_number);
        if (file_has_labels && has_label != *file_has_labels)
            throw ParseError("inconsistent column count", line_number);
        file_has_labels = has_label;
        if (class_filter) {
            if (!has_label) throw ParseError("class filter given but row has no label", line_number);
            if (!class_filter->count(label)) continue;
        }
        ds.points.push_back(p);
        if (has_label) ds.labels.push_back(label);
    }
    return ds;
}

}  // namespace qugan
