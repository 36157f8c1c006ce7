#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kmseed/errors.hpp"
#include "kmseed/matrix.hpp"
#include "kmseed/metrics.hpp"

namespace kmseed {

enum class NormMethod { none, max_abs, min_max };

inline std::string to_string(NormMethod m) {
    switch (m) {
        case NormMethod::none: return "none";
        case NormMethod::max_abs: return "maxabs";
        case NormMethod::min_max: return "minmax";
    }
    return "?";
}

inline NormMethod norm_method_from_string(const std::string& s) {
    if (s == "none") return NormMethod::none;
    if (s == "maxabs") return NormMethod::max_abs;
    if (s == "minmax") return NormMethod::min_max;
    throw InvalidArgumentError("unknown normalization method: " + s);
}

/// Per-attribute summary statistics. Variance is the population variance
/// (divide by n); only the argmax over attributes is ever consumed, which
/// is convention-invariant.
struct AttributeStats {
    std::vector<double> min;
    std::vector<double> max;
    std::vector<double> max_abs;
    std::vector<double> mean;
    std::vector<double> variance;
};

/// Per-attribute affine transform: forward is (x - offset) / scale,
/// inverse is x * scale + offset. Degenerate attributes get scale 1 so
/// the transform never divides by zero.
struct NormalizationParams {
    NormMethod method = NormMethod::none;
    std::vector<double> scale;
    std::vector<double> offset;

    std::size_t dim() const { return scale.size(); }

    double forward(std::size_t attr, double v) const {
        return (v - offset[attr]) / scale[attr];
    }
    double inverse(std::size_t attr, double v) const {
        return v * scale[attr] + offset[attr];
    }
};

struct LoadOptions {
    bool has_header = false;
    std::optional<std::size_t> label_column;  // zero-based; dropped on load
    char delimiter = ',';
};

/// Descriptor for one of the built-in UCI-style datasets.
struct DatasetDescriptor {
    std::string name;
    std::size_t attributes = 0;
    std::size_t records = 0;
    LoadOptions load_options;
};

inline const std::vector<DatasetDescriptor>& dataset_registry() {
    static const std::vector<DatasetDescriptor> registry = {
        {"iris", 4, 150, {false, 4, ','}},
        {"ionosphere", 34, 351, {false, 34, ','}},
        {"seeds", 7, 210, {false, 7, '\t'}},
        {"user_modeling", 5, 258, {true, 5, ','}},
    };
    return registry;
}

inline const DatasetDescriptor* find_dataset(const std::string& name) {
    for (const auto& d : dataset_registry())
        if (d.name == name) return &d;
    return nullptr;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline double parse_cell(std::string_view raw, std::size_t line, std::size_t column) {
    const std::string_view cell = trim(raw);
    if (cell.empty())
        throw MissingValueError(line, column);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value))
        throw NonNumericCellError(line, column, std::string(cell));
    return value;
}

inline std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == delim) {
            cells.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return cells;
}

}  // namespace detail

/// Reads a numeric CSV into a DataMatrix. The label column, if any, is
/// dropped; every remaining cell must parse as a finite real. Row order
/// is preserved exactly. Blank lines (common as trailing lines in UCI
/// files) are skipped; CR-LF endings are handled.
inline DataMatrix load_csv(const std::filesystem::path& path, const LoadOptions& options = {}) {
    std::ifstream in(path);
    if (!in.is_open())
        throw FileNotFoundError(path.string());

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> expected_cells;
    bool header_pending = options.has_header;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0)
            line.erase(0, 3);  // UTF-8 BOM
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (detail::trim(line).empty())
            continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto cells = detail::split(line, options.delimiter);
        if (!expected_cells) {
            expected_cells = cells.size();
            if (options.label_column && *options.label_column >= cells.size())
                throw IndexOutOfRangeError("label column " + std::to_string(*options.label_column) +
                                           " out of range for " + std::to_string(cells.size()) +
                                           " columns");
        } else if (cells.size() != *expected_cells) {
            throw RaggedRowsError(line_no, *expected_cells, cells.size());
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (options.label_column && c == *options.label_column)
                continue;
            row.push_back(detail::parse_cell(cells[c], line_no, c));
        }
        if (row.empty())
            throw InvalidArgumentError("no numeric columns left after dropping the label");
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw InvalidArgumentError("no data rows in " + path.string());
    return DataMatrix::from_rows(rows);
}

/// Loads a registry dataset from `<data_dir>/<name>.csv` and validates the
/// file against the descriptor's expected shape.
inline DataMatrix load_registry_dataset(const DatasetDescriptor& desc,
                                        const std::filesystem::path& data_dir) {
    const auto path = data_dir / (desc.name + ".csv");
    DataMatrix m = load_csv(path, desc.load_options);
    if (m.rows != desc.records || m.cols != desc.attributes)
        throw DatasetMismatchError(desc.name + ": expected " + std::to_string(desc.records) +
                                   "x" + std::to_string(desc.attributes) + ", file has " +
                                   std::to_string(m.rows) + "x" + std::to_string(m.cols));
    return m;
}

inline AttributeStats compute_stats(const DataMatrix& m) {
    AttributeStats s;
    s.min.assign(m.cols, 0.0);
    s.max.assign(m.cols, 0.0);
    s.max_abs.assign(m.cols, 0.0);
    s.mean = mean_point(m);
    s.variance.assign(m.cols, 0.0);
    for (std::size_t c = 0; c < m.cols; ++c) {
        s.min[c] = m(0, c);
        s.max[c] = m(0, c);
    }
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            const double v = m(r, c);
            s.min[c] = std::min(s.min[c], v);
            s.max[c] = std::max(s.max[c], v);
            s.max_abs[c] = std::max(s.max_abs[c], std::abs(v));
        }
    }
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            const double d = m(r, c) - s.mean[c];
            s.variance[c] += d * d;
        }
    }
    for (double& v : s.variance)
        v /= static_cast<double>(m.rows);
    return s;
}

/// max-abs: divide each attribute by its largest absolute value, mapping
/// into [-1, 1]. min-max: affine map to [0, 1]. Degenerate attributes keep
/// scale 1 and pass through (max-abs) or collapse to 0 (min-max).
inline std::pair<DataMatrix, NormalizationParams> normalize(const DataMatrix& m,
                                                            NormMethod method) {
    NormalizationParams p;
    p.method = method;
    p.scale.assign(m.cols, 1.0);
    p.offset.assign(m.cols, 0.0);
    if (method != NormMethod::none) {
        const AttributeStats s = compute_stats(m);
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (method == NormMethod::max_abs) {
                if (s.max_abs[c] > 0.0) p.scale[c] = s.max_abs[c];
            } else {
                p.offset[c] = s.min[c];
                const double range = s.max[c] - s.min[c];
                if (range > 0.0) p.scale[c] = range;
            }
        }
    }
    DataMatrix out = m;
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            out.values[r * m.cols + c] = p.forward(c, m(r, c));
    return {std::move(out), std::move(p)};
}

/// Exact inverse of `normalize`, applied coordinate-wise to centroids.
inline CentroidSet inverse_transform(const CentroidSet& points, const NormalizationParams& p) {
    CentroidSet out = points;
    for (auto& point : out.centroids) {
        if (point.size() != p.dim())
            throw DimensionMismatchError(p.dim(), point.size());
        for (std::size_t c = 0; c < point.size(); ++c)
            point[c] = p.inverse(c, point[c]);
    }
    return out;
}

}  // namespace kmseed
