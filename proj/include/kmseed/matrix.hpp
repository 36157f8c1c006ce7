#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "kmseed/errors.hpp"

namespace kmseed {

/// Row-major n x d table of finite reals. Immutable once built; every
/// operation in the library treats it as read-only.
struct DataMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // rows * cols, row-major

    DataMatrix() = default;

    DataMatrix(std::size_t r, std::size_t c, std::vector<double> v)
        : rows(r), cols(c), values(std::move(v)) {
        if (values.size() != rows * cols)
            throw InvalidArgumentError("DataMatrix: value count does not match shape");
    }

    double operator()(std::size_t r, std::size_t c) const {
        return values[r * cols + c];
    }

    std::span<const double> row(std::size_t r) const {
        return {values.data() + r * cols, cols};
    }

    /// Builds from nested rows, checking shape and finiteness.
    static DataMatrix from_rows(const std::vector<std::vector<double>>& data) {
        if (data.empty() || data.front().empty())
            throw InvalidArgumentError("DataMatrix: need at least one row and one column");
        const std::size_t d = data.front().size();
        std::vector<double> flat;
        flat.reserve(data.size() * d);
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (data[i].size() != d)
                throw RaggedRowsError(i + 1, d, data[i].size());
            for (double v : data[i]) {
                if (!std::isfinite(v))
                    throw InvalidArgumentError("DataMatrix: non-finite cell");
                flat.push_back(v);
            }
        }
        return DataMatrix(data.size(), d, std::move(flat));
    }
};

}  // namespace kmseed
