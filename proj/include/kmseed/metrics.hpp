#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "kmseed/errors.hpp"
#include "kmseed/matrix.hpp"

namespace kmseed {

using Point = std::vector<double>;

/// k cluster centers of equal dimension, ordered by cluster index.
struct CentroidSet {
    std::vector<Point> centroids;

    std::size_t k() const { return centroids.size(); }
    std::size_t dim() const { return centroids.empty() ? 0 : centroids.front().size(); }

    const Point& operator[](std::size_t j) const { return centroids[j]; }
    Point& operator[](std::size_t j) { return centroids[j]; }

    bool operator==(const CentroidSet&) const = default;
};

/// Cluster labels, one per record, each in [0, k).
using Assignment = std::vector<std::size_t>;

inline double squared_distance(std::span<const double> x, std::span<const double> c) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - c[i];
        s += diff * diff;
    }
    return s;
}

inline double euclidean(std::span<const double> x, std::span<const double> c) {
    if (x.size() != c.size())
        throw DimensionMismatchError(x.size(), c.size());
    return std::sqrt(squared_distance(x, c));
}

inline double euclidean(const Point& x, const Point& c) {
    return euclidean(std::span<const double>(x), std::span<const double>(c));
}

/// Coordinate-wise arithmetic mean over all records.
inline Point mean_point(const DataMatrix& m) {
    Point mean(m.cols, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            mean[c] += m(r, c);
    for (double& v : mean)
        v /= static_cast<double>(m.rows);
    return mean;
}

/// Per attribute, (min + max) / 2 over the given rows of m.
inline Point midrange_point(const DataMatrix& m, std::span<const std::size_t> row_indices) {
    if (row_indices.empty())
        throw EmptyPartitionError();
    Point lo(m.row(row_indices.front()).begin(), m.row(row_indices.front()).end());
    Point hi = lo;
    for (std::size_t idx : row_indices) {
        const auto row = m.row(idx);
        for (std::size_t c = 0; c < m.cols; ++c) {
            lo[c] = std::min(lo[c], row[c]);
            hi[c] = std::max(hi[c], row[c]);
        }
    }
    Point mid(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c)
        mid[c] = (lo[c] + hi[c]) / 2.0;
    return mid;
}

/// Sum of squared Euclidean distances from each record to its assigned
/// centroid. Centroids are taken as given, not recomputed, so arbitrary
/// (including initial) centroid sets can be scored. Accumulates row-major
/// for bit-stable reproducibility.
inline double sse(const DataMatrix& m, const CentroidSet& cs, const Assignment& a) {
    if (cs.dim() != m.cols)
        throw DimensionMismatchError(m.cols, cs.dim());
    if (a.size() != m.rows)
        throw DimensionMismatchError(m.rows, a.size());
    double total = 0.0;
    for (std::size_t r = 0; r < m.rows; ++r) {
        if (a[r] >= cs.k())
            throw IndexOutOfRangeError("assignment label " + std::to_string(a[r]) +
                                       " out of range for k = " + std::to_string(cs.k()));
        total += squared_distance(m.row(r), cs[a[r]]);
    }
    return total;
}

}  // namespace kmseed
