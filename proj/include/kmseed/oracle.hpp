#pragma once

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <vector>

#include "kmseed/errors.hpp"
#include "kmseed/matrix.hpp"
#include "kmseed/metrics.hpp"

namespace kmseed {

/// Brute-force ground truth for tests. Deliberately naive and independent
/// of the engine's code paths; never used on real datasets.
namespace oracle {

inline constexpr std::size_t kMaxRows = 12;

struct OracleResult {
    double optimal_sse = 0.0;
    Assignment optimal_assignment;
    std::uint64_t enumerated_count = 0;  // surjective label vectors examined
};

/// Per-row full scan over all centroids with plain Euclidean distance (no
/// squared-distance shortcut), ties to the lowest index.
inline Assignment naive_assign(const DataMatrix& m, const CentroidSet& cs) {
    if (cs.k() == 0)
        throw InvalidArgumentError("empty centroid set");
    if (cs.dim() != m.cols)
        throw DimensionMismatchError(m.cols, cs.dim());
    Assignment labels(m.rows, 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        double best = euclidean(m.row(r), std::span<const double>(cs[0]));
        std::size_t best_j = 0;
        for (std::size_t j = 1; j < cs.k(); ++j) {
            const double d = euclidean(m.row(r), std::span<const double>(cs[j]));
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        labels[r] = best_j;
    }
    return labels;
}

namespace detail {

inline double labeling_sse(const DataMatrix& m, const Assignment& labels, std::size_t k) {
    // Centroids are the cluster means of this labeling.
    std::vector<double> sums(k * m.cols, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        ++counts[labels[r]];
        for (std::size_t c = 0; c < m.cols; ++c)
            sums[labels[r] * m.cols + c] += m(r, c);
    }
    double total = 0.0;
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            const double mean = sums[labels[r] * m.cols + c] /
                                static_cast<double>(counts[labels[r]]);
            const double diff = m(r, c) - mean;
            total += diff * diff;
        }
    }
    return total;
}

}  // namespace detail

/// Enumerates every label vector with all k clusters non-empty (symmetric
/// relabelings are not deduplicated), scores each against its cluster
/// means, and returns the minimum. Ties go to the lexicographically
/// smallest label vector, which is the first one found in odometer order.
inline OracleResult brute_force(const DataMatrix& m, std::size_t k) {
    if (m.rows > kMaxRows)
        throw InstanceTooLargeError(m.rows, kMaxRows);
    if (k > m.rows)
        throw KExceedsNError(k, m.rows);
    if (k == 0)
        throw InvalidArgumentError("k must be positive");

    OracleResult result;
    result.optimal_sse = -1.0;
    Assignment labels(m.rows, 0);
    std::vector<std::size_t> counts(k, 0);
    counts[0] = m.rows;

    for (;;) {
        const bool surjective =
            std::none_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 0; });
        if (surjective) {
            ++result.enumerated_count;
            const double total = detail::labeling_sse(m, labels, k);
            if (result.optimal_sse < 0.0 || total < result.optimal_sse) {
                result.optimal_sse = total;
                result.optimal_assignment = labels;
            }
        }
        // Odometer increment, rightmost digit fastest: lexicographic order.
        std::size_t pos = m.rows;
        while (pos > 0) {
            --pos;
            --counts[labels[pos]];
            if (labels[pos] + 1 < k) {
                ++labels[pos];
                ++counts[labels[pos]];
                break;
            }
            labels[pos] = 0;
            ++counts[0];
            if (pos == 0)
                return result;
        }
    }
}

}  // namespace oracle
}  // namespace kmseed
