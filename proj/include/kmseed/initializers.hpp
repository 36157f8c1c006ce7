#pragma once

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kmseed/dataset.hpp"
#include "kmseed/errors.hpp"
#include "kmseed/matrix.hpp"
#include "kmseed/metrics.hpp"
#include "kmseed/rng.hpp"

namespace kmseed {

enum class Strategy { dp, origin_point, random_macqueen, variance_aldaoud };

/// Stable identifiers used by CLI flags and report files.
inline std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::dp: return "dp";
        case Strategy::origin_point: return "origin";
        case Strategy::random_macqueen: return "random";
        case Strategy::variance_aldaoud: return "variance";
    }
    return "?";
}

inline Strategy strategy_from_string(const std::string& s) {
    if (s == "dp") return Strategy::dp;
    if (s == "origin") return Strategy::origin_point;
    if (s == "random") return Strategy::random_macqueen;
    if (s == "variance") return Strategy::variance_aldaoud;
    throw InvalidArgumentError("unknown initializer: " + s);
}

/// Where the dp initializer computes its sort distances: against the mean
/// of the normalized data (default) or of the raw data (sensitivity knob).
enum class DistanceSource { normalized, raw };

struct InitSpec {
    Strategy strategy = Strategy::dp;
    std::size_t k = 2;
    std::optional<std::uint64_t> seed;                       // random only
    NormMethod normalization = NormMethod::max_abs;          // dp only
    DistanceSource distance_source = DistanceSource::normalized;  // dp only

    void validate() const {
        if (k < 2)
            throw InvalidArgumentError("k must be at least 2");
        if ((strategy == Strategy::random_macqueen) != seed.has_value())
            throw InvalidArgumentError(
                "a seed is required exactly when the random initializer is selected");
    }
};

/// Balanced contiguous split of n sorted positions into k blocks:
/// floor(n/k) each, with the first n mod k blocks one element larger.
/// Block order follows sort order, so the first block holds the nearest
/// points.
inline std::vector<std::size_t> partition_sizes(std::size_t n, std::size_t k) {
    if (k > n)
        throw KExceedsNError(k, n);
    if (k == 0)
        throw InvalidArgumentError("k must be positive");
    std::vector<std::size_t> sizes(k, n / k);
    for (std::size_t i = 0; i < n % k; ++i)
        ++sizes[i];
    return sizes;
}

/// Contiguous, disjoint blocks over sorted positions [0, n).
struct PartitionPlan {
    std::size_t k = 0;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<std::size_t>> blocks;  // positions, in sorted order
};

inline PartitionPlan make_partition_plan(std::size_t n, std::size_t k) {
    PartitionPlan plan;
    plan.k = k;
    plan.sizes = partition_sizes(n, k);
    plan.blocks.reserve(k);
    std::size_t pos = 0;
    for (std::size_t size : plan.sizes) {
        std::vector<std::size_t> block(size);
        std::iota(block.begin(), block.end(), pos);
        pos += size;
        plan.blocks.push_back(std::move(block));
    }
    return plan;
}

namespace detail {

/// Row indices in ascending key order; stable, so ties keep input order.
inline std::vector<std::size_t> sorted_order(const std::vector<double>& keys) {
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    return order;
}

/// Distance of every row of m to the given point.
inline std::vector<double> distances_to(const DataMatrix& m, const Point& p) {
    std::vector<double> d(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        d[r] = euclidean(m.row(r), std::span<const double>(p));
    return d;
}

/// The rows of m named by `order[pos .. pos+size)`.
inline std::vector<std::size_t> block_rows(const std::vector<std::size_t>& order,
                                           std::size_t pos, std::size_t size) {
    return {order.begin() + static_cast<std::ptrdiff_t>(pos),
            order.begin() + static_cast<std::ptrdiff_t>(pos + size)};
}

inline Point block_mean(const DataMatrix& m, const std::vector<std::size_t>& rows) {
    Point mean(m.cols, 0.0);
    for (std::size_t r : rows)
        for (std::size_t c = 0; c < m.cols; ++c)
            mean[c] += m(r, c);
    for (double& v : mean)
        v /= static_cast<double>(rows.size());
    return mean;
}

/// Coordinate-wise median; even-sized blocks average the two middle values.
inline Point block_median(const DataMatrix& m, const std::vector<std::size_t>& rows) {
    Point med(m.cols);
    std::vector<double> column(rows.size());
    for (std::size_t c = 0; c < m.cols; ++c) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            column[i] = m(rows[i], c);
        std::sort(column.begin(), column.end());
        const std::size_t half = rows.size() / 2;
        med[c] = (rows.size() % 2 == 1) ? column[half]
                                        : (column[half - 1] + column[half]) / 2.0;
    }
    return med;
}

}  // namespace detail

/// Result of the distance-partition initializer. Centroids live in
/// normalized space; params invert them back to raw space. sorted_order is
/// the row permutation in ascending distance to the reference point.
struct DpInit {
    CentroidSet centroids;
    NormalizationParams params;
    std::vector<std::size_t> sorted_order;
};

/// Distance-partition initializer: normalize, take the per-attribute mean
/// of the normalized data as reference point, stable-sort records by their
/// Euclidean distance to it, cut the sorted order into k balanced
/// contiguous blocks, and seed each cluster with its block's midrange.
/// Deterministic: identical input gives identical output.
inline DpInit init_dp(const DataMatrix& m, const InitSpec& spec) {
    if (spec.k > m.rows)
        throw KExceedsNError(spec.k, m.rows);

    DpInit out;
    auto [normalized, params] = normalize(m, spec.normalization);
    out.params = std::move(params);

    const DataMatrix& key_space =
        (spec.distance_source == DistanceSource::normalized) ? normalized : m;
    const std::vector<double> keys = detail::distances_to(key_space, mean_point(key_space));
    out.sorted_order = detail::sorted_order(keys);

    std::size_t pos = 0;
    for (std::size_t size : partition_sizes(m.rows, spec.k)) {
        const auto rows = detail::block_rows(out.sorted_order, pos, size);
        pos += size;
        out.centroids.centroids.push_back(midrange_point(normalized, rows));
    }
    return out;
}

/// Origin-point baseline: sort raw records by distance to the all-zeros
/// origin, split into balanced contiguous blocks, seed each cluster with
/// its block's per-attribute mean. No normalization.
inline CentroidSet init_origin_point(const DataMatrix& m, std::size_t k) {
    if (k > m.rows)
        throw KExceedsNError(k, m.rows);
    const std::vector<double> keys = detail::distances_to(m, Point(m.cols, 0.0));
    const auto order = detail::sorted_order(keys);
    CentroidSet cs;
    std::size_t pos = 0;
    for (std::size_t size : partition_sizes(m.rows, k)) {
        cs.centroids.push_back(detail::block_mean(m, detail::block_rows(order, pos, size)));
        pos += size;
    }
    return cs;
}

/// Random baseline: k distinct rows sampled uniformly without replacement,
/// used verbatim as centroids. Same seed, same output.
inline CentroidSet init_random_macqueen(const DataMatrix& m, std::size_t k,
                                        std::uint64_t seed) {
    if (k > m.rows)
        throw KExceedsNError(k, m.rows);
    SplitMix64 rng(seed);
    CentroidSet cs;
    for (std::size_t r : rng.sample_without_replacement(m.rows, k)) {
        const auto row = m.row(r);
        cs.centroids.emplace_back(row.begin(), row.end());
    }
    return cs;
}

/// Variance baseline: stable-sort rows by the attribute with the greatest
/// population variance (ties to the lowest attribute index), split into
/// balanced contiguous blocks, seed each cluster with its block's
/// coordinate-wise median.
inline CentroidSet init_variance_aldaoud(const DataMatrix& m, std::size_t k) {
    if (k > m.rows)
        throw KExceedsNError(k, m.rows);
    const AttributeStats stats = compute_stats(m);
    std::size_t best_attr = 0;
    for (std::size_t c = 1; c < m.cols; ++c)
        if (stats.variance[c] > stats.variance[best_attr])
            best_attr = c;
    std::vector<double> keys(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        keys[r] = m(r, best_attr);
    const auto order = detail::sorted_order(keys);
    CentroidSet cs;
    std::size_t pos = 0;
    for (std::size_t size : partition_sizes(m.rows, k)) {
        cs.centroids.push_back(detail::block_median(m, detail::block_rows(order, pos, size)));
        pos += size;
    }
    return cs;
}

}  // namespace kmseed
