#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kmseed/errors.hpp"
#include "kmseed/matrix.hpp"
#include "kmseed/metrics.hpp"

namespace kmseed {

/// What to do when a cluster loses all members during an update. Keeping
/// the previous centroid preserves k and determinism; reseeding moves the
/// empty centroid onto the point farthest from its assigned centroid.
enum class EmptyClusterPolicy { keep_previous, reseed_farthest };

struct LloydConfig {
    std::size_t max_iterations = 300;
    EmptyClusterPolicy empty_cluster_policy = EmptyClusterPolicy::keep_previous;

    void validate() const {
        if (max_iterations < 1)
            throw InvalidArgumentError("max_iterations must be at least 1");
    }
};

enum class Convergence { membership_stable, max_iter_reached };

inline std::string to_string(Convergence c) {
    return c == Convergence::membership_stable ? "membership_stable" : "max_iter_reached";
}

struct ClusteringResult {
    CentroidSet centroids;        // model space
    Assignment assignment;
    double sse_model_space = 0.0;
    double sse_raw_space = 0.0;   // equals model space until a caller rescores
    std::size_t iterations = 0;
    Convergence converged = Convergence::membership_stable;
    std::size_t empty_cluster_events = 0;
    // SSE after the initial assign, then after every update and every
    // reassign; non-increasing by construction of the algorithm.
    std::vector<double> sse_trace;
};

/// Labels each row with its nearest centroid by Euclidean distance, ties to
/// the lowest centroid index. Squared distances are compared internally;
/// the ordering is identical.
inline Assignment assign(const DataMatrix& m, const CentroidSet& cs) {
    if (cs.k() == 0)
        throw InvalidArgumentError("empty centroid set");
    if (cs.dim() != m.cols)
        throw DimensionMismatchError(m.cols, cs.dim());
    Assignment labels(m.rows, 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        const auto row = m.row(r);
        double best = squared_distance(row, cs[0]);
        std::size_t best_j = 0;
        for (std::size_t j = 1; j < cs.k(); ++j) {
            const double d = squared_distance(row, cs[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        labels[r] = best_j;
    }
    return labels;
}

/// Moves each centroid to the arithmetic mean of its members. A cluster
/// with no members keeps its previous centroid, or is reseeded per policy.
inline CentroidSet update_centroids(const DataMatrix& m, const Assignment& a, std::size_t k,
                                    const CentroidSet& previous,
                                    EmptyClusterPolicy policy = EmptyClusterPolicy::keep_previous,
                                    std::size_t* empty_events = nullptr) {
    if (previous.k() != k || previous.dim() != m.cols)
        throw DimensionMismatchError(m.cols, previous.dim());
    if (a.size() != m.rows)
        throw DimensionMismatchError(m.rows, a.size());

    CentroidSet next;
    next.centroids.assign(k, Point(m.cols, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        if (a[r] >= k)
            throw IndexOutOfRangeError("assignment label " + std::to_string(a[r]) +
                                       " out of range for k = " + std::to_string(k));
        ++counts[a[r]];
        const auto row = m.row(r);
        for (std::size_t c = 0; c < m.cols; ++c)
            next[a[r]][c] += row[c];
    }
    std::vector<bool> reseed_taken(m.rows, false);
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] == 0) {
            if (empty_events)
                ++*empty_events;
            if (policy == EmptyClusterPolicy::keep_previous) {
                next[j] = previous[j];
            } else {
                // Farthest point from its currently assigned centroid; each
                // empty cluster takes a distinct row.
                std::size_t far_row = 0;
                double far_d = -1.0;
                for (std::size_t r = 0; r < m.rows; ++r) {
                    if (reseed_taken[r])
                        continue;
                    const double d = squared_distance(m.row(r), previous[a[r]]);
                    if (d > far_d) {
                        far_d = d;
                        far_row = r;
                    }
                }
                reseed_taken[far_row] = true;
                const auto row = m.row(far_row);
                next[j].assign(row.begin(), row.end());
            }
        } else {
            for (std::size_t c = 0; c < m.cols; ++c)
                next[j][c] /= static_cast<double>(counts[j]);
        }
    }
    return next;
}

/// Lloyd iteration: alternate assignment and mean update until membership
/// stops changing or the iteration cap is hit. Deterministic for
/// deterministic inputs.
inline ClusteringResult run_lloyd(const DataMatrix& m, const CentroidSet& init,
                                  const LloydConfig& cfg = {}) {
    cfg.validate();
    if (init.dim() != m.cols)
        throw DimensionMismatchError(m.cols, init.dim());
    if (init.k() > m.rows)
        throw KExceedsNError(init.k(), m.rows);

    ClusteringResult result;
    CentroidSet centroids = init;
    Assignment labels = assign(m, centroids);
    result.sse_trace.push_back(sse(m, centroids, labels));

    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        centroids = update_centroids(m, labels, init.k(), centroids,
                                     cfg.empty_cluster_policy, &result.empty_cluster_events);
        result.sse_trace.push_back(sse(m, centroids, labels));
        Assignment next = assign(m, centroids);
        result.sse_trace.push_back(sse(m, centroids, next));
        result.iterations = iter;
        if (next == labels) {
            result.converged = Convergence::membership_stable;
            labels = std::move(next);
            break;
        }
        labels = std::move(next);
        if (iter == cfg.max_iterations)
            result.converged = Convergence::max_iter_reached;
    }

    result.centroids = std::move(centroids);
    result.assignment = std::move(labels);
    result.sse_model_space = result.sse_trace.back();
    result.sse_raw_space = result.sse_model_space;
    return result;
}

}  // namespace kmseed
