#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "kmseed/initializers.hpp"
#include "kmseed/lloyd.hpp"
#include "kmseed/matrix.hpp"
#include "kmseed/metrics.hpp"
#include "kmseed/oracle.hpp"
#include "kmseed/rng.hpp"

namespace kmseed::selftest {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

/// Random matrix on a quarter-integer grid. Quantized coordinates make
/// distance ties exact rather than within-rounding-error, so tie-break
/// behavior is exercised without false near-tie mismatches between the
/// squared-distance and plain-distance code paths.
inline DataMatrix random_matrix(SplitMix64& rng, std::size_t n, std::size_t d) {
    std::vector<double> values(n * d);
    for (double& v : values)
        v = (static_cast<double>(rng.below(161)) - 80.0) / 4.0;
    return DataMatrix(n, d, std::move(values));
}

inline CentroidSet random_centroids(SplitMix64& rng, const DataMatrix& m, std::size_t k) {
    CentroidSet cs;
    for (std::size_t r : rng.sample_without_replacement(m.rows, k)) {
        const auto row = m.row(r);
        cs.centroids.emplace_back(row.begin(), row.end());
    }
    // Nudge half the centroids off the data grid, still quantized.
    for (std::size_t j = 0; j < cs.k(); ++j)
        if (rng.below(2) == 0)
            for (double& c : cs[j])
                c += (static_cast<double>(rng.below(5)) - 2.0) / 4.0;
    return cs;
}

/// Relabels to first-occurrence order so partitions compare independent of
/// cluster numbering.
inline Assignment canonical_labels(const Assignment& a, std::size_t k) {
    std::vector<std::size_t> remap(k, k);
    Assignment out(a.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (remap[a[i]] == k)
            remap[a[i]] = next++;
        out[i] = remap[a[i]];
    }
    return out;
}

inline std::vector<CentroidSet> all_initializers(const DataMatrix& m, std::size_t k,
                                                 std::uint64_t seed) {
    InitSpec spec;
    spec.strategy = Strategy::dp;
    spec.k = k;
    std::vector<CentroidSet> inits;
    // dp centroids live in normalized space; move them back to raw space so
    // every initializer seeds the same (raw) Lloyd run.
    const DpInit dp = init_dp(m, spec);
    inits.push_back(inverse_transform(dp.centroids, dp.params));
    inits.push_back(init_origin_point(m, k));
    inits.push_back(init_random_macqueen(m, k, seed));
    inits.push_back(init_variance_aldaoud(m, k));
    return inits;
}

}  // namespace detail

/// Lloyd's SSE trace is non-increasing on random instances, for every
/// initializer. Tolerance is a pure floating-point guard; the property is
/// exact in real arithmetic.
inline CheckResult check_sse_monotonicity(std::size_t instances, std::uint64_t seed = 1) {
    SplitMix64 rng(seed);
    std::size_t violations = 0;
    std::size_t sequences = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t k = 2 + rng.below(5);                  // 2..6
        const std::size_t n = k + rng.below(200 - k + 1);        // k..200
        const std::size_t d = 1 + rng.below(10);                 // 1..10
        const DataMatrix m = detail::random_matrix(rng, n, d);
        for (const CentroidSet& init : detail::all_initializers(m, k, seed ^ i)) {
            const ClusteringResult res = run_lloyd(m, init);
            ++sequences;
            for (std::size_t t = 1; t < res.sse_trace.size(); ++t) {
                const double prev = res.sse_trace[t - 1];
                if (res.sse_trace[t] > prev + 1e-10 * std::max(1.0, prev))
                    ++violations;
            }
        }
    }
    std::ostringstream detail;
    detail << instances << " instances, " << sequences << " traces, " << violations
           << " violations";
    return {"sse_monotonicity", violations == 0, detail.str()};
}

/// assign matches the oracle's naive scan exactly, and Lloyd never beats
/// the exhaustive optimum (and matches it when started at the optimal
/// partition).
inline CheckResult check_oracle_agreement(std::size_t instances, std::uint64_t seed = 2) {
    SplitMix64 rng(seed);
    std::size_t assign_mismatches = 0;
    std::size_t bound_violations = 0;
    std::size_t equality_failures = 0;
    std::size_t optimal_starts = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t k = 2 + rng.below(2);            // 2..3
        const std::size_t n = k + rng.below(8 - k + 1);    // k..8
        const std::size_t d = 1 + rng.below(2);            // 1..2
        const DataMatrix m = detail::random_matrix(rng, n, d);

        const CentroidSet probe = detail::random_centroids(rng, m, k);
        if (assign(m, probe) != oracle::naive_assign(m, probe))
            ++assign_mismatches;

        const oracle::OracleResult best = oracle::brute_force(m, k);
        for (const CentroidSet& init : detail::all_initializers(m, k, seed ^ i)) {
            const Assignment initial = assign(m, init);
            const ClusteringResult res = run_lloyd(m, init);
            if (res.sse_model_space < best.optimal_sse - 1e-9)
                ++bound_violations;
            if (detail::canonical_labels(initial, k) ==
                detail::canonical_labels(best.optimal_assignment, k)) {
                ++optimal_starts;
                if (std::abs(res.sse_model_space - best.optimal_sse) > 1e-9)
                    ++equality_failures;
            }
        }
    }
    std::ostringstream detail;
    detail << instances << " instances; " << assign_mismatches << " assign mismatches, "
           << bound_violations << " bound violations, " << equality_failures << "/"
           << optimal_starts << " equality failures at optimal starts";
    return {"oracle_agreement",
            assign_mismatches == 0 && bound_violations == 0 && equality_failures == 0 &&
                optimal_starts > 0,
            detail.str()};
}

/// The four hand-computed fixtures, to 1e-9.
inline CheckResult check_fixtures() {
    constexpr double kTol = 1e-9;
    std::vector<std::string> failures;

    {
        const auto m = DataMatrix::from_rows({{1}, {2}, {3}, {4}, {10}, {12}});
        InitSpec spec;
        spec.strategy = Strategy::dp;
        spec.k = 2;
        const DpInit dp = init_dp(m, spec);
        const double c0 = dp.centroids[0][0], c1 = dp.centroids[1][0];
        if (std::abs(c0 - 0.25) > kTol || std::abs(c1 - 13.0 / 24.0) > kTol)
            failures.push_back("dp init");
    }
    {
        const auto m = DataMatrix::from_rows({{1}, {2}, {3}, {4}, {10}, {12}});
        const CentroidSet cs = init_origin_point(m, 2);
        if (std::abs(cs[0][0] - 2.0) > kTol || std::abs(cs[1][0] - 26.0 / 3.0) > kTol)
            failures.push_back("origin init");
    }
    {
        const auto m = DataMatrix::from_rows({{1, 10}, {2, 20}, {3, 30}, {4, 40}});
        const CentroidSet cs = init_variance_aldaoud(m, 2);
        if (std::abs(cs[0][0] - 1.5) > kTol || std::abs(cs[0][1] - 15.0) > kTol ||
            std::abs(cs[1][0] - 3.5) > kTol || std::abs(cs[1][1] - 35.0) > kTol)
            failures.push_back("variance init");
    }
    {
        const auto m = DataMatrix::from_rows({{1}, {2}, {10}, {11}});
        CentroidSet init;
        init.centroids = {{1.0}, {11.0}};
        const ClusteringResult res = run_lloyd(m, init);
        if (std::abs(res.centroids[0][0] - 1.5) > kTol ||
            std::abs(res.centroids[1][0] - 10.5) > kTol ||
            std::abs(res.sse_model_space - 1.0) > kTol ||
            res.converged != Convergence::membership_stable)
            failures.push_back("lloyd run");
    }

    std::string detail = "dp / origin / variance / lloyd fixtures";
    if (!failures.empty()) {
        detail = "failed:";
        for (const auto& f : failures)
            detail += " " + f;
    }
    return {"hand_fixtures", failures.empty(), detail};
}

/// Balanced-partition invariants over random sizes up to n = 10,000.
inline CheckResult check_partition_plan(std::size_t trials, std::uint64_t seed = 3) {
    SplitMix64 rng(seed);
    std::size_t violations = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::size_t n = 1 + rng.below(10000);
        const std::size_t k = 1 + rng.below(n);
        const PartitionPlan plan = make_partition_plan(n, k);
        std::size_t total = 0, lo = n, hi = 0, next_pos = 0;
        bool ok = plan.k == k && plan.sizes.size() == k && plan.blocks.size() == k;
        for (std::size_t j = 0; ok && j < k; ++j) {
            const auto& block = plan.blocks[j];
            ok = !block.empty() && block.size() == plan.sizes[j];
            for (std::size_t pos : block)
                ok = ok && pos == next_pos++;
            total += plan.sizes[j];
            lo = std::min(lo, plan.sizes[j]);
            hi = std::max(hi, plan.sizes[j]);
        }
        if (!(ok && total == n && next_pos == n && hi - lo <= 1))
            ++violations;
    }
    return {"partition_plan", violations == 0,
            std::to_string(trials) + " random (n, k) pairs, " + std::to_string(violations) +
                " violations"};
}

inline std::vector<CheckResult> run_all(std::size_t monotonicity_instances = 100,
                                        std::size_t oracle_instances = 60,
                                        std::size_t partition_trials = 500) {
    return {
        check_sse_monotonicity(monotonicity_instances),
        check_oracle_agreement(oracle_instances),
        check_fixtures(),
        check_partition_plan(partition_trials),
    };
}

}  // namespace kmseed::selftest
