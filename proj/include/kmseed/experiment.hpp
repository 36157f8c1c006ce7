#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmseed/dataset.hpp"
#include "kmseed/errors.hpp"
#include "kmseed/initializers.hpp"
#include "kmseed/lloyd.hpp"
#include "kmseed/matrix.hpp"
#include "kmseed/metrics.hpp"
#include "kmseed/rng.hpp"
#include "kmseed/version.hpp"

namespace kmseed {

/// The space Lloyd runs in. Model space is the (possibly normalized) space
/// clustering happens in; raw space is original attribute units. SSE values
/// are only comparable within one space.
enum class Space { model_space, raw_space };

inline std::string to_string(Space s) {
    return s == Space::model_space ? "model" : "raw";
}

/// The dp initializer clusters normalized data; the three baselines are
/// described on raw data. Both SSE fields are always reported either way.
inline Space default_space(Strategy s) {
    return s == Strategy::dp ? Space::model_space : Space::raw_space;
}

struct ExperimentSpec {
    std::vector<std::string> datasets;        // registry names or CSV paths
    std::vector<Strategy> initializers;
    std::vector<std::size_t> ks;
    NormMethod normalization = NormMethod::max_abs;
    LloydConfig lloyd;
    std::vector<std::uint64_t> seeds;         // random initializer trials
    std::optional<Space> forced_space;        // unset: per-initializer default
    std::filesystem::path data_dir = "data";

    void validate() const {
        if (datasets.empty() || initializers.empty() || ks.empty())
            throw InvalidArgumentError("datasets, initializers, and k lists must be non-empty");
        const bool wants_random =
            std::find(initializers.begin(), initializers.end(),
                      Strategy::random_macqueen) != initializers.end();
        if (wants_random && seeds.empty())
            throw InvalidArgumentError("the random initializer requires a seed list");
        for (std::size_t k : ks)
            if (k < 2)
                throw InvalidArgumentError("k must be at least 2");
        lloyd.validate();
    }
};

/// Default seed list for the random initializer: 0..29.
inline std::vector<std::uint64_t> default_seed_list() {
    std::vector<std::uint64_t> seeds(30);
    for (std::size_t i = 0; i < seeds.size(); ++i)
        seeds[i] = i;
    return seeds;
}

struct CellResult {
    std::string dataset;
    Strategy initializer = Strategy::dp;
    std::size_t k = 0;
    std::optional<std::uint64_t> seed;
    Space space = Space::raw_space;
    double sse_model_space = 0.0;
    double sse_raw_space = 0.0;
    std::size_t iterations = 0;
    Convergence converged = Convergence::membership_stable;
    std::size_t empty_cluster_events = 0;
};

struct FailedCell {
    std::string dataset;
    Strategy initializer = Strategy::dp;
    std::size_t k = 0;
    std::optional<std::uint64_t> seed;
    std::string error;
};

struct ExperimentReport {
    int schema_version = kReportSchemaVersion;
    std::string tool_version = kVersion;
    std::string prng_name = SplitMix64::kName;
    std::vector<CellResult> cells;
    std::vector<FailedCell> failed_cells;
    // Volatile measurements live apart from the cells so deterministic
    // reruns emit byte-identical cell blocks.
    std::vector<double> wall_ms;  // parallel to cells
    std::string generated_at;     // ISO 8601 UTC, filled on emission
};

namespace detail {

struct LoadedDataset {
    std::string name;
    DataMatrix raw;
};

inline LoadedDataset resolve_dataset(const std::string& ref,
                                     const std::filesystem::path& data_dir) {
    if (const DatasetDescriptor* desc = find_dataset(ref))
        return {desc->name, load_registry_dataset(*desc, data_dir)};
    // Anything else is a path to a plain numeric CSV.
    return {std::filesystem::path(ref).stem().string(), load_csv(ref)};
}

}  // namespace detail

/// Runs one grid cell: initialize in the requested space, run Lloyd there,
/// and score SSE in both model and raw space.
inline CellResult run_cell(const DataMatrix& raw, const std::string& dataset_name,
                           Strategy strategy, std::size_t k,
                           std::optional<std::uint64_t> seed, Space space,
                           NormMethod normalization, const LloydConfig& lloyd_cfg) {
    CellResult cell;
    cell.dataset = dataset_name;
    cell.initializer = strategy;
    cell.k = k;
    cell.seed = seed;
    cell.space = space;

    CentroidSet init;
    std::optional<std::pair<DataMatrix, NormalizationParams>> normalized;
    if (strategy == Strategy::dp) {
        InitSpec spec;
        spec.strategy = Strategy::dp;
        spec.k = k;
        spec.normalization = normalization;
        DpInit dp = init_dp(raw, spec);
        auto renormalized = normalize(raw, normalization);
        normalized.emplace(std::move(renormalized.first), std::move(dp.params));
        init = (space == Space::model_space)
                   ? std::move(dp.centroids)
                   : inverse_transform(dp.centroids, normalized->second);
    } else {
        if (space == Space::model_space)
            normalized.emplace(normalize(raw, normalization));
        const DataMatrix& source =
            (space == Space::model_space) ? normalized->first : raw;
        switch (strategy) {
            case Strategy::origin_point:
                init = init_origin_point(source, k);
                break;
            case Strategy::random_macqueen:
                if (!seed)
                    throw InvalidArgumentError("the random initializer requires a seed");
                init = init_random_macqueen(source, k, *seed);
                break;
            case Strategy::variance_aldaoud:
                init = init_variance_aldaoud(source, k);
                break;
            case Strategy::dp:
                break;  // handled above
        }
    }

    const DataMatrix& model = (space == Space::model_space) ? normalized->first : raw;
    ClusteringResult result = run_lloyd(model, init, lloyd_cfg);
    cell.sse_model_space = result.sse_model_space;
    cell.iterations = result.iterations;
    cell.converged = result.converged;
    cell.empty_cluster_events = result.empty_cluster_events;
    if (space == Space::model_space && normalized->second.method != NormMethod::none) {
        const CentroidSet raw_centroids =
            inverse_transform(result.centroids, normalized->second);
        cell.sse_raw_space = sse(raw, raw_centroids, result.assignment);
    } else {
        cell.sse_raw_space = result.sse_model_space;
    }
    return cell;
}

/// Runs the whole grid. Failed cells are recorded, never abort the run.
/// Cell order is the deterministic nesting dataset > initializer > k > seed.
inline ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentReport report;

    for (const std::string& dataset_ref : spec.datasets) {
        std::optional<detail::LoadedDataset> loaded;
        std::string load_error;
        try {
            loaded.emplace(detail::resolve_dataset(dataset_ref, spec.data_dir));
        } catch (const std::exception& e) {
            load_error = e.what();
        }
        for (Strategy strategy : spec.initializers) {
            const std::vector<std::optional<std::uint64_t>> seeds =
                (strategy == Strategy::random_macqueen)
                    ? [&] {
                          std::vector<std::optional<std::uint64_t>> s;
                          for (std::uint64_t v : spec.seeds) s.emplace_back(v);
                          return s;
                      }()
                    : std::vector<std::optional<std::uint64_t>>{std::nullopt};
            for (std::size_t k : spec.ks) {
                for (const auto& seed : seeds) {
                    const Space space = spec.forced_space.value_or(default_space(strategy));
                    if (!loaded) {
                        report.failed_cells.push_back(
                            {dataset_ref, strategy, k, seed, load_error});
                        continue;
                    }
                    const auto start = std::chrono::steady_clock::now();
                    try {
                        report.cells.push_back(run_cell(loaded->raw, loaded->name, strategy,
                                                        k, seed, space, spec.normalization,
                                                        spec.lloyd));
                        const auto stop = std::chrono::steady_clock::now();
                        report.wall_ms.push_back(
                            std::chrono::duration<double, std::milli>(stop - start).count());
                    } catch (const std::exception& e) {
                        report.failed_cells.push_back(
                            {loaded->name, strategy, k, seed, e.what()});
                    }
                }
            }
        }
    }
    return report;
}

enum class CompareMode {
    same_space,  // refuse to rank across spaces (default)
    force_raw,   // rank everything by raw-space SSE
    own_space,   // rank each method by its own policy space, flagged
};

struct MethodScore {
    Strategy initializer = Strategy::dp;
    Space space = Space::raw_space;
    double sse = 0.0;       // deterministic: the cell value; random: best over seeds
    double mean_sse = 0.0;  // over seeds (equals sse for deterministic methods)
    double stddev_sse = 0.0;
    std::size_t trials = 1;
};

struct MethodRanking {
    std::string dataset;
    std::size_t k = 0;
    bool mixed_spaces = false;
    std::vector<MethodScore> ranking;  // ascending SSE
};

struct ComparisonSummary {
    CompareMode mode = CompareMode::same_space;
    std::vector<MethodRanking> entries;
};

/// Ranks initializers per (dataset, k). The random initializer is
/// represented by its best seed, with mean and spread alongside. Mixing
/// spaces is an error unless raw-space comparison is forced or own-space
/// ranking is requested explicitly, in which case the mix is flagged.
inline ComparisonSummary compare_methods(const ExperimentReport& report,
                                         CompareMode mode = CompareMode::same_space) {
    ComparisonSummary summary;
    summary.mode = mode;

    std::map<std::pair<std::string, std::size_t>, std::map<Strategy, std::vector<const CellResult*>>>
        groups;
    std::vector<std::pair<std::string, std::size_t>> group_order;
    for (const CellResult& cell : report.cells) {
        auto key = std::make_pair(cell.dataset, cell.k);
        if (groups.find(key) == groups.end())
            group_order.push_back(key);
        groups[key][cell.initializer].push_back(&cell);
    }

    for (const auto& key : group_order) {
        MethodRanking entry;
        entry.dataset = key.first;
        entry.k = key.second;
        const auto& by_method = groups[key];

        std::optional<Space> common_space;
        for (const auto& [strategy, cells] : by_method) {
            for (const CellResult* cell : cells) {
                if (!common_space)
                    common_space = cell->space;
                else if (*common_space != cell->space)
                    entry.mixed_spaces = true;
            }
        }
        if (entry.mixed_spaces && mode == CompareMode::same_space)
            throw IncomparableCellsError(
                "cells for " + entry.dataset + "/k=" + std::to_string(entry.k) +
                " span both model and raw space; force raw-space comparison to rank them");

        for (const auto& [strategy, cells] : by_method) {
            MethodScore score;
            score.initializer = strategy;
            score.space = cells.front()->space;
            score.trials = cells.size();
            double best = 0.0, sum = 0.0, sum_sq = 0.0;
            bool first = true;
            for (const CellResult* cell : cells) {
                const double v = (mode == CompareMode::force_raw) ? cell->sse_raw_space
                                 : (cell->space == Space::model_space) ? cell->sse_model_space
                                                                       : cell->sse_raw_space;
                if (first || v < best) best = v;
                first = false;
                sum += v;
                sum_sq += v * v;
            }
            const double n = static_cast<double>(cells.size());
            score.sse = best;
            score.mean_sse = sum / n;
            const double var = std::max(0.0, sum_sq / n - score.mean_sse * score.mean_sse);
            score.stddev_sse = std::sqrt(var);
            entry.ranking.push_back(score);
        }
        std::stable_sort(entry.ranking.begin(), entry.ranking.end(),
                         [](const MethodScore& a, const MethodScore& b) { return a.sse < b.sse; });
        summary.entries.push_back(std::move(entry));
    }
    return summary;
}

}  // namespace kmseed
