// Minimal library walkthrough: load a dataset, seed centroids four ways,
// run Lloyd, and compare SSE.
//
//   ./quickstart [path/to/iris.csv]

#include <iostream>

#include "kmseed/kmseed.hpp"

int main(int argc, char** argv) {
    using namespace kmseed;

    DataMatrix data;
    if (argc > 1) {
        LoadOptions opts;
        opts.label_column = 4;  // classic iris layout: 4 numeric attributes + species
        data = load_csv(argv[1], opts);
    } else {
        data = DataMatrix::from_rows({{1.0, 1.1}, {0.9, 1.0}, {1.2, 0.8},
                                      {8.0, 8.2}, {7.9, 8.4}, {8.3, 7.9},
                                      {4.0, 4.1}, {4.2, 3.8}});
    }
    const std::size_t k = 3;
    std::cout << "loaded " << data.rows << " x " << data.cols << ", k = " << k << "\n\n";

    // Distance-partition: clusters in normalized space.
    InitSpec spec;
    spec.strategy = Strategy::dp;
    spec.k = k;
    const DpInit dp = init_dp(data, spec);
    const auto [normalized, params] = normalize(data, spec.normalization);
    const ClusteringResult dp_result = run_lloyd(normalized, dp.centroids);
    const CentroidSet dp_raw = inverse_transform(dp_result.centroids, params);
    std::cout << "dp:        model-space SSE " << dp_result.sse_model_space << ", raw-space SSE "
              << sse(data, dp_raw, dp_result.assignment) << " ("
              << dp_result.iterations << " iterations)\n";

    // Baselines cluster raw data directly.
    for (const auto& [name, init] :
         {std::pair{"origin:   ", init_origin_point(data, k)},
          std::pair{"random:   ", init_random_macqueen(data, k, /*seed=*/7)},
          std::pair{"variance: ", init_variance_aldaoud(data, k)}}) {
        const ClusteringResult res = run_lloyd(data, init);
        std::cout << name << " raw-space SSE " << res.sse_raw_space << " (" << res.iterations
                  << " iterations)\n";
    }
    return 0;
}
