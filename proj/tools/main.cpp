// kmseed command-line benchmark runner.
//
// Subcommands:
//   run            cluster datasets over an initializer/k grid, emit a report
//   datasets list  print the built-in dataset registry
//   verify         run the built-in oracle property suite

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kmseed/kmseed.hpp"
#include "kmseed/selftest.hpp"

namespace {

std::vector<std::uint64_t> expand_seed_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::uint64_t> seeds;
    for (const std::string& tok : tokens) {
        const auto dots = tok.find("..");
        if (dots == std::string::npos) {
            seeds.push_back(std::stoull(tok));
            continue;
        }
        const std::uint64_t lo = std::stoull(tok.substr(0, dots));
        const std::uint64_t hi = std::stoull(tok.substr(dots + 2));
        if (hi < lo)
            throw kmseed::InvalidArgumentError("bad seed range: " + tok);
        for (std::uint64_t s = lo; s <= hi; ++s)
            seeds.push_back(s);
    }
    return seeds;
}

std::filesystem::path resolve_out_path(const std::string& out) {
    std::filesystem::path path(out);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("KMSEED_OUT_DIR"))
            return std::filesystem::path(dir) / path;
    }
    return path;
}

int cmd_run(const std::vector<std::string>& datasets, const std::vector<std::string>& inits,
            const std::vector<std::size_t>& ks, const std::vector<std::string>& seed_tokens,
            const std::string& normalize, const std::string& space, std::size_t max_iter,
            const std::string& out, const std::string& format, const std::string& data_dir) {
    kmseed::ExperimentSpec spec;
    spec.datasets = datasets;
    for (const std::string& name : inits)
        spec.initializers.push_back(kmseed::strategy_from_string(name));
    spec.ks = ks;
    spec.normalization = kmseed::norm_method_from_string(normalize);
    spec.lloyd.max_iterations = max_iter;
    spec.seeds = seed_tokens.empty() ? kmseed::default_seed_list()
                                     : expand_seed_tokens(seed_tokens);
    if (!space.empty()) {
        if (space == "model")
            spec.forced_space = kmseed::Space::model_space;
        else if (space == "raw")
            spec.forced_space = kmseed::Space::raw_space;
        else
            throw kmseed::InvalidArgumentError("unknown space: " + space);
    }
    spec.data_dir = data_dir;
    spec.validate();

    const kmseed::ReportFormat fmt = kmseed::report_format_from_string(format);
    const kmseed::ExperimentReport report = kmseed::run_experiment(spec);
    const auto out_path = resolve_out_path(out);
    kmseed::emit_report(report, fmt, out_path);

    std::cout << report.cells.size() << " cells written to " << out_path.string() << "\n";
    if (!report.failed_cells.empty()) {
        std::cerr << report.failed_cells.size() << " cells failed:\n";
        for (const auto& fc : report.failed_cells)
            std::cerr << "  " << fc.dataset << "/" << kmseed::to_string(fc.initializer)
                      << "/k=" << fc.k << ": " << fc.error << "\n";
        return 1;
    }
    return 0;
}

int cmd_datasets_list() {
    std::cout << "name            attributes  records  label_column  header  delimiter\n";
    for (const auto& d : kmseed::dataset_registry()) {
        std::printf("%-15s %10zu %8zu %13zu %7s %10s\n", d.name.c_str(), d.attributes,
                    d.records, d.load_options.label_column.value_or(0),
                    d.load_options.has_header ? "yes" : "no",
                    d.load_options.delimiter == '\t' ? "tab" : std::string(1, d.load_options.delimiter).c_str());
    }
    std::cout << "\nfiles are loaded from <data-dir>/<name>.csv (see README for sources)\n";
    return 0;
}

int cmd_verify() {
    bool all_passed = true;
    for (const auto& check : kmseed::selftest::run_all()) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << " -- "
                  << check.detail << "\n";
        all_passed = all_passed && check.passed;
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-means clustering benchmark with interchangeable centroid initializers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kmseed::kVersion);

    auto* run = app.add_subcommand("run", "run an experiment grid and emit a report");
    std::vector<std::string> datasets, inits, seed_tokens;
    std::vector<std::size_t> ks;
    std::string normalize = "maxabs", space, out, format = "json", data_dir = "data";
    std::size_t max_iter = 300;
    run->add_option("--dataset", datasets, "registry name or CSV path (repeatable)")
        ->required();
    run->add_option("--init", inits, "initializers: dp,origin,random,variance")
        ->required()
        ->delimiter(',');
    run->add_option("--k", ks, "cluster counts, e.g. 3,4")->required()->delimiter(',');
    run->add_option("--seeds", seed_tokens, "random-initializer seeds, e.g. 0..29 or 1,2,3")
        ->delimiter(',');
    run->add_option("--normalize", normalize, "maxabs|minmax|none (default maxabs)");
    run->add_option("--space", space, "force clustering space: model|raw");
    run->add_option("--max-iter", max_iter, "Lloyd iteration cap (default 300)");
    run->add_option("--out", out, "output file path")->required();
    run->add_option("--format", format, "json|csv|markdown_table|svg_bar_chart");
    run->add_option("--data-dir", data_dir, "directory with registry dataset files");

    auto* datasets_cmd = app.add_subcommand("datasets", "dataset registry commands");
    datasets_cmd->require_subcommand(1);
    datasets_cmd->add_subcommand("list", "print the dataset registry");

    auto* verify = app.add_subcommand("verify", "run the oracle property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed())
            return cmd_run(datasets, inits, ks, seed_tokens, normalize, space, max_iter, out,
                           format, data_dir);
        if (datasets_cmd->parsed())
            return cmd_datasets_list();
        if (verify->parsed())
            return cmd_verify();
    } catch (const kmseed::InvalidArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const kmseed::UnknownFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
