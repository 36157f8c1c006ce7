#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "kmseed/errors.hpp"
#include "kmseed/experiment.hpp"

namespace kmseed {

enum class ReportFormat { json, csv, markdown_table, svg_bar_chart };

inline std::string to_string(ReportFormat f) {
    switch (f) {
        case ReportFormat::json: return "json";
        case ReportFormat::csv: return "csv";
        case ReportFormat::markdown_table: return "markdown_table";
        case ReportFormat::svg_bar_chart: return "svg_bar_chart";
    }
    return "?";
}

inline ReportFormat report_format_from_string(const std::string& s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "markdown_table") return ReportFormat::markdown_table;
    if (s == "svg_bar_chart") return ReportFormat::svg_bar_chart;
    throw UnknownFormatError(s);
}

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace detail {

inline void require_cells(const ExperimentReport& r) {
    if (r.cells.empty())
        throw EmptyReportError();
}

inline std::string seed_field(const std::optional<std::uint64_t>& seed) {
    return seed ? std::to_string(*seed) : std::string();
}

}  // namespace detail

inline std::string render_json(const ExperimentReport& r) {
    detail::require_cells(r);
    nlohmann::ordered_json doc;
    doc["schema_version"] = r.schema_version;
    doc["cells"] = nlohmann::ordered_json::array();
    for (const CellResult& cell : r.cells) {
        nlohmann::ordered_json c;
        c["dataset"] = cell.dataset;
        c["initializer"] = to_string(cell.initializer);
        c["k"] = cell.k;
        if (cell.seed)
            c["seed"] = *cell.seed;
        else
            c["seed"] = nullptr;
        c["space"] = to_string(cell.space);
        c["sse_model_space"] = cell.sse_model_space;
        c["sse_raw_space"] = cell.sse_raw_space;
        c["iterations"] = cell.iterations;
        c["converged"] = to_string(cell.converged);
        c["empty_cluster_events"] = cell.empty_cluster_events;
        doc["cells"].push_back(std::move(c));
    }
    doc["failed_cells"] = nlohmann::ordered_json::array();
    for (const FailedCell& fc : r.failed_cells) {
        nlohmann::ordered_json c;
        c["dataset"] = fc.dataset;
        c["initializer"] = to_string(fc.initializer);
        c["k"] = fc.k;
        if (fc.seed)
            c["seed"] = *fc.seed;
        else
            c["seed"] = nullptr;
        c["error"] = fc.error;
        doc["failed_cells"].push_back(std::move(c));
    }
    // Volatile values are confined to this block; everything above is
    // byte-stable across reruns of a deterministic spec.
    nlohmann::ordered_json meta;
    meta["tool_version"] = r.tool_version;
    meta["prng"] = r.prng_name;
    meta["generated_at"] = r.generated_at.empty() ? utc_timestamp() : r.generated_at;
    meta["wall_ms"] = r.wall_ms;
    doc["metadata"] = std::move(meta);
    return doc.dump(2) + "\n";
}

inline std::string render_csv(const ExperimentReport& r) {
    detail::require_cells(r);
    std::ostringstream out;
    out << "dataset,initializer,k,seed,space,sse_model_space,sse_raw_space,"
           "iterations,converged,empty_cluster_events,wall_ms\n";
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
        const CellResult& cell = r.cells[i];
        out << cell.dataset << ',' << to_string(cell.initializer) << ',' << cell.k << ','
            << detail::seed_field(cell.seed) << ',' << to_string(cell.space) << ','
            << format_double(cell.sse_model_space) << ','
            << format_double(cell.sse_raw_space) << ',' << cell.iterations << ','
            << to_string(cell.converged) << ',' << cell.empty_cluster_events << ','
            << (i < r.wall_ms.size() ? format_double(r.wall_ms[i]) : std::string())
            << '\n';
    }
    return out.str();
}

namespace detail {

struct GridView {
    std::vector<std::string> datasets;                 // first-seen order
    std::vector<std::size_t> ks;                       // ascending
    std::vector<Strategy> methods;                     // first-seen order
    // (k, method, dataset) -> representative SSE in the method's own space;
    // random cells collapse to their best seed.
    std::map<std::tuple<std::size_t, Strategy, std::string>, double> value;
    std::map<Strategy, std::size_t> trials;
};

inline GridView grid_view(const ExperimentReport& r) {
    GridView g;
    std::set<std::string> seen_ds;
    std::set<std::size_t> seen_k;
    std::set<Strategy> seen_m;
    for (const CellResult& cell : r.cells) {
        if (seen_ds.insert(cell.dataset).second)
            g.datasets.push_back(cell.dataset);
        if (seen_k.insert(cell.k).second)
            g.ks.push_back(cell.k);
        if (seen_m.insert(cell.initializer).second)
            g.methods.push_back(cell.initializer);
        const double v = (cell.space == Space::model_space) ? cell.sse_model_space
                                                            : cell.sse_raw_space;
        const auto key = std::make_tuple(cell.k, cell.initializer, cell.dataset);
        const auto it = g.value.find(key);
        if (it == g.value.end() || v < it->second)
            g.value[key] = v;
        if (cell.initializer == Strategy::random_macqueen)
            ++g.trials[cell.initializer];
    }
    std::sort(g.ks.begin(), g.ks.end());
    return g;
}

inline std::string method_label(const GridView& g, Strategy m, std::size_t n_ks) {
    std::string label = to_string(m) + " (" + to_string(default_space(m));
    if (m == Strategy::random_macqueen && g.trials.count(m)) {
        const std::size_t per_cell = g.trials.at(m) / std::max<std::size_t>(
            1, g.datasets.size() * n_ks);
        label += ", best of " + std::to_string(per_cell) + " seeds";
    }
    label += ")";
    return label;
}

}  // namespace detail

/// One table per k: methods as rows, datasets as columns. Each value is the
/// method's SSE in its own clustering space, so rows from different spaces
/// are labeled rather than silently mixed.
inline std::string render_markdown(const ExperimentReport& r) {
    detail::require_cells(r);
    const auto g = detail::grid_view(r);
    std::ostringstream out;
    for (std::size_t k : g.ks) {
        out << "### SSE by method, k = " << k << "\n\n";
        out << "| Method |";
        for (const auto& ds : g.datasets)
            out << ' ' << ds << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < g.datasets.size(); ++i)
            out << "---|";
        out << '\n';
        for (Strategy m : g.methods) {
            out << "| " << detail::method_label(g, m, g.ks.size()) << " |";
            for (const auto& ds : g.datasets) {
                const auto it = g.value.find(std::make_tuple(k, m, ds));
                out << ' ' << (it == g.value.end() ? std::string("-")
                                                   : format_double(it->second))
                    << " |";
            }
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

/// Grouped bar chart per k: datasets along the x axis, one bar per method.
/// Static, self-contained SVG.
inline std::string render_svg(const ExperimentReport& r) {
    detail::require_cells(r);
    const auto g = detail::grid_view(r);
    static constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14d", "#e15759",
                                               "#b07aa1", "#76b7b2"};
    const int chart_w = 880, chart_h = 360;
    const int margin_left = 70, margin_right = 30, margin_top = 48, margin_bottom = 56;
    const int total_h = static_cast<int>(g.ks.size()) * chart_h;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart_w << "\" height=\""
        << total_h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";

    int chart_index = 0;
    for (std::size_t k : g.ks) {
        const int y0 = chart_index * chart_h;
        double max_v = 0.0;
        for (Strategy m : g.methods)
            for (const auto& ds : g.datasets) {
                const auto it = g.value.find(std::make_tuple(k, m, ds));
                if (it != g.value.end())
                    max_v = std::max(max_v, it->second);
            }
        if (max_v <= 0.0)
            max_v = 1.0;
        const double plot_w = chart_w - margin_left - margin_right;
        const double plot_h = chart_h - margin_top - margin_bottom;
        const double scale = plot_h / (max_v * 1.08);

        out << "  <text x=\"" << margin_left << "\" y=\"" << y0 + 24
            << "\" font-size=\"15\" font-weight=\"bold\">SSE by initializer, k = " << k
            << "</text>\n";
        // y axis with 5 ticks
        for (int t = 0; t <= 5; ++t) {
            const double v = max_v * 1.08 * t / 5.0;
            const double y = y0 + margin_top + plot_h - v * scale;
            out << "  <line x1=\"" << margin_left << "\" y1=\"" << y << "\" x2=\""
                << chart_w - margin_right << "\" y2=\"" << y
                << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
            out << "  <text x=\"" << margin_left - 6 << "\" y=\"" << y + 4
                << "\" text-anchor=\"end\">" << format_double(std::round(v * 100) / 100)
                << "</text>\n";
        }
        const double group_w = plot_w / static_cast<double>(g.datasets.size());
        const double bar_w =
            group_w * 0.8 / static_cast<double>(std::max<std::size_t>(1, g.methods.size()));
        for (std::size_t d = 0; d < g.datasets.size(); ++d) {
            const double gx = margin_left + group_w * static_cast<double>(d) + group_w * 0.1;
            for (std::size_t mi = 0; mi < g.methods.size(); ++mi) {
                const auto it = g.value.find(std::make_tuple(k, g.methods[mi], g.datasets[d]));
                if (it == g.value.end())
                    continue;
                const double h = it->second * scale;
                const double x = gx + bar_w * static_cast<double>(mi);
                const double y = y0 + margin_top + plot_h - h;
                out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w * 0.92
                    << "\" height=\"" << h << "\" fill=\"" << kPalette[mi % 6] << "\"/>\n";
                out << "  <text x=\"" << x + bar_w * 0.46 << "\" y=\"" << y - 3
                    << "\" text-anchor=\"middle\" font-size=\"10\">"
                    << format_double(std::round(it->second * 1000) / 1000) << "</text>\n";
            }
            out << "  <text x=\"" << gx + group_w * 0.4 << "\" y=\""
                << y0 + margin_top + plot_h + 18 << "\" text-anchor=\"middle\">"
                << g.datasets[d] << "</text>\n";
        }
        // legend
        double lx = static_cast<double>(margin_left);
        const double ly = y0 + chart_h - 14;
        for (std::size_t mi = 0; mi < g.methods.size(); ++mi) {
            const std::string label = detail::method_label(g, g.methods[mi], g.ks.size());
            out << "  <rect x=\"" << lx << "\" y=\"" << ly - 10
                << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[mi % 6] << "\"/>\n";
            out << "  <text x=\"" << lx + 16 << "\" y=\"" << ly << "\">" << label
                << "</text>\n";
            lx += 24 + label.size() * 7.0;
        }
        ++chart_index;
    }
    out << "</svg>\n";
    return out.str();
}

inline std::string render_report(const ExperimentReport& r, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: return render_json(r);
        case ReportFormat::csv: return render_csv(r);
        case ReportFormat::markdown_table: return render_markdown(r);
        case ReportFormat::svg_bar_chart: return render_svg(r);
    }
    throw UnknownFormatError(std::to_string(static_cast<int>(format)));
}

inline void emit_report(const ExperimentReport& r, ReportFormat format,
                        const std::filesystem::path& path) {
    const std::string body = render_report(r, format);
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw IoError("cannot open " + path.string() + " for writing");
    out << body;
    if (!out.good())
        throw IoError("failed writing " + path.string());
}

}  // namespace kmseed
