#pragma once

// Cartesian parameter sweeps over registered config paths, with RFC-4180 CSV
// and JSON emission. Per-point failures land in an `error` column and the
// sweep continues.

#include <string>
#include <variant>
#include <vector>

#include "uavcpn/config.hpp"
#include "uavcpn/montecarlo.hpp"
#include "uavcpn/parallel.hpp"

namespace uavcpn {

using Cell = std::variant<std::monostate, double, std::string>;

struct ResultsTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

namespace detail_io {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (const auto* d = std::get_if<double>(&c)) {
        if (std::isnan(*d)) return "";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        return buf;
    }
    return std::get<std::string>(c);
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace detail_io

inline std::string to_csv(const ResultsTable& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += detail_io::csv_escape(t.columns[i]);
    }
    out += "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += detail_io::csv_escape(detail_io::cell_text(row[i]));
        }
        out += "\r\n";
    }
    return out;
}

inline std::string to_json(const ResultsTable& t) {
    std::string out = "[\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += "  {";
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            if (i) out += ", ";
            out += '"' + detail_io::json_escape(t.columns[i]) + "\": ";
            const Cell& c = t.rows[r][i];
            if (const auto* d = std::get_if<double>(&c); d && std::isfinite(*d)) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", *d);
                out += buf;
            } else if (const auto* s = std::get_if<std::string>(&c)) {
                out += '"' + detail_io::json_escape(*s) + '"';
            } else {
                out += "null";
            }
        }
        out += r + 1 < t.rows.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

/// Evaluates the analytic metric (and optionally a Monte Carlo estimate) over
/// the Cartesian product of the configured sweep axes, first axis outermost.
/// Row order and values are independent of the thread count.
inline ResultsTable run_sweep(const RunConfig& cfg, unsigned threads = 1,
                              bool include_mc = true, std::ostream* log = nullptr) {
    ResultsTable table;
    for (const auto& axis : cfg.sweep_axes) table.columns.push_back(axis.path);
    table.columns.push_back("analytic");
    if (include_mc)
        for (const char* c : {"mc_estimate", "mc_ci_lo", "mc_ci_hi", "mc_trials"})
            table.columns.push_back(c);
    for (const char* c : {"config_hash", "seed", "channel_mode", "hover_time_policy", "error"})
        table.columns.push_back(c);

    std::uint64_t n = 1;
    for (const auto& axis : cfg.sweep_axes) n *= axis.values.size();
    table.rows.resize(n);

    const std::string hash = config_hash(cfg);
    parallel_for(n, threads, [&](std::uint64_t flat) {
        auto& row = table.rows[flat];
        RunConfig point = cfg;
        std::vector<double> coords(cfg.sweep_axes.size());
        std::uint64_t rem = flat;
        for (std::size_t a = cfg.sweep_axes.size(); a-- > 0;) {
            const auto& axis = cfg.sweep_axes[a];
            coords[a] = axis.values[rem % axis.values.size()];
            rem /= axis.values.size();
        }
        std::string error;
        try {
            for (std::size_t a = 0; a < cfg.sweep_axes.size(); ++a)
                *detail_config::find_numeric(cfg.sweep_axes[a].path)->slot(point) = coords[a];
            point.finalize();
        } catch (const std::exception& e) {
            error = e.what();
        }

        for (double c : coords) row.emplace_back(c);
        double analytic = std::numeric_limits<double>::quiet_NaN();
        SuccessEstimate mc;
        if (error.empty()) {
            try {
                const auto params = point.analysis_params();
                analytic = average_success_probability(params);
                if (include_mc) mc = estimate_average_success(point.sim, params, 1, log);
            } catch (const std::exception& e) {
                error = e.what();
            }
        }
        row.emplace_back(analytic);
        if (include_mc) {
            if (error.empty() && mc.trials > 0) {
                const auto ci = wilson_interval(mc.value * static_cast<double>(mc.trials),
                                                static_cast<double>(mc.trials));
                row.emplace_back(mc.value);
                row.emplace_back(ci.lo);
                row.emplace_back(ci.hi);
                row.emplace_back(static_cast<double>(mc.trials));
            } else {
                for (int i = 0; i < 4; ++i) row.emplace_back(std::monostate{});
            }
        }
        row.emplace_back(hash);
        row.emplace_back(static_cast<double>(cfg.seed));
        row.emplace_back(std::string(to_string(cfg.channel_mode)));
        row.emplace_back(std::string(to_string(cfg.energy.hover_time_policy)));
        if (error.empty()) row.emplace_back(std::monostate{});
        else row.emplace_back(error);
    });
    return table;
}

}  // namespace uavcpn
