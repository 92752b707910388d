// Command-line front end: single-point analysis, Monte Carlo estimation,
// joint optimization, baselines, parameter sweeps and figure reproduction.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "uavcpn/bayesopt.hpp"
#include "uavcpn/config.hpp"
#include "uavcpn/figures.hpp"
#include "uavcpn/montecarlo.hpp"
#include "uavcpn/optimizer.hpp"
#include "uavcpn/sweep.hpp"

namespace {

using nlohmann::json;
using namespace uavcpn;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json result_record(const RunConfig& cfg) {
    return json{{"config_hash", config_hash(cfg)},
                {"seed", cfg.seed},
                {"channel_mode", to_string(cfg.channel_mode)},
                {"hover_time_policy", to_string(cfg.energy.hover_time_policy)}};
}

json trace_json(const OptimizationResult& r) {
    json t = json::array();
    for (const auto& pt : r.trace)
        t.push_back({{"iteration", pt.iteration},
                     {"altitude_m", pt.altitude},
                     {"power_w", pt.power},
                     {"objective", pt.objective},
                     {"battery_slack_j", std::isfinite(pt.battery_slack) ? json(pt.battery_slack)
                                                                         : json()},
                     {"fuel_slack_j", std::isfinite(pt.fuel_slack) ? json(pt.fuel_slack)
                                                                   : json()}});
    return t;
}

json optimization_json(const OptimizationResult& r, const RunConfig& cfg) {
    json out = result_record(cfg);
    out["method"] = r.method;
    out["h_star_m"] = r.h_star;
    out["p_star_w"] = r.p_star;
    out["p_star_dbw"] = units::watt_to_dbw(r.p_star);
    out["objective"] = r.objective;
    out["feasible"] = r.feasible;
    out["iterations"] = r.iterations;
    out["trace"] = trace_json(r);
    out["fd_step_rel"] = cfg.optimizer.fd_step_rel;
    out["lr_decay"] = cfg.optimizer.lr_decay;
    out["window"] = cfg.optimizer.window;
    return out;
}

void emit(const RunConfig& cfg, const std::string& name, const ResultsTable& table,
          const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const bool csv = cfg.format == OutputFormat::csv;
    const fs::path path = fs::path(out_dir) / (name + (csv ? ".csv" : ".json"));
    std::ofstream out(path, std::ios::binary);
    out << (csv ? to_csv(table) : to_json(table));
    std::cout << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
}

ResultsTable optimization_table(const std::vector<OptimizationResult>& results,
                                const RunConfig& cfg) {
    ResultsTable t;
    t.columns = {"method", "h_star_m", "p_star_dbw", "objective", "feasible", "iterations",
                 "config_hash", "seed", "channel_mode", "hover_time_policy"};
    const std::string hash = config_hash(cfg);
    for (const auto& r : results)
        t.rows.push_back({r.method, r.h_star, units::watt_to_dbw(r.p_star), r.objective,
                          std::string(r.feasible ? "true" : "false"),
                          static_cast<double>(r.iterations), hash,
                          static_cast<double>(cfg.seed),
                          std::string(to_string(cfg.channel_mode)),
                          std::string(to_string(cfg.energy.hover_time_policy))});
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV computing power network: task completion analysis and optimization"};
    app.require_subcommand(1);

    std::string config_path, out_dir, channel_mode_opt, format_opt;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 1;
    app.add_option("--config", config_path, "configuration file");
    app.add_option("--seed", seed, "RNG seed (overrides config)")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--threads", threads, "worker threads");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--channel-mode", channel_mode_opt, "mean_power|bernoulli");
    app.add_option("--format", format_opt, "csv|json");

    auto* analyze = app.add_subcommand("analyze", "single-point analytic value");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate");
    auto* optimize = app.add_subcommand("optimize", "joint altitude/power optimization");
    auto* baselines = app.add_subcommand("baselines", "fixed-parameter baselines plus BO");
    auto* sweep = app.add_subcommand("sweep", "run configured sweep axes");
    bool no_mc = false;
    sweep->add_flag("--no-mc", no_mc, "skip the Monte Carlo column");
    auto* repro = app.add_subcommand("reproduce-figure", "emit a figure's data and plot spec");
    std::string figure_id;
    repro->add_option("id", figure_id, "fig2..fig9")->required();
    for (auto* sub : {analyze, simulate, optimize, baselines, sweep, repro})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = parse_config(read_file(config_path));
        if (seed_set) cfg.seed = seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!channel_mode_opt.empty())
            apply_config_key(cfg, "channel_mode", channel_mode_opt);
        if (!format_opt.empty()) apply_config_key(cfg, "format", format_opt);
        cfg.finalize();

        const auto params = cfg.analysis_params();

        if (*analyze) {
            if (!cfg.cn_field_radius) {
                const double sup = max_service_radius(0.0, cfg.net);
                if (std::isfinite(sup) && sup > cfg.net.geometry.service_window_radius)
                    std::cerr << "note: latency-limited service radius " << sup
                              << " m exceeds the window radius "
                              << cfg.net.geometry.service_window_radius
                              << " m; the analysis treats the CN field as unbounded\n";
            }
            const double v = average_success_probability(params);
            json out = result_record(cfg);
            out["method"] = "analytic";
            out["average_success_probability"] = v;
            std::cout << out.dump(2) << "\n";
        } else if (*simulate) {
            const auto est = estimate_average_success(cfg.sim, params, threads, &std::cerr);
            const auto ci = wilson_interval(est.value * static_cast<double>(est.trials),
                                            static_cast<double>(est.trials));
            json out = result_record(cfg);
            out["method"] = "monte_carlo";
            out["estimate"] = est.value;
            out["ci99_lo"] = ci.lo;
            out["ci99_hi"] = ci.hi;
            out["trials"] = est.trials;
            std::cout << out.dump(2) << "\n";
        } else if (*optimize) {
            const auto r = joint_optimize(params, cfg.energy, cfg.budgets, cfg.optimizer);
            if (cfg.format == OutputFormat::json) {
                std::cout << optimization_json(r, cfg).dump(2) << "\n";
            } else {
                emit(cfg, "optimize", optimization_table({r}, cfg), cfg.out_dir);
                std::cout << "h*=" << r.h_star << " m  P*=" << units::watt_to_dbw(r.p_star)
                          << " dBW  objective=" << r.objective << "\n";
            }
        } else if (*baselines) {
            std::vector<OptimizationResult> rs;
            rs.push_back(baseline_power_only(params, cfg.energy, cfg.budgets, cfg.optimizer));
            rs.push_back(baseline_altitude_only(params, cfg.energy, cfg.budgets, cfg.optimizer));
            rs.push_back(baseline_static(100.0, 10.0, params, cfg.energy, cfg.budgets,
                                         cfg.optimizer));
            rs.back().method = "static_100m_10dBW";
            rs.push_back(baseline_static(50.0, 10.0, params, cfg.energy, cfg.budgets,
                                         cfg.optimizer));
            rs.back().method = "static_50m_10dBW";
            rs.push_back(baseline_static(50.0, 3.1622776601683795, params, cfg.energy,
                                         cfg.budgets, cfg.optimizer));
            rs.back().method = "static_50m_5dBW";
            rs.push_back(bayesian_optimize(params, cfg.energy, cfg.budgets,
                                           cfg.optimizer.limits, cfg.bayesopt));
            if (cfg.format == OutputFormat::json) {
                json out = json::array();
                for (const auto& r : rs) out.push_back(optimization_json(r, cfg));
                std::cout << out.dump(2) << "\n";
            } else {
                emit(cfg, "baselines", optimization_table(rs, cfg), cfg.out_dir);
            }
        } else if (*sweep) {
            if (cfg.sweep_axes.empty())
                std::cerr << "note: no sweep axes configured; emitting a single row\n";
            const auto table = run_sweep(cfg, threads, !no_mc, &std::cerr);
            emit(cfg, "sweep", table, cfg.out_dir);
        } else if (*repro) {
            const auto files = reproduce_figure(cfg, figure_id, cfg.out_dir, threads,
                                                &std::cerr);
            for (const auto& f : files) std::cout << "wrote " << f << "\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
