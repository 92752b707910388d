#pragma once

// Figure-reproduction drivers: each emits the figure's underlying data as
// CSV plus a declarative plot description as JSON. No pixels are rendered.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "uavcpn/bayesopt.hpp"
#include "uavcpn/optimizer.hpp"
#include "uavcpn/sweep.hpp"

namespace uavcpn {

namespace detail_fig {

using nlohmann::json;

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                   : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

inline json provenance(const RunConfig& cfg) {
    return json{{"config_hash", config_hash(cfg)},
                {"seed", cfg.seed},
                {"channel_mode", to_string(cfg.channel_mode)},
                {"hover_time_policy", to_string(cfg.energy.hover_time_policy)}};
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

struct StrategyCell {
    double battery = 0.0, fuel = 0.0;
    std::map<std::string, OptimizationResult> results;
};

// Joint optimizer plus the five fixed-parameter baselines over the energy
// budget grid of the heat-map figures.
inline std::vector<StrategyCell> strategy_grid(const RunConfig& cfg, int n_battery, int n_fuel,
                                               unsigned threads) {
    const auto batteries = linspace(20.0, 120.0, n_battery);
    const auto fuels = linspace(30e3, 60e3, n_fuel);
    std::vector<StrategyCell> cells(static_cast<std::size_t>(n_battery) * n_fuel);
    const auto params = cfg.analysis_params();
    parallel_for(cells.size(), threads, [&](std::uint64_t i) {
        auto& cell = cells[i];
        cell.battery = batteries[i / n_fuel];
        cell.fuel = fuels[i % n_fuel];
        const EnergyBudgets budgets{cell.battery, cell.fuel};
        try {
            cell.results["joint"] = joint_optimize(params, cfg.energy, budgets, cfg.optimizer);
        } catch (const std::exception&) {
            cell.results["joint"] = OptimizationResult{};  // nothing feasible
        }
        cell.results["power_only"] =
            baseline_power_only(params, cfg.energy, budgets, cfg.optimizer);
        cell.results["altitude_only"] =
            baseline_altitude_only(params, cfg.energy, budgets, cfg.optimizer);
        cell.results["static_100m_10dBW"] =
            baseline_static(100.0, 10.0, params, cfg.energy, budgets, cfg.optimizer);
        cell.results["static_50m_10dBW"] =
            baseline_static(50.0, 10.0, params, cfg.energy, budgets, cfg.optimizer);
        cell.results["static_50m_5dBW"] = baseline_static(50.0, 3.1622776601683795, params,
                                                          cfg.energy, budgets, cfg.optimizer);
    });
    return cells;
}

}  // namespace detail_fig

/// Writes <id>.csv and <id>_plot.json under out_dir; returns the paths.
/// The driver pins the scenario parameters that define each figure; every
/// other parameter comes from the passed config.
inline std::vector<std::string> reproduce_figure(const RunConfig& base, const std::string& id,
                                                 const std::string& out_dir,
                                                 unsigned threads = 1,
                                                 std::ostream* log = nullptr) {
    using detail_fig::json;
    namespace fs = std::filesystem;
    RunConfig cfg = base;
    ResultsTable table;
    json plot;
    plot["figure"] = id;

    if (id == "fig2") {
        // Altitude validation curves; the moderate relay power that locates
        // the interior optimum near 200 m.
        cfg.net.radio.uav_tx_power = 10.0;
        cfg.finalize();
        const auto altitudes = detail_fig::linspace(50.0, 800.0, 15);
        const std::vector<double> tcs{0.2e-3, 2e-3};
        table.columns = {"t_c_s", "altitude_m", "analytic", "mc_estimate", "mc_ci_lo",
                         "mc_ci_hi", "mc_trials", "config_hash", "seed", "channel_mode",
                         "hover_time_policy"};
        table.rows.resize(tcs.size() * altitudes.size());
        const std::string hash = config_hash(cfg);
        parallel_for(table.rows.size(), threads, [&](std::uint64_t i) {
            RunConfig point = cfg;
            const double tc = tcs[i / altitudes.size()];
            const double h = altitudes[i % altitudes.size()];
            point.net.geometry.altitude = h;
            point.compute.variant = DeterministicCompute{tc};
            point.finalize();
            const auto params = point.analysis_params();
            auto& row = table.rows[i];
            row.emplace_back(tc);
            row.emplace_back(h);
            row.emplace_back(average_success_probability(params));
            const auto mc = estimate_average_success(point.sim, params, 1, log);
            const auto ci = wilson_interval(mc.value * static_cast<double>(mc.trials),
                                            static_cast<double>(mc.trials));
            row.emplace_back(mc.value);
            row.emplace_back(ci.lo);
            row.emplace_back(ci.hi);
            row.emplace_back(static_cast<double>(mc.trials));
            row.emplace_back(hash);
            row.emplace_back(static_cast<double>(cfg.seed));
            row.emplace_back(std::string(to_string(cfg.channel_mode)));
            row.emplace_back(std::string(to_string(cfg.energy.hover_time_policy)));
        });
        plot["title"] = "Task completion probability vs UAV altitude";
        plot["axes"] = {{"x", {{"column", "altitude_m"}, {"label", "UAV altitude (m)"}}},
                        {"y", {{"label", "Average task completion probability"}}}};
        plot["series"] = json::array();
        for (double tc : tcs) {
            char label[32];
            std::snprintf(label, sizeof label, "t_c=%g ms", tc * 1e3);
            plot["series"].push_back({{"label", std::string("analytic ") + label},
                                      {"column", "analytic"},
                                      {"filter", {{"t_c_s", tc}}},
                                      {"style", "line"}});
            plot["series"].push_back({{"label", std::string("Monte Carlo ") + label},
                                      {"column", "mc_estimate"},
                                      {"ci_columns", {"mc_ci_lo", "mc_ci_hi"}},
                                      {"filter", {{"t_c_s", tc}}},
                                      {"style", "points"}});
        }
    } else if (id == "fig3") {
        const auto altitudes = detail_fig::linspace(50.0, 800.0, 16);
        const std::vector<double> densities{1e-6, 2e-6, 5e-6, 1e-5, 2e-5, 5e-5};
        table.columns = {"cn_density_per_m2", "altitude_m", "analytic",
                         "config_hash", "seed", "channel_mode", "hover_time_policy"};
        const std::string hash = config_hash(cfg);
        table.rows.resize(densities.size() * altitudes.size());
        parallel_for(table.rows.size(), threads, [&](std::uint64_t i) {
            RunConfig point = cfg;
            point.net.geometry.cn_density = densities[i / altitudes.size()];
            point.net.geometry.altitude = altitudes[i % altitudes.size()];
            point.finalize();
            auto& row = table.rows[i];
            row.emplace_back(point.net.geometry.cn_density);
            row.emplace_back(point.net.geometry.altitude);
            row.emplace_back(average_success_probability(point.analysis_params()));
            row.emplace_back(hash);
            row.emplace_back(static_cast<double>(cfg.seed));
            row.emplace_back(std::string(to_string(cfg.channel_mode)));
            row.emplace_back(std::string(to_string(cfg.energy.hover_time_policy)));
        });
        plot["title"] = "Task completion probability vs CN density and UAV altitude";
        plot["axes"] = {{"x", {{"column", "altitude_m"}, {"label", "UAV altitude (m)"}}},
                        {"y", {{"column", "cn_density_per_m2"}, {"label", "CN density (per m^2)"}}},
                        {"z", {{"column", "analytic"}, {"label", "Average task completion probability"}}}};
        plot["series"] = {{{"style", "surface"}, {"column", "analytic"}}};
    } else if (id == "fig4") {
        const auto altitudes = detail_fig::linspace(50.0, 800.0, 16);
        const auto radii = detail_fig::linspace(200.0, 1000.0, 9);
        table.columns = {"cn_field_radius_m", "altitude_m", "analytic",
                         "config_hash", "seed", "channel_mode", "hover_time_policy"};
        const std::string hash = config_hash(cfg);
        table.rows.resize(radii.size() * altitudes.size());
        parallel_for(table.rows.size(), threads, [&](std::uint64_t i) {
            RunConfig point = cfg;
            point.cn_field_radius = radii[i / altitudes.size()];
            point.net.geometry.altitude = altitudes[i % altitudes.size()];
            point.finalize();
            auto& row = table.rows[i];
            row.emplace_back(*point.cn_field_radius);
            row.emplace_back(point.net.geometry.altitude);
            row.emplace_back(average_success_probability(point.analysis_params()));
            row.emplace_back(hash);
            row.emplace_back(static_cast<double>(cfg.seed));
            row.emplace_back(std::string(to_string(cfg.channel_mode)));
            row.emplace_back(std::string(to_string(cfg.energy.hover_time_policy)));
        });
        // Coverage-expansion headline number: value at the widest field over
        // value at the narrowest, for the 300 m altitude row.
        double v200 = 0.0, v1000 = 0.0;
        {
            RunConfig point = cfg;
            point.net.geometry.altitude = 300.0;
            point.cn_field_radius = 200.0;
            point.finalize();
            v200 = average_success_probability(point.analysis_params());
            point.cn_field_radius = 1000.0;
            v1000 = average_success_probability(point.analysis_params());
        }
        plot["annotations"] = {{"h300_radius200", v200},
                               {"h300_radius1000", v1000},
                               {"expansion_ratio", v1000 / v200}};
        plot["title"] = "Task completion probability vs CN field radius and UAV altitude";
        plot["axes"] = {{"x", {{"column", "altitude_m"}, {"label", "UAV altitude (m)"}}},
                        {"y", {{"column", "cn_field_radius_m"}, {"label", "CN field radius (m)"}}},
                        {"z", {{"column", "analytic"}, {"label", "Average task completion probability"}}}};
        plot["series"] = {{{"style", "surface"}, {"column", "analytic"}}};
    } else if (id == "fig5") {
        const auto altitudes = detail_fig::linspace(50.0, 800.0, 16);
        const auto powers_dbw = detail_fig::linspace(0.0, 30.0, 13);
        table.columns = {"p_d_dbw", "altitude_m", "unconstrained", "constrained",
                         "e_battery_J", "e_fuel_J",
                         "config_hash", "seed", "channel_mode", "hover_time_policy"};
        const std::string hash = config_hash(cfg);
        table.rows.resize(powers_dbw.size() * altitudes.size());
        parallel_for(table.rows.size(), threads, [&](std::uint64_t i) {
            const double pd = units::dbw_to_watt(powers_dbw[i / altitudes.size()]);
            const double h = altitudes[i % altitudes.size()];
            const auto params = cfg.analysis_params();
            auto& row = table.rows[i];
            row.emplace_back(powers_dbw[i / altitudes.size()]);
            row.emplace_back(h);
            row.emplace_back(average_success_probability(with_operating_point(params, pd, h)));
            row.emplace_back(constrained_objective(pd, h, params, cfg.energy, cfg.budgets,
                                                   cfg.optimizer.limits));
            row.emplace_back(cfg.budgets.battery);
            row.emplace_back(cfg.budgets.fuel);
            row.emplace_back(hash);
            row.emplace_back(static_cast<double>(cfg.seed));
            row.emplace_back(std::string(to_string(cfg.channel_mode)));
            row.emplace_back(std::string(to_string(cfg.energy.hover_time_policy)));
        });
        plot["title"] = "Joint impact of transmit power and altitude, ideal vs energy-constrained";
        plot["axes"] = {{"x", {{"column", "altitude_m"}, {"label", "UAV altitude (m)"}}},
                        {"y", {{"column", "p_d_dbw"}, {"label", "UAV transmit power (dBW)"}}}};
        plot["series"] = {{{"style", "surface"}, {"column", "unconstrained"}, {"label", "ideal"}},
                          {{"style", "surface"}, {"column", "constrained"},
                           {"label", "energy-constrained"}}};
    } else if (id == "fig6" || id == "fig7" || id == "fig8") {
        const auto cells = detail_fig::strategy_grid(cfg, 10, 10, threads);
        const std::string hash = config_hash(cfg);
        const std::vector<std::string> strategies{"joint", "power_only", "altitude_only",
                                                  "static_100m_10dBW", "static_50m_10dBW",
                                                  "static_50m_5dBW"};
        if (id == "fig6") {
            table.columns = {"e_battery_J", "e_fuel_J"};
            for (std::size_t s = 1; s < strategies.size(); ++s)
                table.columns.push_back("gain_vs_" + strategies[s] + "_pct");
            for (const char* c : {"config_hash", "seed", "channel_mode", "hover_time_policy"})
                table.columns.push_back(c);
            for (const auto& cell : cells) {
                std::vector<Cell> row{cell.battery, cell.fuel};
                const double pj = cell.results.at("joint").objective;
                for (std::size_t s = 1; s < strategies.size(); ++s) {
                    const double g =
                        performance_gain(pj, cell.results.at(strategies[s]).objective);
                    if (std::isnan(g)) row.emplace_back(std::monostate{});
                    else row.emplace_back(g);
                }
                row.emplace_back(hash);
                row.emplace_back(static_cast<double>(cfg.seed));
                row.emplace_back(std::string(to_string(cfg.channel_mode)));
                row.emplace_back(std::string(to_string(cfg.energy.hover_time_policy)));
                table.rows.push_back(std::move(row));
            }
            plot["title"] = "Performance gain of joint optimization over baselines";
        } else if (id == "fig7") {
            table.columns = {"e_battery_J", "e_fuel_J"};
            for (const auto& s : strategies) table.columns.push_back(s);
            for (const char* c : {"config_hash", "seed", "channel_mode", "hover_time_policy"})
                table.columns.push_back(c);
            for (const auto& cell : cells) {
                std::vector<Cell> row{cell.battery, cell.fuel};
                for (const auto& s : strategies) row.emplace_back(cell.results.at(s).objective);
                row.emplace_back(hash);
                row.emplace_back(static_cast<double>(cfg.seed));
                row.emplace_back(std::string(to_string(cfg.channel_mode)));
                row.emplace_back(std::string(to_string(cfg.energy.hover_time_policy)));
                table.rows.push_back(std::move(row));
            }
            plot["title"] = "Task completion probability per strategy over energy budgets";
        } else {
            table.columns = {"e_battery_J", "e_fuel_J", "objective", "h_star_m", "p_star_dbw",
                             "config_hash", "seed", "channel_mode", "hover_time_policy"};
            for (const auto& cell : cells) {
                const auto& j = cell.results.at("joint");
                table.rows.push_back({cell.battery, cell.fuel, j.objective, j.h_star,
                                      units::watt_to_dbw(j.p_star), hash,
                                      static_cast<double>(cfg.seed),
                                      std::string(to_string(cfg.channel_mode)),
                                      std::string(to_string(cfg.energy.hover_time_policy))});
            }
            plot["title"] = "Jointly optimized operating point over energy budgets";
        }
        plot["axes"] = {{"x", {{"column", "e_battery_J"}, {"label", "Battery budget (J)"}}},
                        {"y", {{"column", "e_fuel_J"}, {"label", "Fuel budget (J)"}}}};
        plot["series"] = {{{"style", "heatmap"}}};
    } else if (id == "fig9") {
        const auto batteries = detail_fig::linspace(20.0, 120.0, 10);
        const auto fuels = detail_fig::linspace(30e3, 60e3, 10);
        table.columns = {"e_battery_J", "e_fuel_J", "objective", "h_star_m", "p_star_dbw",
                         "config_hash", "seed", "channel_mode", "hover_time_policy"};
        const std::string hash = config_hash(cfg);
        table.rows.resize(batteries.size() * fuels.size());
        const auto params = cfg.analysis_params();
        parallel_for(table.rows.size(), threads, [&](std::uint64_t i) {
            const double eb = batteries[i / fuels.size()];
            const double ef = fuels[i % fuels.size()];
            const auto r = bayesian_optimize(params, cfg.energy, EnergyBudgets{eb, ef},
                                             cfg.optimizer.limits, cfg.bayesopt);
            table.rows[i] = {eb, ef, r.objective, r.h_star, units::watt_to_dbw(r.p_star),
                             hash, static_cast<double>(cfg.seed),
                             std::string(to_string(cfg.channel_mode)),
                             std::string(to_string(cfg.energy.hover_time_policy))};
        });
        plot["title"] = "Bayesian-optimization baseline over energy budgets";
        plot["axes"] = {{"x", {{"column", "e_battery_J"}, {"label", "Battery budget (J)"}}},
                        {"y", {{"column", "e_fuel_J"}, {"label", "Fuel budget (J)"}}}};
        plot["series"] = {{{"style", "heatmap"}, {"column", "objective"}}};
    } else {
        throw std::invalid_argument("unknown figure id '" + id + "'");
    }

    plot["data"] = id + ".csv";
    plot["provenance"] = detail_fig::provenance(cfg);

    const fs::path dir(out_dir);
    const fs::path csv_path = dir / (id + ".csv");
    const fs::path json_path = dir / (id + "_plot.json");
    std::filesystem::create_directories(dir);
    detail_fig::write_file(csv_path, to_csv(table));
    detail_fig::write_file(json_path, plot.dump(2) + "\n");
    return {csv_path.string(), json_path.string()};
}

}  // namespace uavcpn
