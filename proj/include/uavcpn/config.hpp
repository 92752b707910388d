#pragma once

// Flat key-value run configuration with mandatory units on ambiguous keys.
// Values normalize to SI on parse; serialization always emits SI, so
// parse -> serialize -> parse is the identity on normalized configs.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uavcpn/analysis.hpp"
#include "uavcpn/bayesopt.hpp"
#include "uavcpn/energy.hpp"
#include "uavcpn/montecarlo.hpp"
#include "uavcpn/optimizer.hpp"
#include "uavcpn/units.hpp"

namespace uavcpn {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class OutputFormat { csv, json };

struct SweepAxis {
    std::string path;
    std::vector<double> values;  // SI
};

struct RunConfig {
    std::string scenario = "default";
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    ChannelMode channel_mode = ChannelMode::mean_power;
    OutputFormat format = OutputFormat::csv;

    NetworkParams net;
    double gu_density = 500e-6;  // per m^2
    ComputeModel compute;
    double quadrature_rel_tol = 1e-6;
    std::optional<double> cn_field_radius;  // m

    EnergyParams energy;
    bool task_count_auto = true;
    EnergyBudgets budgets;
    OptimizerConfig optimizer;
    SimConfig sim;
    BayesOptConfig bayesopt;

    std::vector<SweepAxis> sweep_axes;

    AnalysisParams analysis_params() const {
        return AnalysisParams{net, compute, quadrature_rel_tol, cn_field_radius};
    }

    /// Derives dependent values and validates every block.
    void finalize() {
        if (task_count_auto)
            energy.task_count = gu_density * std::numbers::pi * net.geometry.request_radius *
                                net.geometry.request_radius;
        sim.seed = seed;
        sim.channel_mode = channel_mode;
        bayesopt.seed = seed;
        net.validate();
        compute.validate();
        if (!(gu_density >= 0.0)) throw ConfigError("geometry.gu_density: must be >= 0");
        if (!(quadrature_rel_tol > 0.0 && quadrature_rel_tol <= 1e-2))
            throw ConfigError("analysis.quadrature_rel_tol: must be in (0, 1e-2]");
        if (cn_field_radius && !(*cn_field_radius > 0.0))
            throw ConfigError("analysis.cn_field_radius: must be > 0");
        energy.validate();
        budgets.validate();
        optimizer.validate();
        sim.validate();
        bayesopt.validate();
    }
};

namespace detail_config {

enum class Kind {
    dimensionless,
    count,
    power,       // W | dBW | dBm
    ratio_db,    // dB | linear
    frequency,   // Hz | kHz | MHz
    data_size,   // bits | MB
    time,        // s | ms
    density,     // per_m2 | per_km2
    length,      // m | km
    energy,      // J | kJ
    mass,        // kg (optional)
    speed,       // m_s (optional)
    area,        // m2 (optional)
    accel,       // m_s2 (optional)
    mass_density // kg_m3 (optional)
};

inline const char* si_unit(Kind k) {
    switch (k) {
        case Kind::power: return "W";
        case Kind::ratio_db: return "linear";
        case Kind::frequency: return "Hz";
        case Kind::data_size: return "bits";
        case Kind::time: return "s";
        case Kind::density: return "per_m2";
        case Kind::length: return "m";
        case Kind::energy: return "J";
        case Kind::mass: return "kg";
        case Kind::speed: return "m_s";
        case Kind::area: return "m2";
        case Kind::accel: return "m_s2";
        case Kind::mass_density: return "kg_m3";
        default: return "";
    }
}

inline double to_si(double v, const std::string& unit, Kind kind, const std::string& path) {
    const auto fail_unit = [&]() -> double {
        throw ConfigError(path + ": unknown unit '" + unit + "'");
    };
    switch (kind) {
        case Kind::dimensionless:
        case Kind::count:
            if (!unit.empty()) throw ConfigError(path + ": unexpected unit '" + unit + "'");
            return v;
        case Kind::power:
            if (unit == "W") return v;
            if (unit == "dBW") return units::dbw_to_watt(v);
            if (unit == "dBm") return units::dbm_to_watt(v);
            if (unit.empty())
                throw ConfigError(path + ": unit required (W|dBW|dBm)");
            return fail_unit();
        case Kind::ratio_db:
            if (unit == "linear") return v;
            if (unit == "dB") return units::db_attenuation_to_linear(v);
            if (unit.empty()) throw ConfigError(path + ": unit required (dB|linear)");
            return fail_unit();
        case Kind::frequency:
            if (unit == "Hz") return v;
            if (unit == "kHz") return v * 1e3;
            if (unit == "MHz") return v * 1e6;
            if (unit.empty()) throw ConfigError(path + ": unit required (Hz|kHz|MHz)");
            return fail_unit();
        case Kind::data_size:
            if (unit == "bits" || unit == "bit") return v;
            if (unit == "MB") return units::megabytes_to_bits(v);
            if (unit.empty()) throw ConfigError(path + ": unit required (bits|MB)");
            return fail_unit();
        case Kind::time:
            if (unit == "s") return v;
            if (unit == "ms") return units::ms_to_s(v);
            if (unit.empty()) throw ConfigError(path + ": unit required (s|ms)");
            return fail_unit();
        case Kind::density:
            if (unit == "per_m2") return v;
            if (unit == "per_km2") return units::per_km2_to_per_m2(v);
            if (unit.empty()) throw ConfigError(path + ": unit required (per_m2|per_km2)");
            return fail_unit();
        case Kind::length:
            if (unit == "m") return v;
            if (unit == "km") return units::km_to_m(v);
            if (unit.empty()) throw ConfigError(path + ": unit required (m|km)");
            return fail_unit();
        case Kind::energy:
            if (unit == "J") return v;
            if (unit == "kJ") return units::kj_to_j(v);
            if (unit.empty()) throw ConfigError(path + ": unit required (J|kJ)");
            return fail_unit();
        case Kind::mass:
            if (unit.empty() || unit == "kg") return v;
            return fail_unit();
        case Kind::speed:
            if (unit.empty() || unit == "m_s") return v;
            return fail_unit();
        case Kind::area:
            if (unit.empty() || unit == "m2") return v;
            return fail_unit();
        case Kind::accel:
            if (unit.empty() || unit == "m_s2") return v;
            return fail_unit();
        case Kind::mass_density:
            if (unit.empty() || unit == "kg_m3") return v;
            return fail_unit();
    }
    return fail_unit();
}

struct NumericKey {
    const char* path;
    Kind kind;
    double* (*slot)(RunConfig&);
};

// Registered numeric keys; the same table backs config parsing, sweep-axis
// binding and serialization.
inline const std::vector<NumericKey>& numeric_keys() {
    static const std::vector<NumericKey> keys = {
        {"env.b_slope", Kind::dimensionless, [](RunConfig& c) { return &c.net.env.b_slope; }},
        {"env.c_offset", Kind::dimensionless, [](RunConfig& c) { return &c.net.env.c_offset; }},
        {"env.nlos_attenuation", Kind::ratio_db,
         [](RunConfig& c) { return &c.net.env.nlos_attenuation; }},
        {"env.pathloss_up", Kind::dimensionless,
         [](RunConfig& c) { return &c.net.env.pathloss_up; }},
        {"env.pathloss_down", Kind::dimensionless,
         [](RunConfig& c) { return &c.net.env.pathloss_down; }},
        {"radio.gu_tx_power", Kind::power,
         [](RunConfig& c) { return &c.net.radio.gu_tx_power; }},
        {"radio.uav_tx_power", Kind::power,
         [](RunConfig& c) { return &c.net.radio.uav_tx_power; }},
        {"radio.bandwidth", Kind::frequency,
         [](RunConfig& c) { return &c.net.radio.bandwidth; }},
        {"radio.noise_power", Kind::power,
         [](RunConfig& c) { return &c.net.radio.noise_power; }},
        {"task.data_size", Kind::data_size, [](RunConfig& c) { return &c.net.task.data_size; }},
        {"task.max_latency", Kind::time, [](RunConfig& c) { return &c.net.task.max_latency; }},
        {"geometry.altitude", Kind::length,
         [](RunConfig& c) { return &c.net.geometry.altitude; }},
        {"geometry.request_radius", Kind::length,
         [](RunConfig& c) { return &c.net.geometry.request_radius; }},
        {"geometry.service_window_radius", Kind::length,
         [](RunConfig& c) { return &c.net.geometry.service_window_radius; }},
        {"geometry.cn_density", Kind::density,
         [](RunConfig& c) { return &c.net.geometry.cn_density; }},
        {"geometry.gu_density", Kind::density, [](RunConfig& c) { return &c.gu_density; }},
        {"energy.correction_factor", Kind::dimensionless,
         [](RunConfig& c) { return &c.energy.correction_factor; }},
        {"energy.takeoff_mass", Kind::mass,
         [](RunConfig& c) { return &c.energy.takeoff_mass; }},
        {"energy.gravity", Kind::accel, [](RunConfig& c) { return &c.energy.gravity; }},
        {"energy.air_density", Kind::mass_density,
         [](RunConfig& c) { return &c.energy.air_density; }},
        {"energy.rotor_disc_area", Kind::area,
         [](RunConfig& c) { return &c.energy.rotor_disc_area; }},
        {"energy.profile_drag_coeff", Kind::dimensionless,
         [](RunConfig& c) { return &c.energy.profile_drag_coeff; }},
        {"energy.blade_area", Kind::area, [](RunConfig& c) { return &c.energy.blade_area; }},
        {"energy.tip_speed", Kind::speed, [](RunConfig& c) { return &c.energy.tip_speed; }},
        {"energy.initial_altitude", Kind::length,
         [](RunConfig& c) { return &c.energy.initial_altitude; }},
        {"budgets.battery", Kind::energy, [](RunConfig& c) { return &c.budgets.battery; }},
        {"budgets.fuel", Kind::energy, [](RunConfig& c) { return &c.budgets.fuel; }},
        {"optimizer.p_min", Kind::power,
         [](RunConfig& c) { return &c.optimizer.limits.p_min; }},
        {"optimizer.p_max", Kind::power,
         [](RunConfig& c) { return &c.optimizer.limits.p_max; }},
        {"optimizer.h_min", Kind::length,
         [](RunConfig& c) { return &c.optimizer.limits.h_min; }},
        {"optimizer.h_max", Kind::length,
         [](RunConfig& c) { return &c.optimizer.limits.h_max; }},
        {"optimizer.epsilon", Kind::dimensionless,
         [](RunConfig& c) { return &c.optimizer.epsilon; }},
        {"optimizer.fallback_altitude", Kind::length,
         [](RunConfig& c) { return &c.optimizer.fallback_altitude; }},
        {"optimizer.fallback_power", Kind::power,
         [](RunConfig& c) { return &c.optimizer.fallback_power; }},
        {"optimizer.initial_altitude", Kind::length,
         [](RunConfig& c) { return &c.optimizer.initial_altitude; }},
        {"optimizer.initial_power", Kind::power,
         [](RunConfig& c) { return &c.optimizer.initial_power; }},
        {"optimizer.fd_step_rel", Kind::dimensionless,
         [](RunConfig& c) { return &c.optimizer.fd_step_rel; }},
        {"optimizer.lr_init", Kind::dimensionless,
         [](RunConfig& c) { return &c.optimizer.lr_init; }},
        {"optimizer.lr_decay", Kind::dimensionless,
         [](RunConfig& c) { return &c.optimizer.lr_decay; }},
        {"analysis.quadrature_rel_tol", Kind::dimensionless,
         [](RunConfig& c) { return &c.quadrature_rel_tol; }},
        {"compute.t_c", Kind::time,
         [](RunConfig& c) -> double* {
             auto* det = std::get_if<DeterministicCompute>(&c.compute.variant);
             if (!det) throw ConfigError("compute.t_c: requires compute.variant=deterministic");
             return &det->latency;
         }},
        {"compute.mean", Kind::time,
         [](RunConfig& c) -> double* {
             if (auto* e = std::get_if<ExponentialCompute>(&c.compute.variant)) return &e->mean;
             if (auto* s = std::get_if<ShiftedExponentialCompute>(&c.compute.variant))
                 return &s->mean;
             throw ConfigError("compute.mean: requires an exponential compute variant");
         }},
        {"compute.shift", Kind::time,
         [](RunConfig& c) -> double* {
             auto* s = std::get_if<ShiftedExponentialCompute>(&c.compute.variant);
             if (!s) throw ConfigError("compute.shift: requires compute.variant=shifted_exponential");
             return &s->shift;
         }},
        {"compute.reference_data_size", Kind::data_size,
         [](RunConfig& c) { return &c.compute.reference_data_size; }},
        {"energy.task_count", Kind::count,
         [](RunConfig& c) {
             c.task_count_auto = false;
             return &c.energy.task_count;
         }},
        {"analysis.cn_field_radius", Kind::length,
         [](RunConfig& c) {
             if (!c.cn_field_radius) c.cn_field_radius = 0.0;
             return &*c.cn_field_radius;
         }},
        {"sim.window_radius", Kind::length,
         [](RunConfig& c) { return &c.sim.window_radius; }},
    };
    return keys;
}

inline const NumericKey* find_numeric(const std::string& path) {
    for (const auto& k : numeric_keys())
        if (path == k.path) return &k;
    return nullptr;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline double parse_number(const std::string& tok, const std::string& path) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(path + ": not a number: '" + tok + "'");
    }
}

// Splits "linspace(50, 800, 15) m" into the generator expression (spaces
// stripped) and the trailing unit token.
inline std::pair<std::string, std::string> split_list_value(const std::string& value,
                                                            const std::string& path) {
    const auto close = value.find(')');
    if (close == std::string::npos)
        throw ConfigError(path + ": expected linspace(...), logspace(...) or list(...)");
    std::string spec;
    for (char c : value.substr(0, close + 1))
        if (!std::isspace(static_cast<unsigned char>(c))) spec += c;
    std::string unit = value.substr(close + 1);
    const auto a = unit.find_first_not_of(" \t");
    unit = a == std::string::npos ? std::string{} : unit.substr(a);
    const auto b = unit.find_last_not_of(" \t");
    if (b != std::string::npos) unit = unit.substr(0, b + 1);
    return {spec, unit};
}

// "linspace(a,b,n)", "logspace(a,b,n)" (log10 endpoints) or "list(v1,...)".
inline std::vector<double> parse_value_list(const std::string& spec, const std::string& path) {
    const auto open = spec.find('(');
    const auto close = spec.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ConfigError(path + ": expected linspace(...), logspace(...) or list(...)");
    const std::string fn = spec.substr(0, open);
    std::vector<double> args;
    std::string body = spec.substr(open + 1, close - open - 1);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) args.push_back(parse_number(tok, path));

    std::vector<double> out;
    if (fn == "list") {
        if (args.empty()) throw ConfigError(path + ": empty list");
        out = args;
    } else if (fn == "linspace" || fn == "logspace") {
        if (args.size() != 3) throw ConfigError(path + ": " + fn + " needs (lo, hi, n)");
        const int n = static_cast<int>(args[2]);
        if (n < 1 || args[2] != n) throw ConfigError(path + ": point count must be integer >= 1");
        for (int i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            const double v = args[0] + (args[1] - args[0]) * t;
            out.push_back(fn == "linspace" ? v : std::pow(10.0, v));
        }
    } else {
        throw ConfigError(path + ": unknown generator '" + fn + "'");
    }
    return out;
}

}  // namespace detail_config

inline const char* to_string(ChannelMode m) {
    return m == ChannelMode::mean_power ? "mean_power" : "bernoulli";
}
inline const char* to_string(HoverTimePolicy p) {
    return p == HoverTimePolicy::worst_case ? "worst_case" : "expected";
}
inline const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

/// Applies one `key = value` assignment (SI or explicitly united value) to
/// the config. Throws ConfigError with the offending path.
inline void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    using namespace detail_config;
    const auto toks = split_ws(value);
    if (toks.empty()) throw ConfigError(key + ": missing value");

    if (key == "scenario") { cfg.scenario = toks[0]; return; }
    if (key == "out_dir") { cfg.out_dir = toks[0]; return; }
    if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(std::stoull(toks[0]));
        return;
    }
    if (key == "channel_mode") {
        if (toks[0] == "mean_power") cfg.channel_mode = ChannelMode::mean_power;
        else if (toks[0] == "bernoulli") cfg.channel_mode = ChannelMode::bernoulli;
        else throw ConfigError("channel_mode: expected mean_power|bernoulli");
        return;
    }
    if (key == "hover_time_policy") {
        if (toks[0] == "worst_case") cfg.energy.hover_time_policy = HoverTimePolicy::worst_case;
        else if (toks[0] == "expected") cfg.energy.hover_time_policy = HoverTimePolicy::expected;
        else throw ConfigError("hover_time_policy: expected worst_case|expected");
        return;
    }
    if (key == "format") {
        if (toks[0] == "csv") cfg.format = OutputFormat::csv;
        else if (toks[0] == "json") cfg.format = OutputFormat::json;
        else throw ConfigError("format: expected csv|json");
        return;
    }
    if (key == "compute.variant") {
        if (toks[0] == "deterministic") cfg.compute.variant = DeterministicCompute{};
        else if (toks[0] == "exponential") cfg.compute.variant = ExponentialCompute{};
        else if (toks[0] == "shifted_exponential")
            cfg.compute.variant = ShiftedExponentialCompute{};
        else if (toks[0] == "empirical") cfg.compute.variant = EmpiricalCompute{};
        else throw ConfigError("compute.variant: unknown variant '" + toks[0] + "'");
        return;
    }
    if (key == "compute.samples") {
        auto* emp = std::get_if<EmpiricalCompute>(&cfg.compute.variant);
        if (!emp) throw ConfigError("compute.samples: requires compute.variant=empirical");
        const auto [spec, unit] = split_list_value(value, key);
        emp->samples = parse_value_list(spec, key);
        for (double& v : emp->samples) v = to_si(v, unit, Kind::time, key);
        return;
    }
    if (key == "compute.workload_scaling" || key == "energy.descent_credit") {
        bool b;
        if (toks[0] == "true") b = true;
        else if (toks[0] == "false") b = false;
        else throw ConfigError(key + ": expected true|false");
        (key == "compute.workload_scaling" ? cfg.compute.workload_scaling
                                           : cfg.energy.descent_credit) = b;
        return;
    }
    if (key == "optimizer.max_iter" || key == "optimizer.window" || key == "sim.trials" ||
        key == "sim.gu_samples" || key == "bayesopt.eval_budget") {
        const double v = parse_number(toks[0], key);
        if (v < 0 || v != std::floor(v)) throw ConfigError(key + ": expected a whole number");
        if (key == "optimizer.max_iter") cfg.optimizer.max_iter = static_cast<int>(v);
        else if (key == "optimizer.window") cfg.optimizer.window = static_cast<int>(v);
        else if (key == "sim.trials") cfg.sim.trials = static_cast<std::uint64_t>(v);
        else if (key == "sim.gu_samples") cfg.sim.gu_samples = static_cast<std::uint64_t>(v);
        else cfg.bayesopt.eval_budget = static_cast<int>(v);
        return;
    }
    if (key.rfind("sweep.", 0) == 0) {
        const std::string path = key.substr(6);
        const auto* nk = find_numeric(path);
        if (!nk) throw ConfigError(key + ": unknown sweep parameter '" + path + "'");
        const auto [spec, unit] = split_list_value(value, key);
        SweepAxis axis{path, parse_value_list(spec, key)};
        for (double& v : axis.values) v = to_si(v, unit, nk->kind, key);
        for (auto& existing : cfg.sweep_axes)
            if (existing.path == path) {
                existing = axis;
                return;
            }
        cfg.sweep_axes.push_back(std::move(axis));
        return;
    }

    if (const auto* nk = find_numeric(key)) {
        const std::string unit = toks.size() > 1 ? toks[1] : "";
        if (toks.size() > 2) throw ConfigError(key + ": trailing tokens after value");
        *nk->slot(cfg) = to_si(parse_number(toks[0], key), unit, nk->kind, key);
        return;
    }
    throw ConfigError("unknown key '" + key + "'");
}

/// Parses a whole config document on top of the Table I/II defaults.
inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
        if (trimmed.empty()) continue;
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r\n");
            const auto b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        try {
            apply_config_key(cfg, key, value);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(lineno) + ", " + key + ": " + e.what());
        }
    }
    cfg.finalize();
    return cfg;
}

/// Canonical SI serialization; stable key order, full precision.
inline std::string serialize_config(const RunConfig& cfg) {
    using namespace detail_config;
    std::ostringstream os;
    os << "scenario = " << cfg.scenario << "\n";
    os << "out_dir = " << cfg.out_dir << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "channel_mode = " << to_string(cfg.channel_mode) << "\n";
    os << "hover_time_policy = " << to_string(cfg.energy.hover_time_policy) << "\n";
    os << "format = " << to_string(cfg.format) << "\n";

    os << "compute.variant = "
       << std::visit(
              [](const auto& v) -> const char* {
                  using T = std::decay_t<decltype(v)>;
                  if constexpr (std::is_same_v<T, DeterministicCompute>) return "deterministic";
                  else if constexpr (std::is_same_v<T, ExponentialCompute>) return "exponential";
                  else if constexpr (std::is_same_v<T, ShiftedExponentialCompute>)
                      return "shifted_exponential";
                  else return "empirical";
              },
              cfg.compute.variant)
       << "\n";
    if (const auto* emp = std::get_if<EmpiricalCompute>(&cfg.compute.variant)) {
        os << "compute.samples = list(";
        for (std::size_t i = 0; i < emp->samples.size(); ++i)
            os << (i ? "," : "") << format_double(emp->samples[i]);
        os << ") s\n";
    }
    os << "compute.workload_scaling = " << (cfg.compute.workload_scaling ? "true" : "false")
       << "\n";
    os << "energy.descent_credit = " << (cfg.energy.descent_credit ? "true" : "false") << "\n";
    os << "optimizer.max_iter = " << cfg.optimizer.max_iter << "\n";
    os << "optimizer.window = " << cfg.optimizer.window << "\n";
    os << "sim.trials = " << cfg.sim.trials << "\n";
    os << "sim.gu_samples = " << cfg.sim.gu_samples << "\n";
    os << "bayesopt.eval_budget = " << cfg.bayesopt.eval_budget << "\n";

    RunConfig mut = cfg;  // slot accessors may touch flags; read from a copy
    for (const auto& k : numeric_keys()) {
        if (std::string_view(k.path) == "compute.t_c" &&
            !std::holds_alternative<DeterministicCompute>(cfg.compute.variant))
            continue;
        if (std::string_view(k.path) == "compute.mean" &&
            !std::holds_alternative<ExponentialCompute>(cfg.compute.variant) &&
            !std::holds_alternative<ShiftedExponentialCompute>(cfg.compute.variant))
            continue;
        if (std::string_view(k.path) == "compute.shift" &&
            !std::holds_alternative<ShiftedExponentialCompute>(cfg.compute.variant))
            continue;
        if (std::string_view(k.path) == "analysis.cn_field_radius" && !cfg.cn_field_radius)
            continue;
        const double v = *k.slot(mut);
        os << k.path << " = " << format_double(v);
        if (const char* u = si_unit(k.kind); *u) os << " " << u;
        os << "\n";
    }

    for (const auto& axis : cfg.sweep_axes) {
        const auto* nk = find_numeric(axis.path);
        os << "sweep." << axis.path << " = list(";
        for (std::size_t i = 0; i < axis.values.size(); ++i)
            os << (i ? "," : "") << format_double(axis.values[i]);
        os << ")";
        if (const char* u = si_unit(nk->kind); *u) os << " " << u;
        os << "\n";
    }
    return os.str();
}

/// FNV-1a over the canonical serialization, as a 16-digit hex tag embedded
/// in every results file. Output routing (directory, format) is excluded so
/// the tag identifies the experiment, not where its files land.
inline std::string config_hash(const RunConfig& cfg) {
    RunConfig canon = cfg;
    canon.out_dir = "out";
    canon.format = OutputFormat::csv;
    const std::string s = serialize_config(canon);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace uavcpn
