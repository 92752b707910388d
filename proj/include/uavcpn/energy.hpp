#pragma once

// Dual-energy models for a hybrid-powered rotorcraft relay: propulsion
// (hover + climb) against the fuel budget, transmission against the battery
// budget, and the feasibility predicate over both plus the operating box.

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "uavcpn/analysis.hpp"
#include "uavcpn/quadrature.hpp"

namespace uavcpn {

enum class HoverTimePolicy { worst_case, expected };

struct EnergyParams {
    double correction_factor = 0.1;    // induced power correction
    double takeoff_mass = 26.0;        // kg
    double gravity = 9.8;              // m/s^2
    double air_density = 1.225;        // kg/m^3
    double rotor_disc_area = 1.0;      // m^2
    double profile_drag_coeff = 0.012;
    double blade_area = 0.2;           // m^2
    double tip_speed = 250.0;          // m/s
    double initial_altitude = 50.0;    // m
    HoverTimePolicy hover_time_policy = HoverTimePolicy::worst_case;
    // Offloading tasks served per hovering session; the per-task transmission
    // time scales by this count. Defaults to the expected GU population of
    // the request zone (500/km^2 over a 200 m disk).
    double task_count = 62.83185307179586;
    bool descent_credit = false;  // credit potential energy for h < h0

    void validate() const {
        const bool pos = correction_factor > 0.0 && takeoff_mass > 0.0 && gravity > 0.0 &&
                         air_density > 0.0 && rotor_disc_area > 0.0 &&
                         profile_drag_coeff > 0.0 && blade_area > 0.0 && tip_speed > 0.0 &&
                         initial_altitude > 0.0;
        if (!pos) throw std::invalid_argument("energy: physical parameters must be > 0");
        if (!(task_count > 0.0)) throw std::invalid_argument("energy.task_count must be > 0");
    }
};

struct EnergyBudgets {
    double battery = 40.0;  // J
    double fuel = 40000.0;  // J

    void validate() const {
        if (!(battery >= 0.0) || !(fuel >= 0.0))
            throw std::invalid_argument("energy budgets must be >= 0");
    }
};

struct OperatingLimits {
    double p_min = 1.0;     // W (0 dBW)
    double p_max = 1000.0;  // W (30 dBW)
    double h_min = 50.0;    // m
    double h_max = 800.0;   // m

    void validate() const {
        if (!(p_min > 0.0 && p_min <= p_max) || !(h_min > 0.0 && h_min <= h_max))
            throw std::invalid_argument("operating limits must be ordered and positive");
    }
};

/// Rotor power to hold altitude: induced term (1+c) Wt^(3/2) / sqrt(2 rho A)
/// plus blade profile term delta rho S v_tip^3 / 8, with Wt the weight in
/// newtons.
inline double hover_power(const EnergyParams& ep) {
    const double weight = ep.takeoff_mass * ep.gravity;
    const double induced =
        (1.0 + ep.correction_factor) * std::pow(weight, 1.5) /
        std::sqrt(2.0 * ep.air_density * ep.rotor_disc_area);
    const double profile = ep.profile_drag_coeff * ep.air_density * ep.blade_area *
                           ep.tip_speed * ep.tip_speed * ep.tip_speed / 8.0;
    return induced + profile;
}

namespace detail {

// Representative per-task offload + forward time at the given operating
// point. worst_case serves the edge GU and the farthest reachable CN;
// expected uses the mean uplink time and the mean radius of the service disk.
inline double per_task_hover_time(double p_d, double h, const AnalysisParams& params,
                                  const EnergyParams& ep) {
    if (params.net.task.data_size == 0.0) return 0.0;
    const AnalysisParams p = with_operating_point(params, p_d, h);
    const double edge = p.net.geometry.request_radius;
    const double rc_worst = max_service_radius(edge, p.net, p.cn_field_radius);
    if (ep.hover_time_policy == HoverTimePolicy::worst_case)
        return uplink_latency(edge, p.net) + downlink_latency(rc_worst, p.net);

    const auto t1_weighted = [&](double r) { return uplink_latency(r, p.net) * r; };
    const double mean_t1 =
        2.0 / (edge * edge) *
        integrate(t1_weighted, 0.0, edge, p.quadrature_rel_tol, 1e-15).value;
    return mean_t1 + downlink_latency(2.0 / 3.0 * rc_worst, p.net);
}

inline double forwarding_time(double p_d, double h, const AnalysisParams& params,
                              const EnergyParams& ep) {
    const AnalysisParams p = with_operating_point(params, p_d, h);
    const double rc_worst =
        max_service_radius(p.net.geometry.request_radius, p.net, p.cn_field_radius);
    const double r = ep.hover_time_policy == HoverTimePolicy::worst_case
                         ? rc_worst
                         : 2.0 / 3.0 * rc_worst;
    return downlink_latency(r, p.net);
}

}  // namespace detail

/// Total hover time for one service session: per-task time scaled by the
/// served task count. +inf when a link in the chain is dead.
inline double hovering_duration(double p_d, double h, const AnalysisParams& params,
                                const EnergyParams& ep) {
    return detail::per_task_hover_time(p_d, h, params, ep) * ep.task_count;
}

/// Hover energy plus climb work. Descending below the initial altitude is
/// credited only when descent_credit is set.
inline double propulsion_energy(double p_d, double h, const AnalysisParams& params,
                                const EnergyParams& ep) {
    const double weight = ep.takeoff_mass * ep.gravity;
    double climb = weight * (h - ep.initial_altitude);
    if (!ep.descent_credit && climb < 0.0) climb = 0.0;
    return hover_power(ep) * hovering_duration(p_d, h, params, ep) + climb;
}

/// Transmit energy for forwarding the session's tasks: P_d times the total
/// forwarding time. A dead downlink (t2 = +inf) yields +inf, so the point is
/// treated as infeasible even in the P_d -> 0 limit.
inline double communication_energy(double p_d, double h, const AnalysisParams& params,
                                   const EnergyParams& ep) {
    if (params.net.task.data_size == 0.0) return 0.0;
    const double t2 = detail::forwarding_time(p_d, h, params, ep);
    if (std::isinf(t2)) return std::numeric_limits<double>::infinity();
    return p_d * t2 * ep.task_count;
}

struct FeasibilityReport {
    bool feasible = true;
    bool battery_exceeded = false;
    bool fuel_exceeded = false;
    bool power_out_of_range = false;
    bool altitude_out_of_range = false;
    double comm_energy = 0.0;
    double prop_energy = 0.0;

    std::string describe() const {
        if (feasible) return "feasible";
        std::ostringstream os;
        os << "infeasible:";
        if (battery_exceeded) os << " battery(E_comm=" << comm_energy << " J)";
        if (fuel_exceeded) os << " fuel(E_prop=" << prop_energy << " J)";
        if (power_out_of_range) os << " power-bounds";
        if (altitude_out_of_range) os << " altitude-bounds";
        return os.str();
    }
};

inline FeasibilityReport is_feasible(double p_d, double h, const EnergyBudgets& budgets,
                                     const OperatingLimits& limits,
                                     const AnalysisParams& params, const EnergyParams& ep) {
    FeasibilityReport r;
    r.power_out_of_range = !(p_d >= limits.p_min && p_d <= limits.p_max);
    r.altitude_out_of_range = !(h >= limits.h_min && h <= limits.h_max);
    if (!r.power_out_of_range && !r.altitude_out_of_range) {
        r.comm_energy = communication_energy(p_d, h, params, ep);
        r.prop_energy = propulsion_energy(p_d, h, params, ep);
        r.battery_exceeded = !(r.comm_energy <= budgets.battery);
        r.fuel_exceeded = !(r.prop_energy <= budgets.fuel);
    }
    r.feasible = !r.battery_exceeded && !r.fuel_exceeded && !r.power_out_of_range &&
                 !r.altitude_out_of_range;
    return r;
}

}  // namespace uavcpn
