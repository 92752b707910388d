#pragma once

// Probabilistic LoS/NLoS air-ground channel: link budgets, transmission
// latencies and the latency-constrained maximum service radius.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace uavcpn {

inline constexpr double kInfiniteLatency = std::numeric_limits<double>::infinity();

enum class ChannelMode { mean_power, bernoulli };

struct EnvironmentParams {
    double b_slope = 0.136;          // logistic slope of the LoS model
    double c_offset = 11.95;         // logistic offset, degrees
    double nlos_attenuation = 0.01;  // linear power factor in (0,1]
    double pathloss_up = 2.0;
    double pathloss_down = 2.0;

    void validate() const {
        if (!(b_slope > 0.0) || !std::isfinite(b_slope))
            throw std::invalid_argument("env.b_slope must be > 0");
        if (!(c_offset > 0.0) || !std::isfinite(c_offset))
            throw std::invalid_argument("env.c_offset must be > 0");
        if (!(nlos_attenuation > 0.0 && nlos_attenuation <= 1.0))
            throw std::invalid_argument("env.nlos_attenuation must be in (0,1]");
        if (!(pathloss_up >= 2.0) || !(pathloss_down >= 2.0))
            throw std::invalid_argument("path loss exponents must be >= 2");
    }
};

struct RadioParams {
    double gu_tx_power = 100.0;   // W
    double uav_tx_power = 100.0;  // W
    double bandwidth = 8e6;       // Hz
    double noise_power = 1e-15;   // W

    void validate() const {
        if (!(gu_tx_power > 0.0) || !(uav_tx_power > 0.0) || !(bandwidth > 0.0) ||
            !(noise_power > 0.0))
            throw std::invalid_argument("radio parameters must be strictly positive");
    }
};

struct TaskSpec {
    double data_size = 8e6;     // bits
    double max_latency = 0.055; // s

    void validate() const {
        if (!(data_size > 0.0)) throw std::invalid_argument("task.data_size must be > 0");
        if (!(max_latency > 0.0)) throw std::invalid_argument("task.max_latency must be > 0");
    }
};

struct GeometryParams {
    double altitude = 200.0;              // m
    double request_radius = 200.0;        // m
    double service_window_radius = 1000.0; // m, Monte Carlo sampling window
    double cn_density = 5e-6;             // nodes per m^2

    void validate() const {
        if (!(altitude > 0.0)) throw std::invalid_argument("geometry.altitude must be > 0");
        if (!(request_radius > 0.0) || !(request_radius <= service_window_radius))
            throw std::invalid_argument(
                "geometry: need 0 < request_radius <= service_window_radius");
        if (!(cn_density >= 0.0)) throw std::invalid_argument("geometry.cn_density must be >= 0");
    }
};

struct NetworkParams {
    EnvironmentParams env;
    RadioParams radio;
    TaskSpec task;
    GeometryParams geometry;

    void validate() const {
        env.validate();
        radio.validate();
        task.validate();
        geometry.validate();
    }
};

namespace detail {
inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be finite, got " << v;
        throw std::invalid_argument(os.str());
    }
}
}  // namespace detail

/// Probability that an air-ground link at the given geometry is line-of-sight.
/// The elevation angle inside the logistic is evaluated in degrees; a link
/// straight below the platform (horizontal_dist = 0) has elevation 90 deg.
inline double los_probability(double altitude, double horizontal_dist,
                              const EnvironmentParams& env) {
    detail::require_finite(altitude, "altitude");
    detail::require_finite(horizontal_dist, "horizontal_dist");
    if (!(altitude > 0.0)) throw std::invalid_argument("altitude must be > 0");
    if (!(horizontal_dist >= 0.0)) throw std::invalid_argument("horizontal_dist must be >= 0");
    const double elev_deg =
        horizontal_dist == 0.0
            ? 90.0
            : (180.0 / std::numbers::pi) * std::atan(altitude / horizontal_dist);
    return 1.0 / (1.0 + env.c_offset * std::exp(-env.b_slope * (elev_deg - env.c_offset)));
}

/// Received power averaged over the LoS Bernoulli:
/// [P_LoS + (1 - P_LoS) * eta] * tx_power * (r^2 + h^2)^(-alpha/2).
inline double mean_received_power(double tx_power, double horizontal_dist, double altitude,
                                  double pathloss_exp, const EnvironmentParams& env) {
    detail::require_finite(tx_power, "tx_power");
    if (!(tx_power > 0.0)) throw std::invalid_argument("tx_power must be > 0");
    const double p = los_probability(altitude, horizontal_dist, env);
    const double mix = p + (1.0 - p) * env.nlos_attenuation;
    const double d2 = horizontal_dist * horizontal_dist + altitude * altitude;
    return mix * tx_power * std::pow(d2, -pathloss_exp / 2.0);
}

/// Received power conditioned on the realized LoS state of the link.
inline double conditional_received_power(double tx_power, double horizontal_dist,
                                         double altitude, double pathloss_exp,
                                         const EnvironmentParams& env, bool is_los) {
    detail::require_finite(tx_power, "tx_power");
    if (!(tx_power > 0.0)) throw std::invalid_argument("tx_power must be > 0");
    if (!(altitude > 0.0)) throw std::invalid_argument("altitude must be > 0");
    const double d2 = horizontal_dist * horizontal_dist + altitude * altitude;
    const double los_power = tx_power * std::pow(d2, -pathloss_exp / 2.0);
    return is_los ? los_power : env.nlos_attenuation * los_power;
}

/// Shannon rate in bit/s; zero received power gives zero rate.
inline double link_rate(double received_power, const RadioParams& radio) {
    if (!(received_power >= 0.0)) throw std::invalid_argument("received_power must be >= 0");
    return radio.bandwidth * std::log2(1.0 + received_power / radio.noise_power);
}

/// D / rate with the +inf sentinel for a dead link. A zero-size payload takes
/// zero time even on a dead link.
inline double transmission_latency(double data_size_bits, double rate) {
    if (data_size_bits == 0.0) return 0.0;
    if (rate <= 0.0) return kInfiniteLatency;
    return data_size_bits / rate;
}

inline double uplink_latency(double r_u, const NetworkParams& p) {
    const double pr = mean_received_power(p.radio.gu_tx_power, r_u, p.geometry.altitude,
                                          p.env.pathloss_up, p.env);
    return transmission_latency(p.task.data_size, link_rate(pr, p.radio));
}

inline double downlink_latency(double r_c, const NetworkParams& p) {
    const double pr = mean_received_power(p.radio.uav_tx_power, r_c, p.geometry.altitude,
                                          p.env.pathloss_down, p.env);
    return transmission_latency(p.task.data_size, link_rate(pr, p.radio));
}

namespace detail {

// Solves t2(r) = latency_budget for r by bisection on [0, expanding bracket].
// t2 is continuous and strictly increasing in r under the mean-power channel.
// Residual tolerance 1e-9 s; throws with the bracket state on non-convergence.
inline double solve_downlink_radius(double latency_budget, const NetworkParams& p,
                                    std::optional<double> hard_cap) {
    constexpr double kResidualTol = 1e-9;
    constexpr int kMaxIter = 200;

    if (!(latency_budget > 0.0)) return 0.0;
    if (std::isinf(latency_budget))
        return hard_cap ? *hard_cap : std::numeric_limits<double>::infinity();
    if (downlink_latency(0.0, p) >= latency_budget) return 0.0;
    if (hard_cap && downlink_latency(*hard_cap, p) <= latency_budget) return *hard_cap;

    double lo = 0.0;
    double hi = p.geometry.service_window_radius;
    int iter = 0;
    while (downlink_latency(hi, p) < latency_budget) {
        lo = hi;
        hi *= 2.0;
        if (++iter > kMaxIter)
            throw std::runtime_error("service radius bracket expansion failed, lo=" +
                                     std::to_string(lo) + " hi=" + std::to_string(hi));
    }
    // Bisect on the radius width rather than stopping at the first residual
    // hit: the returned radius then varies smoothly with the inputs, which
    // downstream quadratures rely on. The residual tolerance is re-checked
    // at the end.
    for (; iter < kMaxIter && hi - lo > 1e-10 * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        (downlink_latency(mid, p) < latency_budget ? lo : hi) = mid;
    }
    const double r = 0.5 * (lo + hi);
    if (std::abs(downlink_latency(r, p) - latency_budget) > kResidualTol)
        throw std::runtime_error("service radius bisection did not converge, bracket [" +
                                 std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return r;
}

}  // namespace detail

/// Largest forwarding radius whose downlink still fits in the latency budget
/// left over after the uplink: t2(r) = T_max - t1(r_u). Returns 0 when the
/// uplink alone exhausts the budget (or the link straight down already does),
/// and the cap when one is configured and reachable.
inline double max_service_radius(double r_u, const NetworkParams& p,
                                 std::optional<double> hard_cap = std::nullopt) {
    // No payload means no transmission time anywhere: the latency constraint
    // is vacuous.
    if (p.task.data_size == 0.0)
        return hard_cap ? *hard_cap : std::numeric_limits<double>::infinity();
    const double residual = p.task.max_latency - uplink_latency(r_u, p);
    return detail::solve_downlink_radius(residual, p, hard_cap);
}

}  // namespace uavcpn
