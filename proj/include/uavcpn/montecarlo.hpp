#pragma once

// Simulation oracle for the analytic chain: GUs uniform in the request zone,
// CNs as a PPP field, channels realized per mode, binomial success counting
// with Wilson confidence intervals.

#include <atomic>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "uavcpn/analysis.hpp"
#include "uavcpn/parallel.hpp"
#include "uavcpn/rng.hpp"

namespace uavcpn {

inline constexpr double kWilson99Z = 2.5758293035489004;

struct SimConfig {
    std::uint64_t trials = 10000;
    std::uint64_t gu_samples = 1;  // elementary trial count is trials * gu_samples
    std::uint64_t seed = 1;
    ChannelMode channel_mode = ChannelMode::mean_power;
    double window_radius = 0.0;  // m; 0 selects the automatic window

    void validate() const {
        if (trials < 1 || gu_samples < 1)
            throw std::invalid_argument("sim: trials and gu_samples must be >= 1");
        if (!(window_radius >= 0.0)) throw std::invalid_argument("sim.window_radius must be >= 0");
    }
};

struct ConfidenceInterval {
    double lo = 0.0, hi = 0.0;
    double halfwidth() const { return 0.5 * (hi - lo); }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

inline ConfidenceInterval wilson_interval(double successes, double n, double z = kWilson99Z) {
    const double phat = successes / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    const double lo = center - half, hi = center + half;
    return {lo < 0.0 ? 0.0 : lo, hi > 1.0 ? 1.0 : hi};
}

/// Radial distance of a GU uniform in the request disk (density 2r/R^2).
inline double sample_gu_radius(SplitMix64& rng, double request_radius) {
    return request_radius * std::sqrt(rng.u01());
}

/// One PPP field realization around the UAV; only radii are kept since the
/// model is isotropic.
inline std::vector<double> sample_cn_field(SplitMix64& rng, double density,
                                           double window_radius) {
    if (!(density >= 0.0)) throw std::invalid_argument("density must be >= 0");
    const double mean = density * std::numbers::pi * window_radius * window_radius;
    const std::uint64_t count = poisson_draw(rng, mean);
    std::vector<double> radii(count);
    for (auto& r : radii) r = window_radius * std::sqrt(rng.u01());
    return radii;
}

/// Success of a single task: some CN satisfies t1 + t2 + tc <= T_max.
/// mean_power mode uses expected received powers; bernoulli realizes the
/// LoS state once per link per task.
inline bool simulate_task(SplitMix64& rng, double r_u, std::span<const double> cn_radii,
                          const AnalysisParams& p, ChannelMode mode) {
    const auto& net = p.net;
    const double h = net.geometry.altitude;
    double t1;
    if (mode == ChannelMode::bernoulli) {
        const bool los = rng.u01() < los_probability(h, r_u, net.env);
        const double pr =
            conditional_received_power(net.radio.gu_tx_power, r_u, h, net.env.pathloss_up,
                                       net.env, los);
        t1 = transmission_latency(net.task.data_size, link_rate(pr, net.radio));
    } else {
        t1 = uplink_latency(r_u, net);
    }

    for (double r_c : cn_radii) {
        double t2;
        if (mode == ChannelMode::bernoulli) {
            const bool los = rng.u01() < los_probability(h, r_c, net.env);
            const double pr = conditional_received_power(
                net.radio.uav_tx_power, r_c, h, net.env.pathloss_down, net.env, los);
            t2 = transmission_latency(net.task.data_size, link_rate(pr, net.radio));
        } else {
            t2 = downlink_latency(r_c, net);
        }
        const double tc = sample_compute_latency(p.compute, rng.u01(), net.task.data_size);
        if (t1 + t2 + tc <= net.task.max_latency) return true;
    }
    return false;
}

/// Sampling window that covers every CN the latency budget can reach. A
/// bounded CN field is sampled at exactly its own radius.
inline double default_sim_window(const AnalysisParams& p) {
    if (p.cn_field_radius) return *p.cn_field_radius;
    const double sup = max_service_radius(0.0, p.net, std::nullopt);
    const double base = p.net.geometry.service_window_radius;
    if (std::isinf(sup)) return base;
    return std::max(base, 1.2 * sup);
}

/// Mean success over trials * gu_samples independent (GU, CN field) draws.
/// Deterministic for a fixed seed, for any thread count.
inline SuccessEstimate estimate_average_success(const SimConfig& sim, const AnalysisParams& p,
                                                unsigned threads = 1,
                                                std::ostream* log = nullptr) {
    sim.validate();
    p.validate();
    const double window = sim.window_radius > 0.0 ? sim.window_radius : default_sim_window(p);

    if (log) {
        const double sup = max_service_radius(0.0, p.net, p.cn_field_radius);
        if (std::isfinite(sup) && window < sup) {
            const double lam = p.net.geometry.cn_density;
            const double bias =
                -std::expm1(-lam * std::numbers::pi * (sup * sup - window * window));
            if (bias > 1e-4)
                (*log) << "warning: sampling window " << window
                       << " m truncates reachable CNs (bias bound " << bias << ")\n";
        }
    }

    const std::uint64_t n = sim.trials * sim.gu_samples;
    std::atomic<std::uint64_t> successes{0};
    parallel_for(n, threads, [&](std::uint64_t i) {
        SplitMix64 rng = trial_stream(sim.seed, i);
        const double r_u = sample_gu_radius(rng, p.net.geometry.request_radius);
        const auto field = sample_cn_field(rng, p.net.geometry.cn_density, window);
        if (simulate_task(rng, r_u, field, p, sim.channel_mode))
            successes.fetch_add(1, std::memory_order_relaxed);
    });

    const double s = static_cast<double>(successes.load());
    const auto ci = wilson_interval(s, static_cast<double>(n));
    return SuccessEstimate{s / static_cast<double>(n), EstimateMethod::monte_carlo,
                           ci.halfwidth(), n};
}

}  // namespace uavcpn
