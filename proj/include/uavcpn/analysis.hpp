#pragma once

// Semi-analytical task completion probability: PPP thinning, qualified-CN
// intensity and the spatially averaged metric, all via adaptive quadrature.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "uavcpn/channel.hpp"
#include "uavcpn/compute.hpp"
#include "uavcpn/quadrature.hpp"

namespace uavcpn {

struct AnalysisParams {
    NetworkParams net;
    ComputeModel compute;
    double quadrature_rel_tol = 1e-6;
    // Finite radius of the region where CNs exist. Unset means CNs cover the
    // unbounded plane and the service radius is latency-limited only.
    std::optional<double> cn_field_radius;

    void validate() const {
        net.validate();
        compute.validate();
        if (!(quadrature_rel_tol > 0.0 && quadrature_rel_tol <= 1e-2))
            throw std::invalid_argument("quadrature_rel_tol must be in (0, 1e-2]");
        if (cn_field_radius && !(*cn_field_radius > 0.0))
            throw std::invalid_argument("cn_field_radius must be > 0 when set");
    }
};

enum class EstimateMethod { analytic, monte_carlo };

struct SuccessEstimate {
    double value = 0.0;
    EstimateMethod method = EstimateMethod::analytic;
    double ci_halfwidth = 0.0;  // 0 for analytic
    std::uint64_t trials = 0;   // 0 for analytic
};

/// Convenience copy with the two decision variables replaced.
inline AnalysisParams with_operating_point(AnalysisParams p, double uav_tx_power,
                                           double altitude) {
    p.net.radio.uav_tx_power = uav_tx_power;
    p.net.geometry.altitude = altitude;
    return p;
}

namespace detail {

// Earliest latency a CN can possibly achieve under the model (left edge of
// the CDF support); used to locate where integrands vanish.
inline double compute_support_start(const ComputeModel& m, double data_size_bits) {
    const double s = workload_factor(m, data_size_bits);
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DeterministicCompute>) return v.latency * s;
            else if constexpr (std::is_same_v<T, ExponentialCompute>) return 0.0;
            else if constexpr (std::is_same_v<T, ShiftedExponentialCompute>) return v.shift * s;
            else return v.samples.front() * s;
        },
        m.variant);
}

}  // namespace detail

/// Density of CNs at radius r_c that satisfy the end-to-end latency
/// constraint for a GU at radius r_u; in [0, cn_density].
inline double effective_density(double r_u, double r_c, const AnalysisParams& p) {
    const double rc_max = max_service_radius(r_u, p.net, p.cn_field_radius);
    if (r_c > rc_max) return 0.0;
    const double t_res =
        p.net.task.max_latency - uplink_latency(r_u, p.net) - downlink_latency(r_c, p.net);
    return p.net.geometry.cn_density * latency_cdf(p.compute, t_res, p.net.task.data_size);
}

/// Expected number of CNs able to complete the task for a GU at radius r_u:
/// 2*pi*lambda_c * integral of F_tc(T_max - t1 - t2(r)) * r over the reachable
/// disk. The integration domain is split at the radii where the latency CDF
/// steps so the deterministic variant integrates exactly.
inline double qualified_intensity(double r_u, const AnalysisParams& p) {
    const double lambda = p.net.geometry.cn_density;
    if (lambda == 0.0) return 0.0;
    const double upper = max_service_radius(r_u, p.net, p.cn_field_radius);
    if (upper == 0.0) return 0.0;
    if (std::isinf(upper)) return std::numeric_limits<double>::infinity();

    const double t1 = uplink_latency(r_u, p.net);
    const double budget = p.net.task.max_latency - t1;

    std::vector<double> splits;
    for (double t_break : cdf_breakpoints(p.compute, p.net.task.data_size)) {
        const double r_break = detail::solve_downlink_radius(budget - t_break, p.net, std::nullopt);
        if (r_break > 0.0 && r_break < upper) splits.push_back(r_break);
    }

    const auto integrand = [&](double r) {
        const double t_res = budget - downlink_latency(r, p.net);
        return latency_cdf(p.compute, t_res, p.net.task.data_size) * r;
    };
    const auto q = integrate(integrand, 0.0, upper, p.quadrature_rel_tol, 1e-12, splits);
    return 2.0 * std::numbers::pi * lambda * q.value;
}

/// Probability that at least one CN completes within the budget for a GU at
/// radius r_u: the void probability complement 1 - exp(-Lambda(r_u)).
inline double success_probability(double r_u, const AnalysisParams& p) {
    const double intensity = qualified_intensity(r_u, p);
    if (std::isinf(intensity)) return 1.0;
    return -std::expm1(-intensity);
}

/// Task completion probability averaged over GU positions uniform in the
/// request disk: (2/R_u^2) * integral of P_success(r_u) * r_u.
inline double average_success_probability(const AnalysisParams& p) {
    const double radius = p.net.geometry.request_radius;
    if (p.net.geometry.cn_density == 0.0) return 0.0;

    // The integrand vanishes for GUs whose uplink leaves less budget than the
    // quickest possible forward+compute; split there to keep the outer
    // quadrature off the kink.
    std::vector<double> splits;
    const double floor_latency = downlink_latency(0.0, p.net) +
                                 detail::compute_support_start(p.compute, p.net.task.data_size);
    const double budget_limit = p.net.task.max_latency - floor_latency;
    if (uplink_latency(radius, p.net) > budget_limit &&
        uplink_latency(0.0, p.net) < budget_limit) {
        double lo = 0.0, hi = radius;
        for (int i = 0; i < 100 && hi - lo > 1e-9 * radius; ++i) {
            const double mid = 0.5 * (lo + hi);
            (uplink_latency(mid, p.net) < budget_limit ? lo : hi) = mid;
        }
        splits.push_back(0.5 * (lo + hi));
    }

    const auto integrand = [&](double r) { return success_probability(r, p) * r; };
    const auto q = integrate(integrand, 0.0, radius, p.quadrature_rel_tol, 1e-12, splits);
    return 2.0 / (radius * radius) * q.value;
}

}  // namespace uavcpn
