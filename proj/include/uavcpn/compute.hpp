#pragma once

// Computing-latency distribution of a CN as a pluggable CDF family.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

namespace uavcpn {

struct DeterministicCompute {
    double latency = 2e-3;  // s
};

struct ExponentialCompute {
    double mean = 1e-3;  // s
};

struct ShiftedExponentialCompute {
    double shift = 0.0;  // s
    double mean = 1e-3;  // s
};

struct EmpiricalCompute {
    std::vector<double> samples;  // s, sorted ascending
};

struct ComputeModel {
    std::variant<DeterministicCompute, ExponentialCompute, ShiftedExponentialCompute,
                 EmpiricalCompute>
        variant = DeterministicCompute{};
    // When set, time parameters scale linearly with workload relative to
    // reference_data_size.
    bool workload_scaling = false;
    double reference_data_size = 8e6;  // bits

    void validate() const {
        std::visit(
            [](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, DeterministicCompute>) {
                    if (!(v.latency >= 0.0)) throw std::invalid_argument("compute latency < 0");
                } else if constexpr (std::is_same_v<T, ExponentialCompute>) {
                    if (!(v.mean >= 0.0)) throw std::invalid_argument("compute mean < 0");
                } else if constexpr (std::is_same_v<T, ShiftedExponentialCompute>) {
                    if (!(v.shift >= 0.0) || !(v.mean >= 0.0))
                        throw std::invalid_argument("compute shift/mean < 0");
                } else {
                    if (v.samples.empty())
                        throw std::invalid_argument("empirical compute model needs samples");
                    if (!std::is_sorted(v.samples.begin(), v.samples.end()))
                        throw std::invalid_argument("empirical samples must be sorted ascending");
                    if (v.samples.front() < 0.0)
                        throw std::invalid_argument("empirical samples must be >= 0");
                }
            },
            variant);
        if (workload_scaling && !(reference_data_size > 0.0))
            throw std::invalid_argument("reference_data_size must be > 0 with workload scaling");
    }
};

namespace detail {
inline double workload_factor(const ComputeModel& m, double data_size_bits) {
    return m.workload_scaling ? data_size_bits / m.reference_data_size : 1.0;
}
}  // namespace detail

/// P(t_c <= t) for the given workload. Right-continuous; the deterministic
/// variant is the unit step with F(t_c) = 1, so a residual budget exactly
/// equal to t_c counts as success.
inline double latency_cdf(const ComputeModel& m, double t, double data_size_bits) {
    if (std::isnan(t)) throw std::invalid_argument("latency_cdf: t is NaN");
    if (t < 0.0) return 0.0;
    if (std::isinf(t)) return 1.0;
    const double s = detail::workload_factor(m, data_size_bits);
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DeterministicCompute>) {
                return t >= v.latency * s ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, ExponentialCompute>) {
                if (v.mean == 0.0) return 1.0;
                return -std::expm1(-t / (v.mean * s));
            } else if constexpr (std::is_same_v<T, ShiftedExponentialCompute>) {
                const double u = t - v.shift * s;
                if (u < 0.0) return 0.0;
                if (v.mean == 0.0) return 1.0;
                return -std::expm1(-u / (v.mean * s));
            } else {
                const auto& xs = v.samples;
                auto it = std::upper_bound(xs.begin(), xs.end(), t / s);
                return static_cast<double>(it - xs.begin()) / static_cast<double>(xs.size());
            }
        },
        m.variant);
}

/// Inverse-CDF draw of a computing latency from a uniform u in [0,1).
inline double sample_compute_latency(const ComputeModel& m, double u, double data_size_bits) {
    const double s = detail::workload_factor(m, data_size_bits);
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DeterministicCompute>) {
                return v.latency * s;
            } else if constexpr (std::is_same_v<T, ExponentialCompute>) {
                return -v.mean * s * std::log1p(-u);
            } else if constexpr (std::is_same_v<T, ShiftedExponentialCompute>) {
                return v.shift * s - v.mean * s * std::log1p(-u);
            } else {
                const auto& xs = v.samples;
                auto idx = static_cast<size_t>(u * static_cast<double>(xs.size()));
                return xs[std::min(idx, xs.size() - 1)] * s;
            }
        },
        m.variant);
}

/// Latency values where the CDF is non-smooth, for quadrature domain splits.
/// Large empirical sample sets are left to adaptive subdivision.
inline std::vector<double> cdf_breakpoints(const ComputeModel& m, double data_size_bits) {
    const double s = detail::workload_factor(m, data_size_bits);
    return std::visit(
        [&](const auto& v) -> std::vector<double> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DeterministicCompute>) {
                return {v.latency * s};
            } else if constexpr (std::is_same_v<T, ExponentialCompute>) {
                return {};
            } else if constexpr (std::is_same_v<T, ShiftedExponentialCompute>) {
                return {v.shift * s};
            } else {
                if (v.samples.size() > 64) return {};
                std::vector<double> out;
                out.reserve(v.samples.size());
                for (double x : v.samples) out.push_back(x * s);
                return out;
            }
        },
        m.variant);
}

}  // namespace uavcpn
