#pragma once

// Bayesian-optimization comparison baseline: a Gaussian-process surrogate
// with a squared-exponential kernel over the normalized (altitude, dBW)
// box, expected-improvement acquisition on a dense candidate grid, and the
// same hard-zero treatment of infeasible evaluations as the main optimizer.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "uavcpn/optimizer.hpp"
#include "uavcpn/rng.hpp"

namespace uavcpn {

struct BayesOptConfig {
    int eval_budget = 30;
    int candidate_grid = 61;  // per axis
    double lengthscale = 0.25;
    std::uint64_t seed = 1;

    void validate() const {
        if (eval_budget < 5) throw std::invalid_argument("bayesopt: eval_budget must be >= 5");
        if (candidate_grid < 2) throw std::invalid_argument("bayesopt: candidate_grid >= 2");
        if (!(lengthscale > 0.0)) throw std::invalid_argument("bayesopt: lengthscale > 0");
    }
};

namespace detail {

// In-place Cholesky of a small SPD matrix (row-major), then two triangular
// solves. Sizes stay at the evaluation budget, so no library is warranted.
inline void cholesky(std::vector<double>& a, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i * n + j];
            for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("bayesopt: kernel matrix not SPD");
                a[i * n + i] = std::sqrt(s);
            } else {
                a[i * n + j] = s / a[j * n + j];
            }
        }
    }
}

inline void chol_solve(const std::vector<double>& l, int n, std::vector<double>& x) {
    for (int i = 0; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= l[i * n + k] * x[k];
        x[i] = s / l[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= l[k * n + i] * x[k];
        x[i] = s / l[i * n + i];
    }
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

inline double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    for (std::uint64_t i = index; i > 0; i /= base) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
    }
    return r;
}

}  // namespace detail

inline OptimizationResult bayesian_optimize(const AnalysisParams& params, const EnergyParams& ep,
                                            const EnergyBudgets& budgets,
                                            const OperatingLimits& limits,
                                            const BayesOptConfig& bo) {
    bo.validate();
    params.validate();
    const detail::ObjectiveCache f(params, ep, budgets, limits);
    const double lo_db = units::watt_to_dbw(limits.p_min);
    const double hi_db = units::watt_to_dbw(limits.p_max);

    const auto to_point = [&](double xh, double xp) {
        const double h = limits.h_min + xh * (limits.h_max - limits.h_min);
        const double p = units::dbw_to_watt(lo_db + xp * (hi_db - lo_db));
        return std::pair{h, p};
    };

    std::vector<double> xh, xp, y;
    OptimizationResult res;
    res.method = "bayesian_opt";
    res.objective = -1.0;
    const auto evaluate = [&](double uh, double up) {
        const auto [h, p] = to_point(uh, up);
        const double v = f(p, h);
        xh.push_back(uh);
        xp.push_back(up);
        y.push_back(v);
        const auto rep = f.feasibility(p, h);
        res.trace.push_back({static_cast<int>(y.size()), h, p, v,
                             budgets.battery - rep.comm_energy, budgets.fuel - rep.prop_energy});
        if (v > res.objective) {
            res.objective = v;
            res.h_star = h;
            res.p_star = p;
        }
    };

    // Seeded-shift Halton initial design.
    SplitMix64 rng = trial_stream(bo.seed, 0);
    const double sh = rng.u01(), sp = rng.u01();
    const int n_init = std::min(8, bo.eval_budget - 2);
    for (int i = 0; i < n_init; ++i) {
        const double uh = std::fmod(detail::halton(i + 1, 2) + sh, 1.0);
        const double up = std::fmod(detail::halton(i + 1, 3) + sp, 1.0);
        evaluate(uh, up);
    }

    const int g = bo.candidate_grid;
    const double ls2 = 2.0 * bo.lengthscale * bo.lengthscale;
    while (static_cast<int>(y.size()) < bo.eval_budget) {
        const int n = static_cast<int>(y.size());
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : y) var += (v - mean) * (v - mean);
        var = std::max(var / n, 1e-12);
        const double jitter = 1e-8 * var + 1e-12;

        std::vector<double> chol(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double dh = xh[i] - xh[j], dp = xp[i] - xp[j];
                chol[i * n + j] =
                    var * std::exp(-(dh * dh + dp * dp) / ls2) + (i == j ? jitter : 0.0);
            }
        detail::cholesky(chol, n);
        std::vector<double> alpha(y.size());
        for (int i = 0; i < n; ++i) alpha[i] = y[i] - mean;
        detail::chol_solve(chol, n, alpha);

        double best_y = *std::max_element(y.begin(), y.end());
        double best_ei = -1.0;
        double pick_h = -1.0, pick_p = -1.0;
        std::vector<double> kv(n), kv2(n);
        for (int a = 0; a < g; ++a) {
            const double uh = static_cast<double>(a) / (g - 1);
            for (int b = 0; b < g; ++b) {
                const double up = static_cast<double>(b) / (g - 1);
                bool visited = false;
                for (int i = 0; i < n && !visited; ++i)
                    visited = std::abs(xh[i] - uh) < 1e-10 && std::abs(xp[i] - up) < 1e-10;
                if (visited) continue;
                for (int i = 0; i < n; ++i) {
                    const double dh = xh[i] - uh, dp = xp[i] - up;
                    kv[i] = var * std::exp(-(dh * dh + dp * dp) / ls2);
                }
                double mu = mean;
                for (int i = 0; i < n; ++i) mu += kv[i] * alpha[i];
                kv2 = kv;
                detail::chol_solve(chol, n, kv2);
                double kk = 0.0;
                for (int i = 0; i < n; ++i) kk += kv[i] * kv2[i];
                const double s = std::sqrt(std::max(var - kk, 0.0));
                double ei = 0.0;
                const double imp = mu - best_y;
                if (s > 1e-12) {
                    const double z = imp / s;
                    ei = imp * detail::normal_cdf(z) + s * detail::normal_pdf(z);
                } else if (imp > 0.0) {
                    ei = imp;
                }
                if (ei > best_ei) {
                    best_ei = ei;
                    pick_h = uh;
                    pick_p = up;
                }
            }
        }
        if (pick_h < 0.0) break;  // candidate grid exhausted
        evaluate(pick_h, pick_p);
    }

    res.iterations = static_cast<int>(y.size());
    res.feasible = res.objective > 0.0
                       ? true
                       : f.feasibility(res.p_star, res.h_star).feasible;
    return res;
}

}  // namespace uavcpn
