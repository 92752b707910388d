#pragma once

// Alternating joint optimization of UAV altitude and transmit power under
// dual energy budgets: golden-section altitude search and a finite-difference
// quasi-Newton power search in dBW space, plus the fixed-parameter baselines
// and an exhaustive grid reference.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "uavcpn/analysis.hpp"
#include "uavcpn/energy.hpp"
#include "uavcpn/units.hpp"

namespace uavcpn {

struct OptimizerConfig {
    OperatingLimits limits;
    int max_iter = 30;
    double epsilon = 1e-5;     // convergence threshold on the objective
    int window = 5;            // sliding convergence window, 1 = plain check
    double fallback_altitude = 50.0;  // m
    double fallback_power = 10.0;     // W (10 dBW)
    double fd_step_rel = 1e-3;        // finite-difference step, relative to the dB span
    double lr_init = 1.0;
    double lr_decay = 0.5;
    double initial_altitude = 50.0;  // m
    double initial_power = 10.0;     // W
    int altitude_scan_points = 17;
    int power_scan_points = 13;
    double altitude_tol = 0.5;   // m, golden-section interval width
    double power_tol_db = 0.01;  // dB, quasi-Newton step size floor
    int phase_probe_budget = 60;

    void validate() const {
        limits.validate();
        if (max_iter < 1) throw std::invalid_argument("optimizer.max_iter must be >= 1");
        if (!(epsilon > 0.0)) throw std::invalid_argument("optimizer.epsilon must be > 0");
        if (window < 1) throw std::invalid_argument("optimizer.window must be >= 1");
        if (!(fallback_power >= limits.p_min && fallback_power <= limits.p_max &&
              fallback_altitude >= limits.h_min && fallback_altitude <= limits.h_max))
            throw std::invalid_argument("optimizer fallback point must lie inside the bounds");
        if (altitude_scan_points < 2 || power_scan_points < 2)
            throw std::invalid_argument("optimizer scan grids need >= 2 points");
    }
};

struct TracePoint {
    int iteration = 0;
    double altitude = 0.0;
    double power = 0.0;
    double objective = 0.0;
    double battery_slack = 0.0;
    double fuel_slack = 0.0;
};

struct OptimizationResult {
    double h_star = 0.0;
    double p_star = 0.0;
    double objective = 0.0;
    bool feasible = false;
    int iterations = 0;
    std::vector<TracePoint> trace;
    std::string method;
};

/// Average completion probability when the point satisfies every P1
/// constraint, hard zero otherwise.
inline double constrained_objective(double p_d, double h, const AnalysisParams& params,
                                    const EnergyParams& ep, const EnergyBudgets& budgets,
                                    const OperatingLimits& limits) {
    if (!is_feasible(p_d, h, budgets, limits, params, ep).feasible) return 0.0;
    return average_success_probability(with_operating_point(params, p_d, h));
}

namespace detail {

// Memoizing objective wrapper shared by one optimization run. Keys are exact
// bit patterns, so revisited probes cost nothing and results stay
// deterministic.
class ObjectiveCache {
  public:
    ObjectiveCache(const AnalysisParams& params, const EnergyParams& ep,
                   const EnergyBudgets& budgets, const OperatingLimits& limits)
        : params_(params), ep_(ep), budgets_(budgets), limits_(limits) {}

    double operator()(double p_d, double h) const {
        std::uint64_t pk, hk;
        std::memcpy(&pk, &p_d, sizeof pk);
        std::memcpy(&hk, &h, sizeof hk);
        const auto key = std::pair{pk, hk};
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const double v = constrained_objective(p_d, h, params_, ep_, budgets_, limits_);
        cache_.emplace(key, v);
        return v;
    }

    FeasibilityReport feasibility(double p_d, double h) const {
        return is_feasible(p_d, h, budgets_, limits_, params_, ep_);
    }

    const OperatingLimits& limits() const { return limits_; }

  private:
    AnalysisParams params_;
    EnergyParams ep_;
    EnergyBudgets budgets_;
    OperatingLimits limits_;
    mutable std::map<std::pair<std::uint64_t, std::uint64_t>, double> cache_;
};

struct Probe {
    double x = 0.0;
    double value = -std::numeric_limits<double>::infinity();
    void consider(double xi, double vi) {
        if (vi > value) {
            value = vi;
            x = xi;
        }
    }
};

inline std::vector<double> scan_candidates(double lo, double hi, double current, int n) {
    std::vector<double> xs{lo, hi, std::clamp(current, lo, hi)};
    for (int i = 1; i + 1 < n; ++i)
        xs.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

// Golden-section refinement on [a, b], maximizing; returns through `best`.
template <typename F>
void golden_refine(const F& f, double a, double b, double tol, int probe_budget, Probe& best) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    best.consider(x1, f1);
    best.consider(x2, f2);
    int probes = 2;
    while (b - a > tol && probes < probe_budget) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
            best.consider(x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
            best.consider(x1, f1);
        }
        ++probes;
    }
}

// Largest feasible coordinate in [from, hi] along one axis, assuming the
// energy use is monotone along it (hover+climb in h, transmit in P). Probing
// the exact constraint edge lets a search settle on budget-limited optima.
template <typename Feas>
inline double feasibility_edge(const Feas& feasible, double from, double hi) {
    if (feasible(hi)) return hi;
    if (!feasible(from)) return from;
    double lo = from;
    for (int i = 0; i < 60 && hi - lo > 1e-9 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace detail

/// Altitude search at fixed transmit power: coarse bracketing scan (bounds
/// and the incumbent always included), golden-section refinement of the best
/// cell, and a probe at the fuel-feasibility edge. Returns the best probe; a
/// flat scan degenerates to the interval midpoint. `objective(p, h)` and
/// `feasible(p, h)` must be deterministic.
template <typename Objective, typename Feasible>
double optimize_altitude(double p_fixed, const Objective& objective, const Feasible& feasible,
                         double h_current, const OptimizerConfig& cfg) {
    const double lo = cfg.limits.h_min, hi = cfg.limits.h_max;
    const auto g = [&](double h) { return objective(p_fixed, h); };
    const auto xs = detail::scan_candidates(lo, hi, h_current, cfg.altitude_scan_points);

    detail::Probe best;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = g(xs[i]);
        if (v > best.value) bi = i;
        best.consider(xs[i], v);
    }
    const bool flat = std::all_of(xs.begin(), xs.end(),
                                  [&](double x) { return g(x) == best.value; });
    if (flat) return 0.5 * (lo + hi);

    const double a = xs[bi == 0 ? 0 : bi - 1];
    const double b = xs[std::min(bi + 1, xs.size() - 1)];
    if (b > a) detail::golden_refine(g, a, b, cfg.altitude_tol, cfg.phase_probe_budget, best);

    const auto feas_h = [&](double h) { return feasible(p_fixed, h); };
    if (feas_h(best.x)) {
        const double edge = detail::feasibility_edge(feas_h, best.x, hi);
        best.consider(edge, g(edge));
    }
    return best.x;
}

/// Transmit power search at fixed altitude, run in dBW space: coarse scan,
/// then quasi-Newton ascent with a central finite-difference gradient, a
/// secant curvature estimate and learning-rate decay on gradient sign flips,
/// finishing with a probe at the battery-feasibility edge. Returns the best
/// feasible probe seen; a flat scan returns the start point.
template <typename Objective, typename Feasible>
double optimize_power(double h_fixed, const Objective& objective, const Feasible& feasible,
                      double p_current, const OptimizerConfig& cfg) {
    const double lo_db = units::watt_to_dbw(cfg.limits.p_min);
    const double hi_db = units::watt_to_dbw(cfg.limits.p_max);
    const auto g = [&](double p_db) { return objective(units::dbw_to_watt(p_db), h_fixed); };
    const double start_db = std::clamp(units::watt_to_dbw(p_current), lo_db, hi_db);

    const auto xs = detail::scan_candidates(lo_db, hi_db, start_db, cfg.power_scan_points);
    detail::Probe best;
    for (double x : xs) best.consider(x, g(x));
    const bool flat = std::all_of(xs.begin(), xs.end(),
                                  [&](double x) { return g(x) == best.value; });
    if (flat) return units::dbw_to_watt(start_db);

    const double span = hi_db - lo_db;
    const double delta = std::max(cfg.fd_step_rel * span, 1e-6);
    constexpr double kCurvatureFloor = 1e-6;
    double p = best.x;
    double lr = cfg.lr_init;
    double prev_grad = 0.0, prev_p = p;
    bool have_prev = false;
    int probes = 0;
    while (probes < cfg.phase_probe_budget) {
        const double gp = g(std::min(p + delta, hi_db));
        const double gm = g(std::max(p - delta, lo_db));
        probes += 2;
        const double grad = (gp - gm) / (std::min(p + delta, hi_db) - std::max(p - delta, lo_db));
        double curvature = kCurvatureFloor;
        if (have_prev && p != prev_p)
            curvature = std::max(std::abs((grad - prev_grad) / (p - prev_p)), kCurvatureFloor);
        if (have_prev && grad * prev_grad < 0.0) lr *= cfg.lr_decay;
        const double step = lr * grad / curvature;
        prev_grad = grad;
        prev_p = p;
        have_prev = true;
        const double next = std::clamp(p + step, lo_db, hi_db);
        best.consider(next, g(next));
        ++probes;
        if (std::abs(next - p) < cfg.power_tol_db) break;
        p = next;
    }

    const auto feas_p = [&](double p_db) {
        return feasible(units::dbw_to_watt(p_db), h_fixed);
    };
    if (feas_p(best.x)) {
        const double edge = detail::feasibility_edge(feas_p, best.x, hi_db);
        best.consider(edge, g(edge));
    }
    return units::dbw_to_watt(best.x);
}

/// Alternating joint search from the configured initial point. Each phase
/// keeps the incumbent among its candidates, so the per-iteration objective
/// never decreases. Converges when the objective gained less than epsilon
/// over the sliding window; the final point is re-validated and replaced by
/// the fallback point on violation.
inline OptimizationResult joint_optimize(const AnalysisParams& params, const EnergyParams& ep,
                                         const EnergyBudgets& budgets,
                                         const OptimizerConfig& cfg) {
    cfg.validate();
    params.validate();
    ep.validate();
    budgets.validate();
    const detail::ObjectiveCache f(params, ep, budgets, cfg.limits);
    const auto feas = [&f](double pd, double hh) { return f.feasibility(pd, hh).feasible; };

    OptimizationResult res;
    res.method = "joint_alternating";
    double h = std::clamp(cfg.initial_altitude, cfg.limits.h_min, cfg.limits.h_max);
    double p = std::clamp(cfg.initial_power, cfg.limits.p_min, cfg.limits.p_max);
    double obj = f(p, h);

    const auto push_trace = [&](int iter) {
        const auto rep = f.feasibility(p, h);
        res.trace.push_back({iter, h, p, obj, budgets.battery - rep.comm_energy,
                             budgets.fuel - rep.prop_energy});
    };
    push_trace(0);

    int k = 0;
    while (k < cfg.max_iter) {
        ++k;
        h = optimize_altitude(p, f, feas, h, cfg);
        p = optimize_power(h, f, feas, p, cfg);
        obj = f(p, h);
        push_trace(k);
        if (k >= cfg.window &&
            res.trace[k].objective - res.trace[k - cfg.window].objective < cfg.epsilon)
            break;
    }
    res.iterations = k;

    if (!f.feasibility(p, h).feasible) {
        const auto fb = f.feasibility(cfg.fallback_power, cfg.fallback_altitude);
        if (!fb.feasible) {
            std::ostringstream os;
            os << "joint_optimize: no feasible operating point; fallback (h="
               << cfg.fallback_altitude << " m, P=" << cfg.fallback_power
               << " W) violates budgets battery=" << budgets.battery
               << " J, fuel=" << budgets.fuel << " J (" << fb.describe() << ")";
            throw std::runtime_error(os.str());
        }
        h = cfg.fallback_altitude;
        p = cfg.fallback_power;
        obj = f(p, h);
        push_trace(res.iterations);
        res.method += "+fallback";
    }

    res.h_star = h;
    res.p_star = p;
    res.objective = obj;
    res.feasible = f.feasibility(p, h).feasible;
    return res;
}

inline OptimizationResult baseline_power_only(const AnalysisParams& params,
                                              const EnergyParams& ep,
                                              const EnergyBudgets& budgets,
                                              const OptimizerConfig& cfg,
                                              double fixed_altitude = 50.0) {
    const detail::ObjectiveCache f(params, ep, budgets, cfg.limits);
    const auto feas = [&f](double pd, double hh) { return f.feasibility(pd, hh).feasible; };
    OptimizationResult res;
    res.method = "power_only";
    res.h_star = fixed_altitude;
    res.p_star = optimize_power(fixed_altitude, f, feas, cfg.initial_power, cfg);
    res.objective = f(res.p_star, res.h_star);
    res.feasible = f.feasibility(res.p_star, res.h_star).feasible;
    res.iterations = 1;
    const auto rep = f.feasibility(res.p_star, res.h_star);
    res.trace.push_back({1, res.h_star, res.p_star, res.objective,
                         budgets.battery - rep.comm_energy, budgets.fuel - rep.prop_energy});
    return res;
}

inline OptimizationResult baseline_altitude_only(const AnalysisParams& params,
                                                 const EnergyParams& ep,
                                                 const EnergyBudgets& budgets,
                                                 const OptimizerConfig& cfg,
                                                 double fixed_power = 3.1622776601683795) {
    const detail::ObjectiveCache f(params, ep, budgets, cfg.limits);
    const auto feas = [&f](double pd, double hh) { return f.feasibility(pd, hh).feasible; };
    OptimizationResult res;
    res.method = "altitude_only";
    res.p_star = fixed_power;
    res.h_star = optimize_altitude(fixed_power, f, feas, cfg.initial_altitude, cfg);
    res.objective = f(res.p_star, res.h_star);
    res.feasible = f.feasibility(res.p_star, res.h_star).feasible;
    res.iterations = 1;
    const auto rep = f.feasibility(res.p_star, res.h_star);
    res.trace.push_back({1, res.h_star, res.p_star, res.objective,
                         budgets.battery - rep.comm_energy, budgets.fuel - rep.prop_energy});
    return res;
}

inline OptimizationResult baseline_static(double altitude, double power,
                                          const AnalysisParams& params, const EnergyParams& ep,
                                          const EnergyBudgets& budgets,
                                          const OptimizerConfig& cfg) {
    const detail::ObjectiveCache f(params, ep, budgets, cfg.limits);
    OptimizationResult res;
    res.method = "static";
    res.h_star = altitude;
    res.p_star = power;
    res.objective = f(power, altitude);
    res.feasible = f.feasibility(power, altitude).feasible;
    res.iterations = 1;
    const auto rep = f.feasibility(power, altitude);
    res.trace.push_back({1, altitude, power, res.objective, budgets.battery - rep.comm_energy,
                         budgets.fuel - rep.prop_energy});
    return res;
}

/// Exhaustive reference maximizer over an altitude x power grid (power
/// spaced in dBW). Ties resolve to the first cell in row-major order.
inline OptimizationResult grid_search_oracle(const AnalysisParams& params,
                                             const EnergyParams& ep,
                                             const EnergyBudgets& budgets,
                                             const OptimizerConfig& cfg, int n_h, int n_p) {
    if (n_h < 2 || n_p < 2) throw std::invalid_argument("grid_search_oracle: grid sizes >= 2");
    const detail::ObjectiveCache f(params, ep, budgets, cfg.limits);
    const double lo_db = units::watt_to_dbw(cfg.limits.p_min);
    const double hi_db = units::watt_to_dbw(cfg.limits.p_max);

    OptimizationResult res;
    res.method = "grid_oracle";
    res.objective = -1.0;
    for (int i = 0; i < n_h; ++i) {
        const double h = cfg.limits.h_min +
                         (cfg.limits.h_max - cfg.limits.h_min) * i / (n_h - 1);
        for (int j = 0; j < n_p; ++j) {
            const double p = units::dbw_to_watt(lo_db + (hi_db - lo_db) * j / (n_p - 1));
            const double v = f(p, h);
            if (v > res.objective) {
                res.objective = v;
                res.h_star = h;
                res.p_star = p;
            }
        }
    }
    res.iterations = n_h * n_p;
    res.feasible = f.feasibility(res.p_star, res.h_star).feasible;
    return res;
}

/// Relative improvement in percent; NaN marks the undefined gain against a
/// zero baseline.
inline double performance_gain(double p_joint, double p_baseline) {
    if (!(p_baseline > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return (p_joint - p_baseline) / p_baseline * 100.0;
}

}  // namespace uavcpn
