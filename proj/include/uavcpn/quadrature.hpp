#pragma once

// Adaptive Gauss-Kronrod 15(7) quadrature with an embedded error estimate.
// Deterministic: fixed subdivision rule, worst-interval-first refinement.

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavcpn {

struct QuadratureError : std::runtime_error {
    double worst_lo, worst_hi, worst_err;
    QuadratureError(double lo, double hi, double err)
        : std::runtime_error("quadrature did not converge; worst subinterval [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "] error " + std::to_string(err)),
          worst_lo(lo),
          worst_hi(hi),
          worst_err(err) {}
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
};

namespace detail {

// QUADPACK G7-K15 nodes and weights (positive half; node 0 last).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
inline void gauss_kronrod_15(const F& f, double a, double b, double& integral, double& error) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - half * kKronrodNodes[i]);
        fv[14 - i] = f(c + half * kKronrodNodes[i]);
    }
    fv[7] = f(c);
    double k15 = 0.0;
    for (int i = 0; i < 7; ++i) k15 += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
    k15 += kKronrodWeights[7] * fv[7];
    // Gauss-7 points are the odd Kronrod nodes.
    double g7 = kGaussWeights[3] * fv[7];
    for (int i = 0; i < 3; ++i) g7 += kGaussWeights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    integral = k15 * half;
    error = std::abs((k15 - g7) * half);
}

struct Segment {
    double lo, hi, value, err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

}  // namespace detail

/// Integrates f over [a, b] to max(rel_tol * |I|, abs_tol), splitting first at
/// the supplied interior breakpoints (known kinks or steps of the integrand).
template <typename F>
QuadratureResult integrate(const F& f, double a, double b, double rel_tol = 1e-6,
                           double abs_tol = 1e-12, std::vector<double> breakpoints = {}) {
    constexpr int kMaxSegments = 4000;
    QuadratureResult res;
    if (!(b > a)) return res;

    std::vector<double> cuts{a};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double x : breakpoints)
        if (x > cuts.back() && x < b) cuts.push_back(x);
    cuts.push_back(b);

    std::priority_queue<detail::Segment> heap;
    double total = 0.0, total_err = 0.0;
    int segments = 0;
    auto push = [&](double lo, double hi) {
        detail::Segment s{lo, hi, 0.0, 0.0};
        detail::gauss_kronrod_15(f, lo, hi, s.value, s.err);
        res.evaluations += 15;
        total += s.value;
        total_err += s.err;
        heap.push(s);
        ++segments;
    };
    for (size_t i = 0; i + 1 < cuts.size(); ++i) push(cuts[i], cuts[i + 1]);

    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (segments >= kMaxSegments) {
            const auto& w = heap.top();
            throw QuadratureError(w.lo, w.hi, w.err);
        }
        detail::Segment w = heap.top();
        heap.pop();
        total -= w.value;
        total_err -= w.err;
        --segments;
        const double mid = 0.5 * (w.lo + w.hi);
        if (mid <= w.lo || mid >= w.hi) throw QuadratureError(w.lo, w.hi, w.err);
        push(w.lo, mid);
        push(mid, w.hi);
    }
    res.value = total;
    res.abs_error = total_err;
    return res;
}

}  // namespace uavcpn
