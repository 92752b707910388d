#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "uavcpn/analysis.hpp"
#include "uavcpn/rng.hpp"

using namespace uavcpn;

namespace {

AnalysisParams reference(double tc = 2e-3) {
    AnalysisParams p;  // defaults carry the reference scenario
    p.compute.variant = DeterministicCompute{tc};
    return p;
}

}  // namespace

TEST_CASE("effective density") {
    const auto p = reference();
    // Inside both the reachable disk and the compute deadline.
    CHECK(effective_density(100.0, 300.0, p) ==
          Catch::Approx(p.net.geometry.cn_density).epsilon(1e-12));
    // Beyond the reachable radius the indicator kills it.
    CHECK(effective_density(100.0, 5000.0, p) == 0.0);

    auto instant = p;
    instant.compute.variant = DeterministicCompute{0.0};
    CHECK(effective_density(50.0, 100.0, instant) == instant.net.geometry.cn_density);
}

TEST_CASE("qualified intensity frozen value and closed forms") {
    const auto p = reference();
    CHECK(qualified_intensity(100.0, p) == Catch::Approx(6.334530385436).epsilon(2e-5));

    SECTION("instant compute reduces to the reachable disk area") {
        auto q = p;
        q.compute.variant = DeterministicCompute{0.0};
        const double rc = max_service_radius(100.0, q.net);
        const double closed = q.net.geometry.cn_density * std::numbers::pi * rc * rc;
        CHECK(qualified_intensity(100.0, q) ==
              Catch::Approx(closed).epsilon(10.0 * q.quadrature_rel_tol));
    }

    SECTION("deterministic latency reduces to the deadline disk") {
        auto q = p;
        auto shrunk = q.net;
        shrunk.task.max_latency -= 2e-3;
        const double r_tilde = max_service_radius(100.0, shrunk);
        const double closed = q.net.geometry.cn_density * std::numbers::pi * r_tilde * r_tilde;
        CHECK(qualified_intensity(100.0, q) ==
              Catch::Approx(closed).epsilon(10.0 * q.quadrature_rel_tol));
    }

    SECTION("degenerate cases") {
        auto q = p;
        q.net.geometry.cn_density = 0.0;
        CHECK(qualified_intensity(100.0, q) == 0.0);
        auto tight = p;
        tight.net.task.max_latency = 0.001;
        CHECK(qualified_intensity(100.0, tight) == 0.0);
    }
}

TEST_CASE("success probability frozen value and thinning identity") {
    const auto p = reference();
    CHECK(success_probability(100.0, p) == Catch::Approx(0.998226021271).epsilon(1e-6));

    SplitMix64 rng(42);
    for (int i = 0; i < 200; ++i) {
        auto q = p;
        q.net.geometry.altitude = 50.0 + 600.0 * rng.u01();
        q.net.radio.uav_tx_power = 1.0 + 200.0 * rng.u01();
        q.compute.variant = DeterministicCompute{4e-3 * rng.u01()};
        const double r_u = q.net.geometry.request_radius * rng.u01();
        const double lam = qualified_intensity(r_u, q);
        const double ps = success_probability(r_u, q);
        CHECK(std::abs(ps - (1.0 - std::exp(-lam))) <= 1e-12);
    }
}

TEST_CASE("success probability is non-increasing in GU distance") {
    const auto p = reference();
    double prev = success_probability(0.0, p);
    for (double ru = 20.0; ru <= 200.0; ru += 20.0) {
        const double ps = success_probability(ru, p);
        CHECK(ps <= prev + 1e-12);
        prev = ps;
    }
}

TEST_CASE("average success probability frozen values") {
    CHECK(average_success_probability(reference()) ==
          Catch::Approx(0.996684035058).epsilon(1e-5));

    // Coverage expansion at h = 300 m: bounded CN field at 200 m vs 1000 m.
    auto p = reference();
    p.net.geometry.altitude = 300.0;
    p.cn_field_radius = 200.0;
    CHECK(average_success_probability(p) == Catch::Approx(0.466511908909).epsilon(1e-5));
    p.cn_field_radius = 1000.0;
    CHECK(average_success_probability(p) == Catch::Approx(0.998495704626).epsilon(1e-5));

    // Moderate relay power locates the interior altitude optimum; spot values.
    auto q = reference();
    q.net.radio.uav_tx_power = 10.0;
    q.net.geometry.altitude = 210.71428571428572;
    CHECK(average_success_probability(q) == Catch::Approx(0.78447964).epsilon(1e-5));
    q.net.geometry.altitude = 50.0;
    CHECK(average_success_probability(q) == Catch::Approx(0.36343758).epsilon(1e-5));
}

TEST_CASE("average success probability limits and monotonicity") {
    auto p = reference();
    p.net.geometry.cn_density = 0.0;
    CHECK(average_success_probability(p) == 0.0);

    p = reference();
    p.net.geometry.cn_density = 1.0;  // saturating density
    CHECK(average_success_probability(p) == Catch::Approx(1.0).epsilon(1e-9));

    // Non-decreasing in CN density.
    double prev = 0.0;
    for (double lam : {1e-6, 2e-6, 5e-6, 1e-5, 2e-5}) {
        auto q = reference();
        q.net.geometry.cn_density = lam;
        const double v = average_success_probability(q);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }

    // Non-decreasing in the latency budget.
    prev = 0.0;
    for (double tmax : {0.030, 0.040, 0.055, 0.080, 0.120}) {
        auto q = reference();
        q.net.task.max_latency = tmax;
        const double v = average_success_probability(q);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("altitude collapse is handled by the outer split") {
    auto p = reference();
    p.net.radio.uav_tx_power = 10.0;
    p.net.geometry.altitude = 317.857142857;  // partial collapse region
    const double v = average_success_probability(p);
    CHECK(v == Catch::Approx(0.42895352).epsilon(2e-5));
    p.net.geometry.altitude = 700.0;  // full collapse
    CHECK(average_success_probability(p) == Catch::Approx(0.0).margin(1e-12));
}
