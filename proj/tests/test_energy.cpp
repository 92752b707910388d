#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "uavcpn/energy.hpp"
#include "uavcpn/units.hpp"

using namespace uavcpn;

namespace {

AnalysisParams reference() {
    AnalysisParams p;
    p.compute.variant = DeterministicCompute{2e-3};
    return p;
}

}  // namespace

TEST_CASE("hover power decomposition") {
    const EnergyParams ep;
    CHECK(hover_power(ep) == Catch::Approx(8600.4938785396).epsilon(1e-10));

    // Induced term alone when the blades sweep no profile drag.
    EnergyParams still = ep;
    still.tip_speed = 1e-9;
    CHECK(hover_power(still) == Catch::Approx(2858.3063785396).epsilon(1e-6));

    // Induced term scales as (rho*A)^(-1/2).
    EnergyParams doubled = still;
    doubled.air_density *= 2.0;
    doubled.rotor_disc_area *= 2.0;
    CHECK(hover_power(doubled) == Catch::Approx(2858.3063785396 / 2.0).epsilon(1e-6));
}

TEST_CASE("hovering duration") {
    const auto p = reference();
    const EnergyParams ep;

    // Worst case serves the edge GU at the full latency budget per task.
    const double dur = hovering_duration(10.0, 100.0, p, ep);
    CHECK(dur == Catch::Approx(0.055 * ep.task_count).epsilon(1e-6));

    EnergyParams expected_policy = ep;
    expected_policy.hover_time_policy = HoverTimePolicy::expected;
    const double dur_exp = hovering_duration(10.0, 100.0, p, expected_policy);
    CHECK(dur_exp == Catch::Approx(0.052243307 * ep.task_count).epsilon(1e-5));
    CHECK(dur_exp <= dur);

    // Worst case dominates the expected policy across operating points.
    for (double h : {60.0, 150.0, 300.0})
        for (double pd : {3.0, 10.0, 100.0})
            CHECK(hovering_duration(pd, h, p, expected_policy) <=
                  hovering_duration(pd, h, p, ep) + 1e-12);

    AnalysisParams zero = p;
    zero.net.task.data_size = 0.0;
    CHECK(hovering_duration(10.0, 100.0, zero, ep) == 0.0);
}

TEST_CASE("propulsion energy") {
    const auto p = reference();
    const EnergyParams ep;
    CHECK(propulsion_energy(10.0, 100.0, p, ep) == Catch::Approx(42461.173225).epsilon(1e-6));
    CHECK(propulsion_energy(1000.0, 310.0, p, ep) == Catch::Approx(95969.173225).epsilon(1e-6));
    CHECK(propulsion_energy(10.0, 50.0, p, ep) == Catch::Approx(29721.173225).epsilon(1e-6));
    CHECK(propulsion_energy(1000.0, 310.0, p, ep) > 40000.0);

    // Pure hover at the initial altitude with no payload consumes nothing.
    AnalysisParams zero = p;
    zero.net.task.data_size = 0.0;
    CHECK(propulsion_energy(10.0, ep.initial_altitude, zero, ep) == 0.0);

    // Descent credit is floored at zero unless opted in.
    EnergyParams low = ep;
    low.initial_altitude = 120.0;
    const double floored = propulsion_energy(10.0, 100.0, p, low);
    CHECK(floored == Catch::Approx(hover_power(ep) * hovering_duration(10.0, 100.0, p, low))
                         .epsilon(1e-9));
    low.descent_credit = true;
    CHECK(propulsion_energy(10.0, 100.0, p, low) < floored);

    // Monotone non-decreasing in altitude above the initial altitude.
    double prev = 0.0;
    for (double h : {50.0, 100.0, 200.0, 300.0, 450.0, 600.0}) {
        const double e = propulsion_energy(100.0, h, p, ep);
        CHECK(e >= prev - 1e-9);
        prev = e;
    }
}

TEST_CASE("communication energy") {
    const auto p = reference();
    const EnergyParams ep;
    CHECK(communication_energy(10.0, 100.0, p, ep) == Catch::Approx(18.645675).epsilon(1e-6));
    CHECK(communication_energy(1000.0, 310.0, p, ep) ==
          Catch::Approx(1860.327076).epsilon(1e-6));
    CHECK(communication_energy(10.0, 50.0, p, ep) == Catch::Approx(17.979310).epsilon(1e-6));
    CHECK(communication_energy(units::dbw_to_watt(5.0), 50.0, p, ep) ==
          Catch::Approx(5.685557).epsilon(1e-6));

    AnalysisParams zero = p;
    zero.net.task.data_size = 0.0;
    CHECK(communication_energy(10.0, 100.0, zero, ep) == 0.0);

    // Vanishing transmit power kills the rate; the 0 * inf product resolves
    // to an infeasible +inf.
    AnalysisParams harsh = p;
    harsh.net.radio.noise_power = 1.0;
    CHECK(std::isinf(communication_energy(1e-300, 100.0, harsh, ep)));

    // Continuity in P_d: small steps move the energy smoothly.
    double prev = communication_energy(1.0, 100.0, p, ep);
    for (double pd = 2.0; pd <= 64.0; pd *= 2.0) {
        const double e = communication_energy(pd, 100.0, p, ep);
        CHECK(e > prev);
        CHECK(e < prev * 2.2);
        prev = e;
    }
}

TEST_CASE("feasibility predicate") {
    const auto p = reference();
    const EnergyParams ep;
    const OperatingLimits limits;

    SECTION("interior point with generous budgets") {
        const auto r = is_feasible(10.0, 100.0, {1e9, 1e9}, limits, p, ep);
        CHECK(r.feasible);
        CHECK(r.describe() == "feasible");
    }
    SECTION("zero battery with work to do") {
        const auto r = is_feasible(10.0, 100.0, {0.0, 1e9}, limits, p, ep);
        CHECK_FALSE(r.feasible);
        CHECK(r.battery_exceeded);
        CHECK(r.describe().find("battery") != std::string::npos);
    }
    SECTION("the documented fuel threshold at (10 dBW, 100 m)") {
        CHECK_FALSE(is_feasible(10.0, 100.0, {120.0, 42000.0}, limits, p, ep).feasible);
        CHECK(is_feasible(10.0, 100.0, {120.0, 43000.0}, limits, p, ep).feasible);
    }
    SECTION("bounds checks") {
        auto r = is_feasible(1e6, 100.0, {1e9, 1e9}, limits, p, ep);
        CHECK(r.power_out_of_range);
        r = is_feasible(10.0, 5000.0, {1e9, 1e9}, limits, p, ep);
        CHECK(r.altitude_out_of_range);
    }
    SECTION("budget tightening never makes a point feasible") {
        for (double eb : {5.0, 20.0, 60.0, 120.0}) {
            for (double ef : {30e3, 42e3, 60e3}) {
                const bool loose = is_feasible(10.0, 100.0, {eb, ef}, limits, p, ep).feasible;
                const bool tight =
                    is_feasible(10.0, 100.0, {eb * 0.5, ef * 0.5}, limits, p, ep).feasible;
                if (tight) CHECK(loose);
            }
        }
    }
}
