#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "uavcpn/channel.hpp"
#include "uavcpn/rng.hpp"

using namespace uavcpn;

namespace {
NetworkParams table1() { return NetworkParams{}; }  // defaults carry the reference scenario
}

TEST_CASE("los probability scalar values") {
    const EnvironmentParams env;
    // Straight below the UAV the elevation is 90 degrees.
    CHECK(los_probability(100.0, 0.0, env) == Catch::Approx(0.9997067139).epsilon(1e-9));
    // 45-degree geometry, independent scalar evaluation.
    CHECK(los_probability(200.0, 200.0, env) == Catch::Approx(0.8822663081).epsilon(1e-9));
    // Far-range floor: elevation angle -> 0.
    const double floor = 1.0 / (1.0 + env.c_offset * std::exp(env.b_slope * env.c_offset));
    CHECK(los_probability(200.0, 1e9, env) == Catch::Approx(floor).epsilon(1e-5));
}

TEST_CASE("los probability bounds and monotonicity") {
    const EnvironmentParams env;
    SplitMix64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const double h = 1.0 + 999.0 * rng.u01();
        const double r = 2000.0 * rng.u01();
        const double p = los_probability(h, r, env);
        CHECK(p > 0.0);
        CHECK(p < 1.0);
        if (r > 0.0) {
            CHECK(los_probability(h * 1.1, r, env) > p);
            CHECK(los_probability(h, r + 10.0, env) < p);
        }
    }
    CHECK_THROWS_AS(los_probability(std::nan(""), 10.0, env), std::invalid_argument);
    CHECK_THROWS_AS(los_probability(100.0, -1.0, env), std::invalid_argument);
    CHECK_THROWS_AS(los_probability(0.0, 10.0, env), std::invalid_argument);
}

TEST_CASE("mean received power scalar oracle") {
    const EnvironmentParams env;
    CHECK(mean_received_power(100.0, 200.0, 200.0, 2.0, env) ==
          Catch::Approx(1.1043045563e-3).epsilon(1e-9));
    // eta = 1 removes the NLoS penalty entirely.
    EnvironmentParams no_nlos = env;
    no_nlos.nlos_attenuation = 1.0;
    CHECK(mean_received_power(50.0, 300.0, 120.0, 2.0, no_nlos) ==
          Catch::Approx(50.0 / (300.0 * 300.0 + 120.0 * 120.0)).epsilon(1e-12));
    // Inverse-square scaling at alpha=2 in the altitude->0 limit, up to the
    // LoS factor drift.
    const double near = mean_received_power(10.0, 100.0, 1e-6, 2.0, no_nlos);
    const double far = mean_received_power(10.0, 200.0, 1e-6, 2.0, no_nlos);
    CHECK(near / far == Catch::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("mean power equals probability-weighted conditional branches") {
    const EnvironmentParams base;
    SplitMix64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        EnvironmentParams env = base;
        env.b_slope = 0.05 + rng.u01();
        env.c_offset = 1.0 + 20.0 * rng.u01();
        env.nlos_attenuation = 1e-3 + rng.u01() * (1.0 - 1e-3);
        const double ptx = 0.1 + 100.0 * rng.u01();
        const double r = 1000.0 * rng.u01();
        const double h = 1.0 + 500.0 * rng.u01();
        const double alpha = 2.0 + 2.0 * rng.u01();
        const double p = los_probability(h, r, env);
        const double blended = p * conditional_received_power(ptx, r, h, alpha, env, true) +
                               (1.0 - p) * conditional_received_power(ptx, r, h, alpha, env, false);
        CHECK(mean_received_power(ptx, r, h, alpha, env) ==
              Catch::Approx(blended).epsilon(1e-13));
    }
}

TEST_CASE("conditional branches") {
    const EnvironmentParams env;
    const double los = conditional_received_power(100.0, 300.0, 200.0, 2.0, env, true);
    const double nlos = conditional_received_power(100.0, 300.0, 200.0, 2.0, env, false);
    CHECK(los == Catch::Approx(100.0 / (300.0 * 300.0 + 200.0 * 200.0)));
    CHECK(nlos == Catch::Approx(0.01 * los).epsilon(1e-12));
    EnvironmentParams eta1 = env;
    eta1.nlos_attenuation = 1.0;
    CHECK(conditional_received_power(5.0, 40.0, 60.0, 2.5, eta1, true) ==
          conditional_received_power(5.0, 40.0, 60.0, 2.5, eta1, false));
}

TEST_CASE("link rate") {
    const RadioParams radio;
    CHECK(link_rate(radio.noise_power, radio) == Catch::Approx(radio.bandwidth));
    CHECK(link_rate(0.0, radio) == 0.0);
    const EnvironmentParams env;
    const double pr = mean_received_power(100.0, 200.0, 200.0, 2.0, env);
    CHECK(link_rate(pr, radio) == Catch::Approx(3.2005020197e8).epsilon(1e-9));
    CHECK(link_rate(2.0 * pr, radio) > link_rate(pr, radio));
}

TEST_CASE("transmission latencies") {
    const auto p = table1();
    CHECK(uplink_latency(200.0, p) == Catch::Approx(2.4996078586e-2).epsilon(1e-9));
    CHECK(uplink_latency(100.0, p) == Catch::Approx(2.4481189501e-2).epsilon(1e-9));
    CHECK(downlink_latency(300.0, p) == Catch::Approx(2.5775589087e-2).epsilon(1e-9));
    CHECK(uplink_latency(200.0, p) < p.task.max_latency);

    NetworkParams zero = p;
    zero.task.data_size = 0.0;
    CHECK(uplink_latency(123.0, zero) == 0.0);
    CHECK(transmission_latency(8e6, 0.0) == kInfiniteLatency);

    // Strictly increasing in horizontal distance at fixed altitude.
    double prev_u = uplink_latency(0.0, p), prev_d = downlink_latency(0.0, p);
    for (double r = 50.0; r <= 1000.0; r += 50.0) {
        const double tu = uplink_latency(r, p), td = downlink_latency(r, p);
        CHECK(tu > prev_u);
        CHECK(td > prev_d);
        prev_u = tu;
        prev_d = td;
    }
}

TEST_CASE("max service radius against a dense grid scan") {
    const auto p = table1();
    NetworkParams q = p;
    q.geometry.altitude = 200.0;
    const double r_star = max_service_radius(100.0, q);
    CHECK(r_star == Catch::Approx(1018.671062).margin(0.05));

    // Dense scan of the downlink latency at 0.1 m resolution.
    const double residual = q.task.max_latency - uplink_latency(100.0, q);
    double r_grid = 0.0;
    for (double r = 0.0; r < 2000.0; r += 0.1) {
        if (downlink_latency(r, q) <= residual) r_grid = r;
        else break;
    }
    CHECK(std::abs(r_star - r_grid) <= 0.2);

    // Residual identity at the interior solution.
    CHECK(std::abs(downlink_latency(r_star, q) - residual) <= 1e-9);
}

TEST_CASE("max service radius limits") {
    const auto p = table1();

    NetworkParams tight = p;
    tight.task.max_latency = 0.01;  // below the uplink time everywhere
    CHECK(max_service_radius(100.0, tight) == 0.0);

    NetworkParams loose = p;
    loose.task.max_latency = kInfiniteLatency;
    CHECK(std::isinf(max_service_radius(100.0, loose)));
    CHECK(max_service_radius(100.0, loose, 750.0) == 750.0);

    // Strictly decreasing in r_u wherever positive.
    double prev = max_service_radius(0.0, p);
    for (double ru = 25.0; ru <= 200.0; ru += 25.0) {
        const double r = max_service_radius(ru, p);
        CHECK(r < prev);
        prev = r;
    }

    // A small initial window forces the geometric bracket expansion.
    NetworkParams narrow = p;
    narrow.geometry.service_window_radius = 250.0;
    CHECK(max_service_radius(100.0, narrow) ==
          Catch::Approx(max_service_radius(100.0, p)).epsilon(1e-9));
}
