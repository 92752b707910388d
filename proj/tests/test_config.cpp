#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "uavcpn/config.hpp"

using namespace uavcpn;

TEST_CASE("defaults carry the reference scenario") {
    RunConfig cfg;
    cfg.finalize();
    CHECK(cfg.net.radio.gu_tx_power == Catch::Approx(100.0));
    CHECK(cfg.net.radio.noise_power == Catch::Approx(1e-15));
    CHECK(cfg.net.task.data_size == Catch::Approx(8e6));
    CHECK(cfg.net.task.max_latency == Catch::Approx(0.055));
    CHECK(cfg.net.geometry.cn_density == Catch::Approx(5e-6));
    CHECK(cfg.net.env.nlos_attenuation == Catch::Approx(0.01));
    // Auto task count: expected GU population of the request disk.
    CHECK(cfg.energy.task_count ==
          Catch::Approx(500e-6 * std::numbers::pi * 200.0 * 200.0).epsilon(1e-12));
}

TEST_CASE("unit conversions on parse") {
    const auto cfg = parse_config(
        "radio.gu_tx_power = 20 dBW\n"
        "radio.noise_power = -120 dBm\n"
        "geometry.cn_density = 5 per_km2\n"
        "task.data_size = 1 MB\n"
        "task.max_latency = 55 ms\n"
        "env.nlos_attenuation = 20 dB\n"
        "budgets.fuel = 40 kJ\n");
    CHECK(cfg.net.radio.gu_tx_power == Catch::Approx(100.0));
    CHECK(cfg.net.radio.noise_power == Catch::Approx(1e-15));
    CHECK(cfg.net.geometry.cn_density == Catch::Approx(5e-6));
    CHECK(cfg.net.task.data_size == Catch::Approx(8e6));
    CHECK(cfg.net.task.max_latency == Catch::Approx(0.055));
    CHECK(cfg.net.env.nlos_attenuation == Catch::Approx(0.01));
    CHECK(cfg.budgets.fuel == Catch::Approx(40000.0));
}

TEST_CASE("comments, blanks and whitespace") {
    const auto cfg = parse_config(
        "# reference run\n"
        "\n"
        "  seed   =  42   # trailing comment\n"
        "scenario = smoke\n");
    CHECK(cfg.seed == 42);
    CHECK(cfg.scenario == "smoke");
}

TEST_CASE("errors are path-qualified") {
    CHECK_THROWS_WITH(parse_config("radio.gu_tx_power = 20\n"),
                      Catch::Matchers::ContainsSubstring("radio.gu_tx_power") &&
                          Catch::Matchers::ContainsSubstring("unit"));
    CHECK_THROWS_WITH(parse_config("nonsense.key = 1\n"),
                      Catch::Matchers::ContainsSubstring("nonsense.key"));
    CHECK_THROWS_WITH(parse_config("task.max_latency = -5 ms\n"),
                      Catch::Matchers::ContainsSubstring("max_latency"));
    CHECK_THROWS_WITH(parse_config("radio.bandwidth = 8 GHzz\n"),
                      Catch::Matchers::ContainsSubstring("unknown unit"));
    CHECK_THROWS_AS(parse_config("task.max_latency 55 ms\n"), ConfigError);
}

TEST_CASE("compute variants") {
    auto cfg = parse_config(
        "compute.variant = exponential\n"
        "compute.mean = 1 ms\n");
    CHECK(std::get<ExponentialCompute>(cfg.compute.variant).mean == Catch::Approx(1e-3));

    cfg = parse_config(
        "compute.variant = empirical\n"
        "compute.samples = list(1,2,4) ms\n");
    const auto& emp = std::get<EmpiricalCompute>(cfg.compute.variant);
    REQUIRE(emp.samples.size() == 3);
    CHECK(emp.samples[2] == Catch::Approx(4e-3));

    CHECK_THROWS_WITH(parse_config("compute.mean = 1 ms\n"),
                      Catch::Matchers::ContainsSubstring("compute.mean"));
}

TEST_CASE("sweep axes") {
    const auto cfg = parse_config(
        "sweep.geometry.altitude = linspace(50, 800, 15) m\n"
        "sweep.compute.t_c = list(0.2, 2) ms\n");
    REQUIRE(cfg.sweep_axes.size() == 2);
    CHECK(cfg.sweep_axes[0].path == "geometry.altitude");
    REQUIRE(cfg.sweep_axes[0].values.size() == 15);
    CHECK(cfg.sweep_axes[0].values.front() == Catch::Approx(50.0));
    CHECK(cfg.sweep_axes[0].values.back() == Catch::Approx(800.0));
    CHECK(cfg.sweep_axes[1].values[1] == Catch::Approx(2e-3));

    const auto log_cfg = parse_config("sweep.geometry.cn_density = logspace(-6, -4, 3) per_m2\n");
    CHECK(log_cfg.sweep_axes[0].values[1] == Catch::Approx(1e-5));

    CHECK_THROWS_WITH(parse_config("sweep.bogus.path = list(1) m\n"),
                      Catch::Matchers::ContainsSubstring("bogus.path"));
}

TEST_CASE("round trip is the identity on normalized configs") {
    const std::string text =
        "scenario = roundtrip\n"
        "seed = 99\n"
        "channel_mode = bernoulli\n"
        "hover_time_policy = expected\n"
        "radio.uav_tx_power = 10 dBW\n"
        "geometry.altitude = 0.3 km\n"
        "compute.variant = shifted_exponential\n"
        "compute.shift = 1 ms\n"
        "compute.mean = 2 ms\n"
        "energy.task_count = 10\n"
        "analysis.cn_field_radius = 1 km\n"
        "sweep.geometry.altitude = linspace(100, 200, 3) m\n";
    const auto cfg = parse_config(text);
    const auto serialized = serialize_config(cfg);
    const auto cfg2 = parse_config(serialized);
    CHECK(serialize_config(cfg2) == serialized);
    CHECK(config_hash(cfg2) == config_hash(cfg));
    CHECK(cfg2.net.geometry.altitude == Catch::Approx(300.0));
    CHECK(cfg2.energy.task_count == Catch::Approx(10.0));
    REQUIRE(cfg2.cn_field_radius.has_value());
    CHECK(*cfg2.cn_field_radius == Catch::Approx(1000.0));
    CHECK(cfg2.energy.hover_time_policy == HoverTimePolicy::expected);
    CHECK(cfg2.channel_mode == ChannelMode::bernoulli);
    REQUIRE(cfg2.sweep_axes.size() == 1);
    CHECK(cfg2.sweep_axes[0].values.size() == 3);
}

TEST_CASE("config hash tracks content but not output routing") {
    RunConfig a, b;
    a.finalize();
    b.finalize();
    CHECK(config_hash(a) == config_hash(b));
    b.out_dir = "elsewhere";
    b.format = OutputFormat::json;
    CHECK(config_hash(a) == config_hash(b));
    b.net.geometry.altitude = 123.0;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("explicit task count disables the auto derivation") {
    auto cfg = parse_config("energy.task_count = 5\ngeometry.gu_density = 900 per_km2\n");
    CHECK(cfg.energy.task_count == Catch::Approx(5.0));
}
