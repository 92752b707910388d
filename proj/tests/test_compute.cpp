#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "uavcpn/compute.hpp"
#include "uavcpn/rng.hpp"

using namespace uavcpn;

TEST_CASE("deterministic step") {
    ComputeModel m;
    m.variant = DeterministicCompute{2e-3};
    CHECK(latency_cdf(m, 1e-3, 8e6) == 0.0);
    CHECK(latency_cdf(m, 3e-3, 8e6) == 1.0);
    // Right-continuous at the step: a budget exactly equal to t_c succeeds.
    CHECK(latency_cdf(m, 2e-3, 8e6) == 1.0);
    CHECK(latency_cdf(m, std::numeric_limits<double>::infinity(), 8e6) == 1.0);
}

TEST_CASE("exponential family") {
    ComputeModel m;
    m.variant = ExponentialCompute{1e-3};
    CHECK(latency_cdf(m, 1e-3, 8e6) == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(latency_cdf(m, -1.0, 8e6) == 0.0);

    ComputeModel s;
    s.variant = ShiftedExponentialCompute{0.5e-3, 1e-3};
    CHECK(latency_cdf(s, 0.4e-3, 8e6) == 0.0);
    CHECK(latency_cdf(s, 1.5e-3, 8e6) == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("empirical rank fractions") {
    ComputeModel m;
    m.variant = EmpiricalCompute{{1e-3, 2e-3, 3e-3, 4e-3}};
    CHECK(latency_cdf(m, 1e-3, 8e6) == Catch::Approx(0.25));
    CHECK(latency_cdf(m, 2e-3, 8e6) == Catch::Approx(0.50));
    CHECK(latency_cdf(m, 4e-3, 8e6) == Catch::Approx(1.0));
    CHECK(latency_cdf(m, 0.5e-3, 8e6) == 0.0);
    CHECK(latency_cdf(m, 2.5e-3, 8e6) == Catch::Approx(0.50));
}

TEST_CASE("cdf monotonicity under random models") {
    SplitMix64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        ComputeModel m;
        switch (rng.next() % 4) {
            case 0: m.variant = DeterministicCompute{5e-3 * rng.u01()}; break;
            case 1: m.variant = ExponentialCompute{1e-4 + 5e-3 * rng.u01()}; break;
            case 2:
                m.variant = ShiftedExponentialCompute{2e-3 * rng.u01(), 1e-4 + 2e-3 * rng.u01()};
                break;
            default: {
                std::vector<double> xs;
                const int n = 1 + static_cast<int>(rng.next() % 8);
                for (int k = 0; k < n; ++k) xs.push_back(5e-3 * rng.u01());
                std::sort(xs.begin(), xs.end());
                m.variant = EmpiricalCompute{xs};
            }
        }
        double t1 = 6e-3 * rng.u01(), t2 = 6e-3 * rng.u01();
        if (t1 > t2) std::swap(t1, t2);
        CHECK(latency_cdf(m, t1, 8e6) <= latency_cdf(m, t2, 8e6));
    }
}

TEST_CASE("workload scaling") {
    ComputeModel m;
    m.variant = DeterministicCompute{2e-3};
    m.workload_scaling = true;
    m.reference_data_size = 8e6;
    // Double the workload doubles the deterministic time.
    CHECK(latency_cdf(m, 3e-3, 16e6) == 0.0);
    CHECK(latency_cdf(m, 4e-3, 16e6) == 1.0);
    m.workload_scaling = false;
    CHECK(latency_cdf(m, 3e-3, 16e6) == 1.0);
}

TEST_CASE("sampling matches the cdf") {
    ComputeModel m;
    m.variant = ExponentialCompute{2e-3};
    SplitMix64 rng(17);
    int below = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
        if (sample_compute_latency(m, rng.u01(), 8e6) <= 2e-3) ++below;
    const double expected = latency_cdf(m, 2e-3, 8e6);
    CHECK(std::abs(below / static_cast<double>(n) - expected) < 0.005);

    ComputeModel d;
    d.variant = DeterministicCompute{1.5e-3};
    CHECK(sample_compute_latency(d, 0.3, 8e6) == 1.5e-3);
}

TEST_CASE("validation") {
    ComputeModel m;
    m.variant = EmpiricalCompute{{}};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.variant = EmpiricalCompute{{2e-3, 1e-3}};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.variant = DeterministicCompute{-1.0};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
