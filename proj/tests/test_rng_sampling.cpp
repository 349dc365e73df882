#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hotscat/rng.hpp"
#include "hotscat/sampling.hpp"
#include "hotscat/stats.hpp"

using namespace hotscat;

namespace {

// Test-side Simpson oracle, independent of the library quadrature.
double simpson(double (*f)(double, double), double beta, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = f(a, beta) + f(b, beta);
    for (int i = 1; i < n; ++i) acc += f(a + i * h, beta) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double speed_density_times_v(double v, double beta) {
    return v * beta * v * std::exp(-0.5 * beta * v * v);
}

} // namespace

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool all_equal = true, c_differs = false, d_differs = false;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t xa = a.next_u64();
        if (xa != b.next_u64()) all_equal = false;
        if (xa != c.next_u64()) c_differs = true;
        if (xa != d.next_u64()) d_differs = true;
    }
    CHECK(all_equal);
    CHECK(c_differs);
    CHECK(d_differs);
}

TEST_CASE("uniforms live in [0,1) and open variant avoids zero") {
    RngStream rng(1, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_u01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    RngStream rng2(2, 0);
    for (int i = 0; i < 100000; ++i) REQUIRE(rng2.next_open01() > 0.0);
}

TEST_CASE("inverse CDF algebra at the unit point") {
    const double u = 1.0 - std::exp(-0.5);
    CHECK(emission_speed_from_u(1.0, u) == doctest::Approx(1.0).epsilon(1e-14));
    // Reciprocal of the same draw.
    RngStream r1(9, 1), r2(9, 1);
    for (int i = 0; i < 10000; ++i) {
        const double v = sample_emission_speed(2.5, r1);
        const double tau = sample_interarrival(2.5, r2);
        REQUIRE(tau == 1.0 / v);
    }
}

TEST_CASE("rejects nonpositive beta and bad uniforms") {
    RngStream rng(3, 0);
    CHECK_THROWS_AS(sample_emission_speed(0.0, rng), std::domain_error);
    CHECK_THROWS_AS(sample_emission_speed(-1.0, rng), std::domain_error);
    CHECK_THROWS_AS(sample_interarrival(0.0, rng), std::domain_error);
    CHECK_THROWS_AS(emission_speed_from_u(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(emission_speed_from_u(1.0, 1.0), std::domain_error);
}

TEST_CASE("speed mean matches the quadrature oracle within Monte Carlo error") {
    // Oracle: integral of v * phi_1(v) over v > 0.
    const double oracle = simpson(speed_density_times_v, 1.0, 0.0, 14.0, 200000);
    CHECK(oracle == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-10));

    const int n = 1'000'000;
    RngStream rng(2024, 0);
    KahanSum acc;
    for (int i = 0; i < n; ++i) acc.add(sample_emission_speed(1.0, rng));
    const double mean = acc.value() / n;
    const double sd = std::sqrt(2.0 - std::numbers::pi / 2.0); // exact speed variance at beta=1
    CHECK(std::abs(mean - oracle) < 3.0 * sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("interarrival mean matches quadrature within empirical error") {
    const int n = 1'000'000;
    RngStream rng(2025, 0);
    std::vector<double> taus(n);
    for (auto& t : taus) t = sample_interarrival(1.0, rng);
    const MeanStderr ms = mean_and_stderr(taus);
    CHECK(std::abs(ms.mean - interarrival_mean(1.0)) < 3.0 * ms.std_error + 1e-3);
}

TEST_CASE("empirical speed CDF passes KS at the 1% level, beta = 4") {
    const int n = 100000;
    RngStream rng(7, 3);
    std::vector<double> v(n);
    for (auto& x : v) x = sample_emission_speed(4.0, rng);
    const double d = ks_distance(std::move(v), [](double x) { return emission_speed_cdf(4.0, x); });
    CHECK(d < ks_critical_1pct(n));
}

TEST_CASE("interarrival tail is quadratic: P(tau > 10) near beta/200") {
    const int n = 1'000'000;
    RngStream rng(11, 0);
    int count = 0;
    for (int i = 0; i < n; ++i)
        if (sample_interarrival(1.0, rng) > 10.0) ++count;
    const double frac = static_cast<double>(count) / n;
    const double expected = 0.5 / 100.0; // beta/(2 t^2)
    const double sigma = std::sqrt(expected / n);
    CHECK(std::abs(frac - expected) < 3.0 * sigma + 2e-5);
}

TEST_CASE("second moment of tau drifts upward with the sample size") {
    // The second moment diverges logarithmically; this is a sanity check,
    // not a sharp gate.
    RngStream rng(5, 0);
    double m2_small = 0.0, m2_large = 0.0;
    const int small_n = 10000, large_n = 1'000'000;
    for (int i = 0; i < large_n; ++i) {
        const double tau = sample_interarrival(1.0, rng);
        if (i < small_n) m2_small += tau * tau;
        m2_large += tau * tau;
    }
    m2_small /= small_n;
    m2_large /= large_n;
    CHECK(std::isfinite(m2_large));
    CHECK(m2_large > 1.0); // E[tau^2] truncated at n=1e6 comfortably exceeds 1
    CHECK(m2_small > 0.5);
}

TEST_CASE("closed CDF helpers agree with each other") {
    // P(tau <= t) = P(v >= 1/t)
    for (double t : {0.3, 0.7, 1.0, 2.5, 10.0}) {
        const double lhs = interarrival_cdf(2.0, t);
        const double rhs = 1.0 - emission_speed_cdf(2.0, 1.0 / t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    CHECK(stationary_age_cdf(1.0, 1e9) == doctest::Approx(1.0));
    CHECK(stationary_age_cdf(1.0, 1e-9) == doctest::Approx(0.0));
    CHECK(stationary_span_cdf(1.0, 1e9) == doctest::Approx(1.0));
    // the span is stochastically larger than the age
    for (double x : {0.5, 1.0, 2.0, 5.0})
        CHECK(stationary_span_cdf(1.0, x) < stationary_age_cdf(1.0, x));
}
