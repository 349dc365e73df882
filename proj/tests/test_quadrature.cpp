#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hotscat/brent.hpp"
#include "hotscat/quadrature.hpp"

using namespace hotscat;

TEST_CASE("finite interval: polynomial and gaussian") {
    const QuadResult cubic = gk_integrate([](double x) { return x * x * x; }, 0.0, 2.0);
    CHECK(cubic.value == doctest::Approx(4.0).epsilon(1e-14));

    const QuadResult gauss =
        gk_integrate([](double x) { return std::exp(-0.5 * x * x); }, 0.0, 8.0);
    CHECK(gauss.value == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-13));
}

TEST_CASE("semi-infinite tail map") {
    // integral over (0, inf) of x exp(-x) = 1
    const QuadResult r =
        gk_integrate_to_inf([](double x) { return x * std::exp(-x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    // heavier tail, shifted start: integral over (2, inf) of exp(-x/3)/3 = e^{-2/3}
    const QuadResult s = gk_integrate_to_inf(
        [](double x) { return std::exp(-x / 3.0) / 3.0; }, 2.0, 3.0);
    CHECK(s.value == doctest::Approx(std::exp(-2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("adaptivity resolves sharp structure at panel edges") {
    // Narrow gaussian centered on a bisection point: the recursion has to
    // descend ~14 levels before the panels match the feature width.
    const double mu = 0.125;
    const double s = 1e-4;
    auto bump = [mu, s](double x) {
        const double z = (x - mu) / s;
        return std::exp(-0.5 * z * z);
    };
    const QuadResult r = gk_integrate(bump, 0.0, 1.0, 1e-15, 1e-13);
    CHECK(r.value == doctest::Approx(s * std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-10));

    // Steep boundary layer at the left endpoint, the shape the tilted-factor
    // integrals produce for small eps.
    const double eps = 1e-5;
    auto layer = [eps](double v) {
        if (v <= 0.0) return 0.0;
        return v * std::exp(-eps / v - 0.5 * v * v);
    };
    const QuadResult head = gk_integrate(layer, 0.0, 1.0, 1e-15, 1e-13);
    const QuadResult tail = gk_integrate_to_inf(layer, 1.0, 1.0, 1e-15, 1e-13);
    // reference from a very fine log-spaced trapezoid
    double ref = 0.0;
    {
        const int n = 2'000'000;
        const double lo = std::log(1e-12), hi = std::log(50.0);
        const double h = (hi - lo) / n;
        double prev = layer(std::exp(lo)) * std::exp(lo);
        for (int i = 1; i <= n; ++i) {
            const double x = std::exp(lo + i * h);
            const double cur = layer(x) * x;
            ref += 0.5 * (prev + cur) * h;
            prev = cur;
        }
    }
    CHECK(head.value + tail.value == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("brent solves a bracketed root") {
    const RootResult r = brent_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0,
                                    1e-14, 0.0);
    CHECK(r.x == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(brent_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12, 0.0),
                    std::invalid_argument);
}

TEST_CASE("brent honours the f tolerance") {
    int evals = 0;
    auto f = [&evals](double x) {
        ++evals;
        return std::tanh(x - 0.7);
    };
    const RootResult r = brent_root(f, 0.0, 5.0, 1e-15, 1e-12);
    CHECK(std::abs(r.fx) <= 1e-12);
    CHECK(std::abs(r.x - 0.7) < 1e-11);
}
