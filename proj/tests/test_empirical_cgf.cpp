#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hotscat/cgf.hpp"
#include "hotscat/simulate.hpp"
#include "hotscat/stats.hpp"

using namespace hotscat;

TEST_CASE("lambda = 0 gives exactly zero") {
    const TempProfile p = TempProfile::uniform(1.0, 1);
    const EmpiricalCgf e =
        estimate_empirical_cgf(TracerModel::Wandering, p, 0, 0.0, 50.0, 200, 5);
    CHECK(e.value == 0.0);
}

TEST_CASE("domain and precondition checks") {
    const TempProfile p = TempProfile::from_betas({1.0, 2.0});
    CHECK_THROWS_AS(
        estimate_empirical_cgf(TracerModel::Wandering, p, 0, -1.0, 50.0, 200, 5),
        std::domain_error);
    CHECK_THROWS_AS(
        estimate_empirical_cgf(TracerModel::Wandering, p, 0, 2.0, 50.0, 200, 5),
        std::domain_error);
    CHECK_THROWS_AS(
        estimate_empirical_cgf(TracerModel::Wandering, p, 0, 0.1, 50.0, 50, 5),
        std::invalid_argument);
}

TEST_CASE("replica currents are deterministic per stream and model-consistent") {
    const TempProfile p = TempProfile::from_betas({1.0, 2.0});
    const std::vector<double> a =
        replica_link_currents(TracerModel::Wandering, p, 0, 100.0, 64, 11, 0, 1);
    const std::vector<double> b =
        replica_link_currents(TracerModel::Wandering, p, 0, 100.0, 64, 11, 0, 2);
    CHECK(a == b);
    // single cell: the wandering walk and the confined bounce are the same process
    const std::vector<double> c =
        replica_link_currents(TracerModel::Confined, p, 0, 100.0, 64, 11, 0, 1);
    CHECK(a == c);
}

TEST_CASE("equilibrium: small-lambda quadratic response") {
    // f(lambda) ~ (lambda^2/2) * sqrt(2/pi) for one link at beta = 1.
    const TempProfile p = TempProfile::uniform(1.0, 1);
    const double curvature = std::sqrt(2.0 / std::numbers::pi);
    for (double lam : {0.05, -0.05}) {
        const EmpiricalCgf e =
            estimate_empirical_cgf(TracerModel::Wandering, p, 0, lam, 3000.0, 4000, 31);
        const double expect = 0.5 * lam * lam * curvature;
        CHECK(std::abs(e.value - expect) <= 0.15 * expect);
    }
}

TEST_CASE("plateau point: small estimate, flagged as tail-dominated") {
    // On the plateau the exponential mean is carried by single-slow-flight
    // events of probability ~ t^{-2}; the plain estimator reports a value
    // near zero and its weight-concentration warning fires.
    const TempProfile p = TempProfile::from_betas({1.0, 2.0});
    const EmpiricalCgf e =
        estimate_empirical_cgf(TracerModel::Wandering, p, 0, 0.5, 1000.0, 2000, 77);
    CHECK(e.value <= 1e-3);
    CHECK(e.value >= -0.08);
    CHECK(e.heavy_tail_warning);
    // and the tilted estimator refuses the plateau outright
    CHECK_THROWS_AS(estimate_empirical_cgf_tilted(TracerModel::Wandering, p, 0, 0.5,
                                                  1000.0, 200, 77),
                    std::invalid_argument);
}

TEST_CASE("mild root-branch point: plain estimate lands near the solver value") {
    const TempProfile p = TempProfile::from_betas({1.0, 2.0});
    const double lam = -0.2;
    const double exact = cgf_value({TracerModel::Wandering, p, 0, lam}).value;
    const EmpiricalCgf e =
        estimate_empirical_cgf(TracerModel::Wandering, p, 0, lam, 200.0, 10000, 3);
    CHECK(std::abs(e.value - exact) <= 0.10 * exact);
    CHECK(e.std_error > 0.0);
}

TEST_CASE("tilted estimator: unbiased against the plain one, sharp at hard points") {
    const TempProfile p = TempProfile::from_betas({1.0, 2.0});
    {
        // benign point: both estimators see the same truth
        const double lam = -0.2;
        const EmpiricalCgf plain =
            estimate_empirical_cgf(TracerModel::Wandering, p, 0, lam, 200.0, 10000, 3);
        const EmpiricalCgf tilted =
            estimate_empirical_cgf_tilted(TracerModel::Wandering, p, 0, lam, 200.0, 2000, 5);
        CHECK(std::abs(plain.value - tilted.value) <=
              3.0 * (plain.std_error + tilted.std_error) + 1e-4);
    }
    {
        // deep point where the plain estimator is tail-starved
        const double lam = -0.5;
        const double exact = cgf_value({TracerModel::Wandering, p, 0, lam}).value;
        const EmpiricalCgf tilted =
            estimate_empirical_cgf_tilted(TracerModel::Wandering, p, 0, lam, 200.0, 2000, 5);
        CHECK(std::abs(tilted.value - exact) <= 0.05 * exact);
        CHECK_FALSE(tilted.heavy_tail_warning);
        // the plain estimator at the same budget underestimates and warns
        const EmpiricalCgf plain =
            estimate_empirical_cgf(TracerModel::Wandering, p, 0, lam, 200.0, 2000, 5);
        CHECK(plain.heavy_tail_warning);
        CHECK(plain.value < exact);
    }
}

TEST_CASE("heavy-tail diagnostics fire when one replica dominates") {
    const TempProfile p = TempProfile::from_betas({1.0, 2.0});
    // deep in the left branch the exponential mean concentrates hard
    const EmpiricalCgf e =
        estimate_empirical_cgf(TracerModel::Wandering, p, 0, -0.9, 400.0, 500, 13);
    CHECK(e.max_weight_share > 0.10);
    CHECK(e.heavy_tail_warning);
}

TEST_CASE("equilibrium current variance rate matches the second cumulant") {
    const TempProfile p = TempProfile::uniform(1.0, 1);
    const double t = 200.0;
    const std::vector<double> j =
        replica_link_currents(TracerModel::Wandering, p, 0, t, 4000, 2049, 0);
    KahanSum sq;
    for (double x : j) sq.add(x * x);
    const double rate = sq.value() / static_cast<double>(j.size()) / t;
    const double closed = equilibrium_second_cumulant(1, 1.0).closed;
    CHECK(std::abs(rate - closed) <= 0.10 * closed);
}
