#include "hotscat/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hotscat {

static void require_positive_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::domain_error("sampling: inverse temperature must be positive and finite");
}

double emission_speed_from_u(double beta, double u) {
    require_positive_beta(beta);
    if (!(u > 0.0) || !(u < 1.0))
        throw std::domain_error("sampling: uniform variate must lie in (0,1)");
    // CDF is 1 - exp(-beta v^2/2); log1p keeps accuracy for u near 0.
    return std::sqrt(-2.0 * std::log1p(-u) / beta);
}

double sample_emission_speed(double beta, RngStream& rng) {
    require_positive_beta(beta);
    return emission_speed_from_u(beta, rng.next_open01());
}

double sample_interarrival(double beta, RngStream& rng) {
    // Exactly 1/v with v drawn from the same uniform; the reciprocal coupling
    // is part of the contract, not an implementation accident.
    return 1.0 / sample_emission_speed(beta, rng);
}

double emission_speed_cdf(double beta, double v) {
    require_positive_beta(beta);
    if (v <= 0.0) return 0.0;
    return -std::expm1(-0.5 * beta * v * v);
}

double interarrival_cdf(double beta, double tau) {
    require_positive_beta(beta);
    if (tau <= 0.0) return 0.0;
    return std::exp(-0.5 * beta / (tau * tau));
}

double interarrival_mean(double beta) {
    require_positive_beta(beta);
    return std::sqrt(std::numbers::pi * beta / 2.0);
}

double stationary_age_cdf(double beta, double x) {
    require_positive_beta(beta);
    if (x <= 0.0) return 0.0;
    // integral of P(tau > u)/mean over [0, x], in closed form
    const double span = std::erfc(std::sqrt(beta / 2.0) / x);
    const double tail = x * (-std::expm1(-0.5 * beta / (x * x))) / interarrival_mean(beta);
    return span + tail;
}

double stationary_span_cdf(double beta, double x) {
    require_positive_beta(beta);
    if (x <= 0.0) return 0.0;
    return std::erfc(std::sqrt(beta / 2.0) / x);
}

} // namespace hotscat
