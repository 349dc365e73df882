#ifndef HOTSCAT_SAMPLING_HPP
#define HOTSCAT_SAMPLING_HPP

#include "hotscat/rng.hpp"

namespace hotscat {

// Exact samplers for the two laws driving every model in this project:
//   emission speed   v ~ beta * v * exp(-beta v^2 / 2)   on v > 0
//   interarrival     tau = 1/v, with density (beta / tau^3) exp(-beta / (2 tau^2))
// Both are produced by inverse-CDF from a single uniform, so one uniform
// maps to exactly one sample and tau is the bitwise reciprocal of v.

// Inverse CDF of the emission law: v = sqrt(-2 log(1-u) / beta), u in (0,1).
double emission_speed_from_u(double beta, double u);

double sample_emission_speed(double beta, RngStream& rng);
double sample_interarrival(double beta, RngStream& rng);

// Closed-form CDFs, used by goodness-of-fit tests and diagnostics.
double emission_speed_cdf(double beta, double v);       // 1 - exp(-beta v^2/2)
double interarrival_cdf(double beta, double tau);       // exp(-beta/(2 tau^2))
double interarrival_mean(double beta);                  // sqrt(pi beta / 2)

// Stationary laws of the renewal process driven by the interarrival law.
// The age and the residual each follow the classical density P(tau > x)/mean;
// the spanning interval (age + residual) follows the size-biased density
// x psi(x)/mean, whose CDF is the erfc form.
double stationary_age_cdf(double beta, double x);
double stationary_span_cdf(double beta, double x);      // erfc(sqrt(beta/2)/x)

} // namespace hotscat

#endif
