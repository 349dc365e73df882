#ifndef HOTSCAT_CGF_HPP
#define HOTSCAT_CGF_HPP

#include "hotscat/analytic.hpp"
#include "hotscat/profile.hpp"

namespace hotscat {

// Cumulant generating function f_n(lambda) of the time-integrated current
// through one link, for the wandering chain (2N tilted factors) and the
// confined cell (its two-state specialization). The admissible domain is
// the open interval lambda in (-beta_n, beta_{n+1}). Out of equilibrium f
// vanishes identically on the closed interval between 0 and
// beta_{n+1} - beta_n and is the unique positive root of F(lambda, eps) = 1
// elsewhere; it always satisfies f(lambda) = f(beta_{n+1} - beta_n - lambda).

enum class CgfBranch { PositiveRoot, ZeroPlateau };

struct CgfQuery {
    TracerModel model = TracerModel::Wandering;
    TempProfile profile;
    int link = 0;
    double lambda = 0.0;
};

struct CgfResult {
    double value = 0.0;
    CgfBranch branch = CgfBranch::ZeroPlateau;
    double root_residual = 0.0;          // |F(lambda, value) - 1| on the root branch
    double quadrature_error_bound = 0.0; // propagated from the factor integrals
};

struct CgfTolerances {
    double quad_abs = 5e-15;
    double quad_rel = 1e-13;
    double f_tol = 1e-11;   // stop when |F - 1| falls below this
    double eps_tol = 1e-13; // and/or the eps bracket is this narrow
};

// One tilted factor: beta * integral over v>0 of v exp(-eps/v - a v^2/2)
// with a = beta + lambda*delta. Computed by adaptive quadrature split at the
// integrand mode (the positive root of a v^3 - v - eps = 0), tail mapped to
// a finite interval. Throws std::domain_error when a <= 0 (divergent).
double c_factor(double beta, int delta, double lambda, double eps,
                const CgfTolerances& tol = {});
// Closed form of the same factor at eps = 0: beta / (beta + lambda*delta).
double c_factor_closed0(double beta, int delta, double lambda);

// Product of the tilted factors over the state space (grouped by distinct
// (beta, delta) pairs). error_bound is the propagated quadrature bound.
struct BigFResult {
    double value = 0.0;
    double error_bound = 0.0;
};
BigFResult big_f(const CgfQuery& query, double eps, const CgfTolerances& tol = {});

CgfResult cgf_value(const CgfQuery& query, const CgfTolerances& tol = {});

// One-sided derivative of f at lambda = 0 taken from the positive-root side
// (left side when beta_n <= beta_{n+1}, right side otherwise); equals minus
// the stationary current through the link in both orientations. Richardson
// extrapolation of one-sided differences with steps h, h/2, h/4.
double cgf_slope_at_zero(TracerModel model, const TempProfile& profile, int link,
                         const CgfTolerances& tol = {});

// Same quantity through the implicit-function route: the ratio of the two
// closed integrals d(F)/d(lambda) and d(F)/d(eps) at (0, 0), both evaluated
// by quadrature. Independent of the root solver.
double cgf_slope_at_zero_implicit(TracerModel model, const TempProfile& profile, int link,
                                  const CgfTolerances& tol = {});

// Second derivative of f at lambda = 0 for the equilibrium profile:
// closed form (1/N) sqrt(2/(pi beta^5)) and a central-difference value from
// the root solver, which must agree with it.
struct SecondCumulant {
    double closed = 0.0;
    double numeric = 0.0;
};
SecondCumulant equilibrium_second_cumulant(int n_links, double beta,
                                           const CgfTolerances& tol = {});

// Green-Kubo consistency: lhs is the numeric equilibrium second cumulant,
// rhs_mixed is -2 d/d(dbeta) d/d(lambda) f at the equilibrium point computed
// from the closed first-derivative formula, closed is the explicit value.
struct GreenKuboCheck {
    double lhs = 0.0;
    double rhs_mixed = 0.0;
    double closed = 0.0;
};
GreenKuboCheck green_kubo_check(int n_links, double beta, int link,
                                const CgfTolerances& tol = {});

// The perturbed profile used by the Green-Kubo check: beta everywhere except
// beta_n = beta - dbeta/2 and beta_{n+1} = beta + dbeta/2.
TempProfile perturbed_pair_profile(int n_links, double beta, int link, double dbeta);

} // namespace hotscat

#endif
