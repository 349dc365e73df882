#include "hotscat/cgf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hotscat/brent.hpp"
#include "hotscat/chain.hpp"
#include "hotscat/quadrature.hpp"

namespace hotscat {

namespace {

void check_query(const CgfQuery& q) {
    if (q.link < 0 || q.link >= q.profile.n_links())
        throw std::invalid_argument("cgf: link out of range");
    const double bn = q.profile.beta(q.link);
    const double bn1 = q.profile.beta(q.link + 1);
    if (!(q.lambda > -bn) || !(q.lambda < bn1))
        throw std::domain_error("cgf: lambda outside the admissible open interval");
}

// Positive root of a v^3 - v - eps = 0, the mode of v exp(-eps/v - a v^2/2).
// The root sits in the monotone branch beyond 1/sqrt(a); plain Newton with a
// bisection fallback.
double integrand_mode(double a, double eps) {
    const double lo0 = 1.0 / std::sqrt(a);
    if (eps == 0.0) return lo0;
    auto g = [a, eps](double v) { return a * v * v * v - v - eps; };
    double lo = lo0;
    double hi = std::max(lo0, std::cbrt((eps + lo0) / a));
    while (g(hi) <= 0.0) hi *= 2.0;
    double v = hi;
    for (int it = 0; it < 100; ++it) {
        const double gv = g(v);
        if (gv > 0.0) hi = v;
        else lo = v;
        const double gp = 3.0 * a * v * v - 1.0;
        double next = v - gv / gp;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - v) <= 1e-12 * v) return next;
        v = next;
    }
    return v;
}

struct FactorValue {
    double value;
    double error_bound;
};

FactorValue c_factor_impl(double beta, int delta, double lambda, double eps,
                          const CgfTolerances& tol) {
    if (delta < -1 || delta > 1)
        throw std::invalid_argument("c_factor: delta must be -1, 0 or +1");
    if (eps < 0.0) throw std::domain_error("c_factor: eps must be nonnegative");
    const double a = beta + lambda * delta;
    if (!(a > 0.0))
        throw std::domain_error("c_factor: divergent integral (beta + lambda*delta <= 0)");

    const double mode = integrand_mode(a, eps);
    auto integrand = [a, eps](double v) {
        if (v <= 0.0) return 0.0;
        return v * std::exp(-eps / v - 0.5 * a * v * v);
    };
    const QuadResult head = gk_integrate(integrand, 0.0, mode, tol.quad_abs, tol.quad_rel);
    const QuadResult tail = gk_integrate_to_inf(integrand, mode, 1.0 / std::sqrt(a),
                                                tol.quad_abs, tol.quad_rel);
    return {beta * (head.value + tail.value),
            beta * (head.error_bound + tail.error_bound)};
}

// Distinct (beta, delta) groups with multiplicities for a query's state space.
std::vector<std::pair<std::pair<double, int>, int>> factor_groups(const CgfQuery& q) {
    std::vector<std::pair<std::pair<double, int>, int>> groups;
    auto add = [&groups](double beta, int delta) {
        for (auto& g : groups) {
            if (g.first.first == beta && g.first.second == delta) {
                ++g.second;
                return;
            }
        }
        groups.push_back({{beta, delta}, 1});
    };

    if (q.model == TracerModel::Confined) {
        add(q.profile.beta(q.link), +1);
        add(q.profile.beta(q.link + 1), -1);
        return groups;
    }
    const int n = q.profile.n_links();
    for (int idx = 0; idx < 2 * n; ++idx) {
        const ChainState s = state_at(idx, n);
        int delta = 0;
        if (s.scatterer == q.link && s.sign == +1) delta = +1;
        else if (s.scatterer == q.link + 1 && s.sign == -1) delta = -1;
        add(q.profile.beta(s.scatterer), delta);
    }
    return groups;
}

} // namespace

double c_factor(double beta, int delta, double lambda, double eps, const CgfTolerances& tol) {
    return c_factor_impl(beta, delta, lambda, eps, tol).value;
}

double c_factor_closed0(double beta, int delta, double lambda) {
    const double a = beta + lambda * delta;
    if (!(a > 0.0))
        throw std::domain_error("c_factor_closed0: divergent (beta + lambda*delta <= 0)");
    return beta / a;
}

BigFResult big_f(const CgfQuery& query, double eps, const CgfTolerances& tol) {
    check_query(query);
    BigFResult out;
    out.value = 1.0;
    double rel_err = 0.0;
    for (const auto& [key, mult] : factor_groups(query)) {
        const FactorValue c = c_factor_impl(key.first, key.second, query.lambda, eps, tol);
        if (!(c.value > 0.0))
            throw std::runtime_error("big_f: factor integral collapsed to zero");
        out.value *= std::pow(c.value, mult);
        rel_err += mult * (c.error_bound / c.value);
    }
    out.error_bound = std::abs(out.value) * rel_err;
    return out;
}

CgfResult cgf_value(const CgfQuery& query, const CgfTolerances& tol) {
    check_query(query);
    const double delta_beta = query.profile.beta(query.link + 1) - query.profile.beta(query.link);
    const double plateau_lo = std::min(0.0, delta_beta);
    const double plateau_hi = std::max(0.0, delta_beta);

    CgfResult result;
    if (query.lambda >= plateau_lo && query.lambda <= plateau_hi) {
        result.branch = CgfBranch::ZeroPlateau;
        return result;
    }

    result.branch = CgfBranch::PositiveRoot;
    const BigFResult f0 = big_f(query, 0.0, tol);
    if (f0.value <= 1.0 + tol.f_tol) {
        // lambda sits numerically on the plateau edge; continuity gives 0.
        result.root_residual = std::abs(f0.value - 1.0);
        result.quadrature_error_bound = f0.error_bound;
        return result;
    }

    double last_err = f0.error_bound;
    auto g = [&query, &tol, &last_err](double eps) {
        const BigFResult f = big_f(query, eps, tol);
        last_err = f.error_bound;
        return f.value - 1.0;
    };

    double lo = 0.0;
    double hi = 1.0;
    double ghi = g(hi);
    while (ghi >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9)
            throw std::runtime_error("cgf_value: failed to bracket the root in eps");
        ghi = g(hi);
    }
    const RootResult root = brent_root(g, lo, hi, tol.eps_tol, tol.f_tol);
    result.value = root.x;
    result.root_residual = std::abs(root.fx);
    result.quadrature_error_bound = last_err;
    return result;
}

double cgf_slope_at_zero(TracerModel model, const TempProfile& profile, int link,
                         const CgfTolerances& tol) {
    if (link < 0 || link >= profile.n_links())
        throw std::invalid_argument("cgf_slope_at_zero: link out of range");
    const double bn = profile.beta(link);
    const double bn1 = profile.beta(link + 1);
    // Probe into the positive-root branch: lambda < 0 when beta_n <= beta_{n+1},
    // lambda > 0 otherwise (the mirrored orientation).
    const double side = (bn1 >= bn) ? -1.0 : 1.0;
    const double h0 = 5e-4 * std::min(bn, bn1);

    CgfTolerances tight = tol;
    tight.f_tol = std::min(tight.f_tol, 1e-12);
    tight.eps_tol = std::min(tight.eps_tol, 1e-14);
    auto f = [&](double lambda) {
        return cgf_value({model, profile, link, lambda}, tight).value;
    };
    auto slope = [&](double h) { return f(side * h) / (side * h); };

    // The factor integrals are only C^1 in eps at 0, so the root carries
    // h^2 log h corrections: the slope differences have error basis
    // {h, h log h}, which two factor-2 stages cancel exactly.
    const double d1 = slope(h0);
    const double d2 = slope(0.5 * h0);
    const double d3 = slope(0.25 * h0);
    const double r1 = 2.0 * d2 - d1;
    const double r2 = 2.0 * d3 - d2;
    return 2.0 * r2 - r1;
}

double cgf_slope_at_zero_implicit(TracerModel model, const TempProfile& profile, int link,
                                  const CgfTolerances& tol) {
    if (link < 0 || link >= profile.n_links())
        throw std::invalid_argument("cgf_slope_at_zero_implicit: link out of range");

    auto gaussian_moment = [&tol](double beta, int power) {
        // integral over v>0 of v^power exp(-beta v^2/2)
        auto f = [beta, power](double v) {
            return std::pow(v, power) * std::exp(-0.5 * beta * v * v);
        };
        const double split = 1.0 / std::sqrt(beta);
        const QuadResult head = gk_integrate(f, 0.0, split, tol.quad_abs, tol.quad_rel);
        const QuadResult tail = gk_integrate_to_inf(f, split, split, tol.quad_abs, tol.quad_rel);
        return head.value + tail.value;
    };

    const double bn = profile.beta(link);
    const double bn1 = profile.beta(link + 1);
    // dF/dlambda at (0,0): only the two tilted factors depend on lambda.
    const double num = -0.5 * bn * gaussian_moment(bn, 3) + 0.5 * bn1 * gaussian_moment(bn1, 3);

    // dF/deps at (0,0): each factor contributes -beta * integral of exp(-beta v^2/2).
    double den = 0.0;
    if (model == TracerModel::Confined) {
        den -= bn * gaussian_moment(bn, 0);
        den -= bn1 * gaussian_moment(bn1, 0);
    } else {
        const int n = profile.n_links();
        for (int idx = 0; idx < 2 * n; ++idx) {
            const double b = profile.beta(state_at(idx, n).scatterer);
            den -= b * gaussian_moment(b, 0);
        }
    }
    return -num / den;
}

SecondCumulant equilibrium_second_cumulant(int n_links, double beta, const CgfTolerances& tol) {
    if (n_links < 1) throw std::invalid_argument("equilibrium_second_cumulant: n_links >= 1");
    if (!(beta > 0.0)) throw std::domain_error("equilibrium_second_cumulant: beta must be positive");

    SecondCumulant out;
    out.closed = std::sqrt(2.0 / (std::numbers::pi * std::pow(beta, 5))) / n_links;

    const TempProfile profile = TempProfile::uniform(beta, n_links);
    CgfTolerances tight = tol;
    tight.f_tol = std::min(tight.f_tol, 1e-13);
    tight.eps_tol = std::min(tight.eps_tol, 1e-15);
    auto f = [&](double lambda) {
        return cgf_value({TracerModel::Wandering, profile, 0, lambda}, tight).value;
    };
    auto second = [&](double h) { return (f(h) + f(-h)) / (h * h); };

    // Error basis of the central second difference here is {h^2, h^2 log h}
    // (the root is not analytic at the plateau point), and two factor-4
    // stages cancel exactly that pair.
    const double h0 = 0.02 * beta;
    const double d1 = second(h0);
    const double d2 = second(0.5 * h0);
    const double d3 = second(0.25 * h0);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d3 - d2) / 3.0;
    out.numeric = (4.0 * r2 - r1) / 3.0;
    return out;
}

TempProfile perturbed_pair_profile(int n_links, double beta, int link, double dbeta) {
    std::vector<double> betas(static_cast<std::size_t>(n_links) + 1, beta);
    betas[static_cast<std::size_t>(link)] = beta - 0.5 * dbeta;
    betas[static_cast<std::size_t>(link) + 1] = beta + 0.5 * dbeta;
    return TempProfile::from_betas(std::move(betas));
}

GreenKuboCheck green_kubo_check(int n_links, double beta, int link, const CgfTolerances& tol) {
    if (n_links < 2)
        throw std::invalid_argument("green_kubo_check: needs n_links >= 2 (an interior pair)");
    if (link < 0 || link > n_links - 2)
        throw std::invalid_argument("green_kubo_check: link must lie in 0..n_links-2");

    GreenKuboCheck out;
    const SecondCumulant sc = equilibrium_second_cumulant(n_links, beta, tol);
    out.lhs = sc.numeric;
    out.closed = sc.closed;

    // Closed first derivative of f in lambda at 0 for the perturbed profile,
    // differenced in dbeta and extrapolated to 0.
    auto slope_closed = [&](double dbeta) {
        const TempProfile p = perturbed_pair_profile(n_links, beta, link, dbeta);
        const double tn = p.temperature(link);
        const double tn1 = p.temperature(link + 1);
        return -(tn - tn1) / wandering_normalization(p);
    };
    auto mixed = [&](double dbeta) { return slope_closed(dbeta) / dbeta; };

    const double d0 = 1e-3 * beta;
    const double m1 = mixed(d0);
    const double m2 = mixed(0.5 * d0);
    const double m3 = mixed(0.25 * d0);
    const double r1 = 2.0 * m2 - m1;
    const double r2 = 2.0 * m3 - m2;
    out.rhs_mixed = -2.0 * (4.0 * r2 - r1) / 3.0;
    return out;
}

} // namespace hotscat
