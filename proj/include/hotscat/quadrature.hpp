#ifndef HOTSCAT_QUADRATURE_HPP
#define HOTSCAT_QUADRATURE_HPP

#include <functional>

namespace hotscat {

struct QuadResult {
    double value = 0.0;
    double error_bound = 0.0; // accumulated |K15 - G7| over accepted panels
    int panels = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) on a finite interval. Panels are bisected
// until the local error estimate meets abs_tol + rel_tol * |integral|.
QuadResult gk_integrate(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-13, double rel_tol = 1e-13);

// Integral over [a, +inf), with the tail mapped through v = a + s/(1-s).
// `scale` stretches the map so the integrand's bulk lands at moderate s.
QuadResult gk_integrate_to_inf(const std::function<double(double)>& f, double a,
                               double scale = 1.0,
                               double abs_tol = 1e-13, double rel_tol = 1e-13);

} // namespace hotscat

#endif
