#ifndef HOTSCAT_BRENT_HPP
#define HOTSCAT_BRENT_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hotscat {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int evaluations = 0;
};

// Brent's bracketing root finder: inverse quadratic / secant steps with a
// bisection safeguard. Requires f(a) and f(b) of opposite sign. Stops when
// |f| <= f_tol or the bracket shrinks below x_tol (absolute).
template <class F>
RootResult brent_root(F&& f, double a, double b, double x_tol, double f_tol,
                      int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    int evals = 2;
    if (fa == 0.0) return {a, fa, evals};
    if (fb == 0.0) return {b, fb, evals};
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent_root: endpoints do not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * x_tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || std::abs(fb) <= f_tol)
            return {b, fb, evals};
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        if (std::abs(d) > tol1) b += d;
        else b += (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        ++evals;
    }
    return {b, fb, evals};
}

} // namespace hotscat

#endif
