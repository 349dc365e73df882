#include "hotscat/selfconsistent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hotscat {

namespace {

void require_temperatures(double t_left, double t_right, int n_links) {
    if (!(t_left > 0.0) || !(t_right > 0.0))
        throw std::invalid_argument("profile solver: boundary temperatures must be positive");
    if (n_links < 1)
        throw std::invalid_argument("profile solver: n_links must be >= 1");
}

double interior_residual(const ProfileSolution& s) {
    const StationaryReport r = (s.model == TracerModel::Wandering)
                                   ? wandering_stationary(s.profile(), 1)
                                   : confined_stationary(s.profile());
    double worst = 0.0;
    for (int n = 1; n < s.n_links(); ++n)
        worst = std::max(worst, std::abs(r.energy_flow[static_cast<std::size_t>(n)]));
    return worst;
}

// Advance one link: find T_next with T_next - t = c (t^-1/2 + T_next^-1/2),
// c >= 0. The left side grows and the right side falls in T_next, so the
// root is unique and bracketed by [t, t + 2 c t^-1/2].
double advance_link(double t, double c) {
    if (c == 0.0) return t;
    const double lo = t;
    const double hi = t + 2.0 * c / std::sqrt(t);
    double a = lo, b = hi;
    // g(lo) < 0 <= g(hi)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double g = (mid - t) - c * (1.0 / std::sqrt(t) + 1.0 / std::sqrt(mid));
        if (g >= 0.0) b = mid;
        else a = mid;
        if (b - a <= 1e-14 * b) break;
    }
    return 0.5 * (a + b);
}

double terminal_temperature(double t_left, double c, int n_links) {
    double t = t_left;
    for (int l = 0; l < n_links; ++l) t = advance_link(t, c);
    return t;
}

} // namespace

ProfileSolution wandering_profile(double t_left, double t_right, int n_links) {
    require_temperatures(t_left, t_right, n_links);
    ProfileSolution s;
    s.model = TracerModel::Wandering;
    s.temperatures.resize(static_cast<std::size_t>(n_links) + 1);
    for (int n = 0; n <= n_links; ++n)
        s.temperatures[static_cast<std::size_t>(n)] =
            t_left + (static_cast<double>(n) / n_links) * (t_right - t_left);
    s.temperatures.front() = t_left;
    s.temperatures.back() = t_right;
    const StationaryReport r = wandering_stationary(s.profile(), 1);
    s.flux = r.current[0];
    s.residual = interior_residual(s);
    return s;
}

ProfileSolution confined_profile(double t_left, double t_right, int n_links) {
    require_temperatures(t_left, t_right, n_links);

    if (t_right < t_left) {
        ProfileSolution mirrored = confined_profile(t_right, t_left, n_links);
        std::reverse(mirrored.temperatures.begin(), mirrored.temperatures.end());
        mirrored.flux = -mirrored.flux;
        mirrored.residual = interior_residual(mirrored);
        return mirrored;
    }

    ProfileSolution s;
    s.model = TracerModel::Confined;
    s.temperatures.assign(static_cast<std::size_t>(n_links) + 1, t_left);

    if (t_right > t_left) {
        // Outer bisection on the constant link flux c: T_N(c) is increasing.
        double c_lo = 0.0;
        double c_hi = (t_right - t_left) * std::sqrt(t_right) / n_links;
        while (terminal_temperature(t_left, c_hi, n_links) < t_right) {
            c_lo = c_hi;
            c_hi *= 2.0;
            if (c_hi > 1e12)
                throw std::runtime_error("confined_profile: flux bracket failed to close");
        }
        for (int it = 0; it < 200; ++it) {
            const double c_mid = 0.5 * (c_lo + c_hi);
            const double gap = terminal_temperature(t_left, c_mid, n_links) - t_right;
            if (gap >= 0.0) c_hi = c_mid;
            else c_lo = c_mid;
            if (std::abs(gap) <= 1e-13 * t_right) break;
        }
        const double c = 0.5 * (c_lo + c_hi);
        double t = t_left;
        for (int l = 1; l <= n_links; ++l) {
            t = advance_link(t, c);
            s.temperatures[static_cast<std::size_t>(l)] = t;
        }
        if (std::abs(s.temperatures.back() - t_right) > 1e-10 * t_right)
            throw std::runtime_error("confined_profile: shooting did not reach the right boundary");
        s.temperatures.back() = t_right;
    }

    const StationaryReport r = confined_stationary(s.profile());
    s.flux = r.current[0];
    s.residual = interior_residual(s);
    return s;
}

double continuum_profile(double t_left, double t_right, double x) {
    if (!(t_left > 0.0) || !(t_right > 0.0))
        throw std::invalid_argument("continuum_profile: temperatures must be positive");
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("continuum_profile: x must lie in [0,1]");
    const double a = std::pow(t_left, 1.5);
    const double b = std::pow(t_right, 1.5);
    return std::pow(a + x * (b - a), 2.0 / 3.0);
}

double local_conductivity(double t_left, double t_right, double x) {
    return std::sqrt(continuum_profile(t_left, t_right, x) / (2.0 * std::numbers::pi));
}

double local_conductivity_finite(const ProfileSolution& solution, double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("local_conductivity_finite: x must lie in [0,1]");
    const int n = solution.n_links();
    int link = static_cast<int>(std::floor(n * x));
    link = std::min(link, n - 1);
    const StationaryReport r = (solution.model == TracerModel::Wandering)
                                   ? wandering_stationary(solution.profile(), 1)
                                   : confined_stationary(solution.profile());
    return r.conductivity[static_cast<std::size_t>(link)];
}

} // namespace hotscat
