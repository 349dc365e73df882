#include "hotscat/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hotscat {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double sqrt_half_pi_over(double beta) {
    // integral of exp(-beta p^2/2) over p > 0
    return std::sqrt(kHalfPi / beta);
}

} // namespace

double wandering_normalization(const TempProfile& profile) {
    long double acc = 0.0L;
    for (int l = 0; l < profile.n_links(); ++l)
        acc += std::sqrt(static_cast<long double>(profile.beta(l))) +
               std::sqrt(static_cast<long double>(profile.beta(l + 1)));
    return static_cast<double>(std::sqrt(static_cast<long double>(kHalfPi)) * acc);
}

double confined_link_normalization(const TempProfile& profile, int link) {
    if (link < 0 || link >= profile.n_links())
        throw std::invalid_argument("confined_link_normalization: link out of range");
    return std::sqrt(kHalfPi * profile.beta(link)) + std::sqrt(kHalfPi * profile.beta(link + 1));
}

StationaryReport wandering_stationary(const TempProfile& profile, int n_tracers) {
    if (n_tracers < 1)
        throw std::invalid_argument("wandering_stationary: need at least one tracer");
    const int n = profile.n_links();
    const double z = wandering_normalization(profile);
    const double m = static_cast<double>(n_tracers);
    const std::vector<double> t = profile.temperatures();

    StationaryReport r;
    r.model = TracerModel::Wandering;
    r.n_tracers = n_tracers;
    r.z_total = z;
    r.current.resize(static_cast<std::size_t>(n));
    r.conductivity.assign(static_cast<std::size_t>(n), m / z);
    for (int l = 0; l < n; ++l)
        r.current[static_cast<std::size_t>(l)] = m * (t[l] - t[l + 1]) / z;

    r.energy_flow.resize(static_cast<std::size_t>(n) + 1);
    r.frequency.resize(static_cast<std::size_t>(n) + 1);
    r.energy_flow[0] = m * (t[0] - t[1]) / z;
    r.energy_flow[static_cast<std::size_t>(n)] = m * (t[n] - t[n - 1]) / z;
    r.frequency[0] = m / z;
    r.frequency[static_cast<std::size_t>(n)] = m / z;
    for (int i = 1; i < n; ++i) {
        r.energy_flow[static_cast<std::size_t>(i)] =
            m * (2.0 * t[i] - t[i - 1] - t[i + 1]) / z;
        r.frequency[static_cast<std::size_t>(i)] = 2.0 * m / z;
    }

    long double s = 0.0L;
    for (int l = 0; l < n; ++l) {
        const long double d = static_cast<long double>(t[l]) - t[l + 1];
        s += d * d / (static_cast<long double>(t[l]) * t[l + 1]);
    }
    r.entropy_rate = static_cast<double>(m * s / z);
    return r;
}

StationaryReport confined_stationary(const TempProfile& profile) {
    const int n = profile.n_links();
    const std::vector<double> t = profile.temperatures();

    StationaryReport r;
    r.model = TracerModel::Confined;
    r.n_tracers = n; // one per cell
    r.z_link.resize(static_cast<std::size_t>(n));
    r.current.resize(static_cast<std::size_t>(n));
    r.conductivity.resize(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        const double zl = confined_link_normalization(profile, l);
        r.z_link[static_cast<std::size_t>(l)] = zl;
        r.current[static_cast<std::size_t>(l)] = (t[l] - t[l + 1]) / zl;
        r.conductivity[static_cast<std::size_t>(l)] = 1.0 / zl;
    }
    r.z_total = 0.0;

    r.energy_flow.resize(static_cast<std::size_t>(n) + 1);
    r.frequency.resize(static_cast<std::size_t>(n) + 1);
    r.energy_flow[0] = (t[0] - t[1]) / r.z_link[0];
    r.energy_flow[static_cast<std::size_t>(n)] =
        (t[n] - t[n - 1]) / r.z_link[static_cast<std::size_t>(n - 1)];
    r.frequency[0] = 1.0 / r.z_link[0];
    r.frequency[static_cast<std::size_t>(n)] = 1.0 / r.z_link[static_cast<std::size_t>(n - 1)];
    for (int i = 1; i < n; ++i) {
        r.energy_flow[static_cast<std::size_t>(i)] =
            (t[i] - t[i - 1]) / r.z_link[static_cast<std::size_t>(i - 1)] +
            (t[i] - t[i + 1]) / r.z_link[static_cast<std::size_t>(i)];
        r.frequency[static_cast<std::size_t>(i)] =
            1.0 / r.z_link[static_cast<std::size_t>(i - 1)] +
            1.0 / r.z_link[static_cast<std::size_t>(i)];
    }

    long double s = 0.0L;
    for (int l = 0; l < n; ++l) {
        const long double d = static_cast<long double>(t[l]) - t[l + 1];
        s += d * d / (static_cast<long double>(r.z_link[static_cast<std::size_t>(l)]) *
                      t[l] * t[l + 1]);
    }
    r.entropy_rate = static_cast<double>(s);
    return r;
}

double PhaseDensity::operator()(double q, double p) const {
    const double x = q - origin;
    const double n = static_cast<double>(cells.size());
    if (p == 0.0 || x < 0.0 || x > n) return 0.0;
    int cell = static_cast<int>(std::floor(x));
    if (cell == static_cast<int>(cells.size())) --cell; // right edge of the last cell
    const CellCoeffs& c = cells[static_cast<std::size_t>(cell)];
    if (p > 0.0) return c.plus_coeff * std::exp(-0.5 * c.plus_beta * p * p);
    return c.minus_coeff * std::exp(-0.5 * c.minus_beta * p * p);
}

double PhaseDensity::cell_sign_mass(int cell, int sign) const {
    const CellCoeffs& c = cells.at(static_cast<std::size_t>(cell));
    if (sign > 0) return c.plus_coeff * sqrt_half_pi_over(c.plus_beta);
    return c.minus_coeff * sqrt_half_pi_over(c.minus_beta);
}

double PhaseDensity::cell_sign_band_mass(int cell, int sign, double lo, double hi) const {
    const CellCoeffs& c = cells.at(static_cast<std::size_t>(cell));
    const double coeff = sign > 0 ? c.plus_coeff : c.minus_coeff;
    const double beta = sign > 0 ? c.plus_beta : c.minus_beta;
    const double s = std::sqrt(0.5 * beta);
    const double upper = std::isinf(hi) ? 1.0 : std::erf(hi * s);
    return coeff * sqrt_half_pi_over(beta) * (upper - std::erf(lo * s));
}

double PhaseDensity::total_mass() const {
    long double acc = 0.0L;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        acc += cell_sign_mass(static_cast<int>(c), +1);
        acc += cell_sign_mass(static_cast<int>(c), -1);
    }
    return static_cast<double>(acc);
}

PhaseDensity invariant_density_basic(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("invariant_density_basic: beta must be positive");
    PhaseDensity d;
    d.cells.push_back({std::sqrt(2.0 * beta / std::numbers::pi), beta, 0.0, beta});
    return d;
}

PhaseDensity invariant_density_wandering(const TempProfile& profile) {
    const double z = wandering_normalization(profile);
    PhaseDensity d;
    d.cells.resize(static_cast<std::size_t>(profile.n_links()));
    for (int c = 0; c < profile.n_links(); ++c) {
        d.cells[static_cast<std::size_t>(c)] = {profile.beta(c) / z, profile.beta(c),
                                                profile.beta(c + 1) / z, profile.beta(c + 1)};
    }
    return d;
}

PhaseDensity invariant_density_confined(const TempProfile& profile) {
    PhaseDensity d;
    d.cells.resize(static_cast<std::size_t>(profile.n_links()));
    for (int c = 0; c < profile.n_links(); ++c) {
        const double zc = confined_link_normalization(profile, c);
        d.cells[static_cast<std::size_t>(c)] = {profile.beta(c) / zc, profile.beta(c),
                                                profile.beta(c + 1) / zc, profile.beta(c + 1)};
    }
    return d;
}

PhaseDensity invariant_density_general(const TempProfile& profile,
                                       const TransitionMatrix& matrix) {
    if (matrix.n_links() != profile.n_links())
        throw std::invalid_argument("invariant_density_general: matrix/profile size mismatch");
    const int n = profile.n_links();
    const std::vector<double> nu = matrix.stationary_distribution();

    long double z = 0.0L;
    for (int i = 0; i < matrix.state_count(); ++i) {
        const ChainState s = state_at(i, n);
        z += static_cast<long double>(nu[static_cast<std::size_t>(i)]) *
             std::sqrt(static_cast<long double>(kHalfPi) * profile.beta(s.scatterer));
    }

    PhaseDensity d;
    d.cells.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        // Rightward flights through cell c start at scatterer c; leftward
        // ones start at scatterer c+1. Weight each by the stationary rate of
        // the corresponding chain transitions.
        double right_weight = 0.0;
        double left_weight = 0.0;
        for (int sign : {+1, -1}) {
            const ChainState from_left{c, sign};
            if (chain_state_in_space(from_left, n)) {
                const int idx = state_index(from_left, n);
                right_weight += nu[static_cast<std::size_t>(idx)] * matrix.right_mass(idx);
            }
            const ChainState from_right{c + 1, sign};
            if (chain_state_in_space(from_right, n)) {
                const int idx = state_index(from_right, n);
                left_weight += nu[static_cast<std::size_t>(idx)] * matrix.left_mass(idx);
            }
        }
        const double zs = static_cast<double>(z);
        d.cells[static_cast<std::size_t>(c)] = {right_weight * profile.beta(c) / zs,
                                                profile.beta(c),
                                                left_weight * profile.beta(c + 1) / zs,
                                                profile.beta(c + 1)};
    }
    return d;
}

} // namespace hotscat
