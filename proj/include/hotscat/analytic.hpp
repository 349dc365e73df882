#ifndef HOTSCAT_ANALYTIC_HPP
#define HOTSCAT_ANALYTIC_HPP

#include <vector>

#include "hotscat/chain.hpp"
#include "hotscat/profile.hpp"

namespace hotscat {

enum class TracerModel { Wandering, Confined };

// Closed-form stationary quantities. For the wandering model all entries are
// totals over the n_tracers independent tracers; divide by n_tracers for the
// single-tracer limits. For the confined model there is exactly one tracer
// per cell and no scaling applies.
struct StationaryReport {
    TracerModel model = TracerModel::Wandering;
    int n_tracers = 1;
    double z_total = 0.0;              // wandering normalization Z_N
    std::vector<double> z_link;        // per-link normalizations Z_n (confined)
    std::vector<double> current;       // per-link stationary currents
    std::vector<double> energy_flow;   // per-scatterer stationary energy flows
    double entropy_rate = 0.0;
    std::vector<double> frequency;     // per-scatterer collision frequencies
    std::vector<double> conductivity;  // per-link conductivities
};

// Z_N = sqrt(pi/2) * sum over links of (sqrt(beta_l) + sqrt(beta_{l+1})).
double wandering_normalization(const TempProfile& profile);

// Z_n = sqrt(pi beta_n / 2) + sqrt(pi beta_{n+1} / 2) for one link.
double confined_link_normalization(const TempProfile& profile, int link);

StationaryReport wandering_stationary(const TempProfile& profile, int n_tracers);
StationaryReport confined_stationary(const TempProfile& profile);

// Stationary phase-space density, stored as per-cell closed-form
// coefficients: on cell c = [c, c+1],
//   rho(q, p) = plus_coeff * exp(-plus_beta p^2/2)   for p > 0,
//               minus_coeff * exp(-minus_beta p^2/2) for p < 0.
// For basic/wandering/general the density integrates to 1 over the whole
// phase space; for confined each cell's marginal integrates to 1 (the joint
// law is the product over cells).
struct PhaseDensity {
    struct CellCoeffs {
        double plus_coeff = 0.0;
        double plus_beta = 1.0;
        double minus_coeff = 0.0;
        double minus_beta = 1.0;
    };
    double origin = 0.0; // left edge of cell 0
    std::vector<CellCoeffs> cells;

    double operator()(double q, double p) const;
    // Probability mass of {q in cell, sign(p) = sign}.
    double cell_sign_mass(int cell, int sign) const;
    // Probability mass of {q in cell, sign(p) = sign, |p| in [lo, hi)}.
    double cell_sign_band_mass(int cell, int sign, double lo, double hi) const;
    double total_mass() const;
};

PhaseDensity invariant_density_basic(double beta);
PhaseDensity invariant_density_wandering(const TempProfile& profile);
PhaseDensity invariant_density_confined(const TempProfile& profile);
PhaseDensity invariant_density_general(const TempProfile& profile,
                                       const TransitionMatrix& matrix);

} // namespace hotscat

#endif
