#ifndef HOTSCAT_SELFCONSISTENT_HPP
#define HOTSCAT_SELFCONSISTENT_HPP

#include <vector>

#include "hotscat/analytic.hpp"
#include "hotscat/profile.hpp"

namespace hotscat {

// Temperature profiles solving the zero-net-exchange condition for the
// interior scatterers, with the boundary temperatures pinned.
struct ProfileSolution {
    TracerModel model = TracerModel::Wandering;
    std::vector<double> temperatures; // T_0 .. T_N
    double flux = 0.0;                // the common per-link current
    double residual = 0.0;            // max interior |energy flow|

    TempProfile profile() const { return TempProfile::from_temperatures(temperatures); }
    int n_links() const { return static_cast<int>(temperatures.size()) - 1; }
};

// Wandering tracers: the condition forces the exact linear interpolation.
ProfileSolution wandering_profile(double t_left, double t_right, int n_links);

// Confined tracers: solves the nonlinear chain
//   (T_{n+1}-T_n) / (T_n^{-1/2} + T_{n+1}^{-1/2}) = c   for all links
// by shooting on the constant c: the scalar advance is strictly monotone in
// T_{n+1} (inner bisection), and T_N(c) is monotone in c (outer bisection).
ProfileSolution confined_profile(double t_left, double t_right, int n_links);

// Continuum limit of the confined profile:
// h(x) = (T_L^{3/2} + x (T_R^{3/2} - T_L^{3/2}))^{2/3} on [0,1].
double continuum_profile(double t_left, double t_right, double x);

// Local conductivity of the continuum profile: sqrt(h(x) / (2 pi)).
double local_conductivity(double t_left, double t_right, double x);

// Finite-size counterpart 1/Z_{floor(N x)} for a solved confined profile.
double local_conductivity_finite(const ProfileSolution& solution, double x);

} // namespace hotscat

#endif
