#ifndef HOTSCAT_PROFILE_HPP
#define HOTSCAT_PROFILE_HPP

#include <vector>

namespace hotscat {

// Inverse-temperature profile of the scatterer array: beta_0 .. beta_N for a
// system with N+1 scatterers and N links/cells. This vector is the single
// source of truth every closed formula and every sampler reads from.
// Immutable after construction.
class TempProfile {
public:
    static TempProfile from_betas(std::vector<double> betas);
    static TempProfile from_temperatures(const std::vector<double>& temperatures);
    static TempProfile uniform(double beta, int n_links);
    // T_n = t_left + (n/N)(t_right - t_left), converted to betas.
    static TempProfile linear_temperature(double t_left, double t_right, int n_links);

    int n_links() const { return static_cast<int>(betas_.size()) - 1; }
    int n_scatterers() const { return static_cast<int>(betas_.size()); }

    double beta(int i) const { return betas_[static_cast<std::size_t>(i)]; }
    double temperature(int i) const { return 1.0 / beta(i); }
    const std::vector<double>& betas() const { return betas_; }
    std::vector<double> temperatures() const;

    TempProfile reversed() const;

    bool is_equilibrium(double tol = 0.0) const;

private:
    explicit TempProfile(std::vector<double> betas) : betas_(std::move(betas)) {}
    std::vector<double> betas_;
};

} // namespace hotscat

#endif
