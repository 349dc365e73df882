#include "hotscat/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hotscat {

TempProfile TempProfile::from_betas(std::vector<double> betas) {
    if (betas.size() < 2)
        throw std::invalid_argument("TempProfile: need at least two scatterers (one link)");
    for (double b : betas) {
        if (!(b > 0.0) || !std::isfinite(b))
            throw std::invalid_argument("TempProfile: every beta must be positive and finite");
    }
    return TempProfile(std::move(betas));
}

TempProfile TempProfile::from_temperatures(const std::vector<double>& temperatures) {
    std::vector<double> betas(temperatures.size());
    for (std::size_t i = 0; i < temperatures.size(); ++i) {
        if (!(temperatures[i] > 0.0) || !std::isfinite(temperatures[i]))
            throw std::invalid_argument("TempProfile: every temperature must be positive and finite");
        betas[i] = 1.0 / temperatures[i];
    }
    return from_betas(std::move(betas));
}

TempProfile TempProfile::uniform(double beta, int n_links) {
    if (n_links < 1) throw std::invalid_argument("TempProfile: n_links must be >= 1");
    return from_betas(std::vector<double>(static_cast<std::size_t>(n_links) + 1, beta));
}

TempProfile TempProfile::linear_temperature(double t_left, double t_right, int n_links) {
    if (n_links < 1) throw std::invalid_argument("TempProfile: n_links must be >= 1");
    std::vector<double> temps(static_cast<std::size_t>(n_links) + 1);
    for (int n = 0; n <= n_links; ++n) {
        temps[static_cast<std::size_t>(n)] =
            t_left + (static_cast<double>(n) / n_links) * (t_right - t_left);
    }
    return from_temperatures(temps);
}

std::vector<double> TempProfile::temperatures() const {
    std::vector<double> t(betas_.size());
    std::transform(betas_.begin(), betas_.end(), t.begin(),
                   [](double b) { return 1.0 / b; });
    return t;
}

TempProfile TempProfile::reversed() const {
    std::vector<double> b(betas_.rbegin(), betas_.rend());
    return TempProfile(std::move(b));
}

bool TempProfile::is_equilibrium(double tol) const {
    for (double b : betas_) {
        if (std::abs(b - betas_.front()) > tol) return false;
    }
    return true;
}

} // namespace hotscat
