#include "hotscat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hotscat {

MeanStderr mean_and_stderr(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean_and_stderr: empty sample");
    KahanSum s;
    for (double x : xs) s.add(x);
    const double mean = s.value() / static_cast<double>(xs.size());
    if (xs.size() == 1) return {mean, 0.0};
    KahanSum sq;
    for (double x : xs) sq.add((x - mean) * (x - mean));
    const double var = sq.value() / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

double ks_critical_1pct(std::size_t n) {
    return 1.628 / std::sqrt(static_cast<double>(n));
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::invalid_argument("regularized_gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    const double lg = std::lgamma(a);

    if (x < a + 1.0) {
        // P(a,x) by series, Q = 1 - P.
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 10000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return 1.0 - p;
    }
    // Q(a,x) by Lentz continued fraction.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

double chi2_pvalue(double statistic, int dof) {
    if (dof < 1) throw std::invalid_argument("chi2_pvalue: dof must be >= 1");
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

} // namespace hotscat
