#ifndef HOTSCAT_STATS_HPP
#define HOTSCAT_STATS_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace hotscat {

// Compensated accumulator; billions of events must not round the signal away.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    void merge(const KahanSum& other) {
        add(other.sum);
        add(-other.comp);
    }
    double value() const { return sum - comp; }
};

struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanStderr mean_and_stderr(const std::vector<double>& xs);

// Kolmogorov-Smirnov distance of a sample against a continuous CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);
// Asymptotic critical value at the 1% level.
double ks_critical_1pct(std::size_t n);

// Upper regularized incomplete gamma Q(a, x); series for x < a+1, continued
// fraction otherwise.
double regularized_gamma_q(double a, double x);

// Survival function of the chi-squared distribution: p-value of a statistic.
double chi2_pvalue(double statistic, int dof);

} // namespace hotscat

#endif
