#ifndef HOTSCAT_REPORT_HPP
#define HOTSCAT_REPORT_HPP

#include <string>
#include <vector>

#include "hotscat/analytic.hpp"
#include "hotscat/config.hpp"
#include "hotscat/selfconsistent.hpp"
#include "hotscat/simulate.hpp"

namespace hotscat {

// Machine-readable outputs: CSV tables (RFC-4180 quoting, floating point at
// 17 significant digits so values round-trip exactly) and JSON summaries.
// Every table carries a schema_version column; schema changes bump it.

inline constexpr int kCsvSchemaVersion = 1;

std::string format_double(double x); // shortest 17-significant-digit form
std::string csv_field(const std::string& raw);
std::string build_version_string();

struct CgfSweepRow {
    double lambda = 0.0;
    double value = 0.0;
    bool plateau = false;
    double root_residual = 0.0;
    double quadrature_error_bound = 0.0;
    double gc_pair_diff = 0.0;       // |f(lambda) - f(dbeta - lambda)|
    bool empirical = false;
    double empirical_value = 0.0;
    double empirical_std_error = 0.0;
    double empirical_max_share = 0.0;
    bool empirical_warning = false;
    bool tilted = false;             // importance-sampled estimate (root branch only)
    double tilted_value = 0.0;
    double tilted_std_error = 0.0;
};

void write_ledger_csv(const std::string& path, const RunResult& run);
void write_run_summary_json(const std::string& path, const ExperimentConfig& config,
                            const RunResult& run);
void write_basic_samples_csv(const std::string& path, const BasicRunResult& run);
void write_phase_samples_csv(const std::string& path, const std::vector<PhaseSample>& samples);
void write_stationary_csv(const std::string& path, const StationaryReport& report);
void write_profile_csv(const std::string& path, const ProfileSolution& solution,
                       double t_left, double t_right);
void write_cgf_csv(const std::string& path, const std::vector<CgfSweepRow>& rows);

} // namespace hotscat

#endif
