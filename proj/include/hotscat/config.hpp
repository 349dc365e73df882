#ifndef HOTSCAT_CONFIG_HPP
#define HOTSCAT_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hotscat/model.hpp"

namespace hotscat {

// Experiment description parsed from a single strict JSON document: unknown
// keys are rejected so a typo cannot silently change a run. The profile may
// be given explicitly, as a linear ramp, or as the self-consistent solution
// for the chosen model. All randomness flows from `seed`.
struct ExperimentConfig {
    ModelKind model{BasicModel{}};
    std::string model_name;       // "basic" | "general" | "wandering" | "confined"
    bool selfconsistent_profile = false;

    double t_end = 1e5;
    double t_burn = -1.0;         // negative: default to 1% of t_end
    int n_windows = 20;
    int n_replicas = 1000;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int phase_samples = 0;
    int threads = 0;

    int cgf_link = 0;
    double cgf_horizon = 200.0;
    bool cgf_empirical = false;
    std::vector<double> lambda_grid;

    double effective_burn() const { return t_burn < 0.0 ? 0.01 * t_end : t_burn; }

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text,
                                           const std::string& base_dir = ".");
};

} // namespace hotscat

#endif
