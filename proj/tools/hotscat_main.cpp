// Command-line front end: simulate | analyze | cgf | profile | verify.
// Exit codes: 0 success, 1 validation error, 2 runtime/solver failure,
// 3 acceptance failure.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <variant>

#include "CLI11.hpp"

#include "hotscat/analytic.hpp"
#include "hotscat/cgf.hpp"
#include "hotscat/config.hpp"
#include "hotscat/report.hpp"
#include "hotscat/selfconsistent.hpp"
#include "hotscat/simulate.hpp"
#include "hotscat/verify.hpp"

namespace {

using namespace hotscat;

struct CommonArgs {
    std::string config_path;
    std::string out_dir_override;
    std::uint64_t seed_override = 0;
    bool has_seed_override = false;
};

ExperimentConfig load_config(const CommonArgs& args) {
    ExperimentConfig cfg = ExperimentConfig::from_file(args.config_path);
    if (args.has_seed_override) cfg.seed = args.seed_override;
    if (!args.out_dir_override.empty()) cfg.out_dir = args.out_dir_override;
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

RunConfig run_config_from(const ExperimentConfig& cfg) {
    RunConfig rc;
    rc.t_end = cfg.t_end;
    rc.t_burn = cfg.effective_burn();
    rc.n_windows = cfg.n_windows;
    rc.seed = cfg.seed;
    rc.threads = cfg.threads;
    if (cfg.phase_samples > 0) {
        rc.sample_times.resize(static_cast<std::size_t>(cfg.phase_samples));
        for (int i = 0; i < cfg.phase_samples; ++i)
            rc.sample_times[static_cast<std::size_t>(i)] =
                rc.t_burn + (i + 1) * (cfg.t_end - rc.t_burn) / cfg.phase_samples;
    }
    return rc;
}

int cmd_simulate(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);

    if (std::holds_alternative<BasicModel>(cfg.model)) {
        const BasicModel& m = std::get<BasicModel>(cfg.model);
        RngStream rng(cfg.seed, 0);
        const RunConfig rc = run_config_from(cfg);
        const BasicRunResult run =
            run_basic(m.beta, 0.0, 1.0, cfg.t_end, rc.sample_times, rng);
        write_basic_samples_csv(out_path(cfg, "samples.csv"), run);
        std::cout << "wrote " << out_path(cfg, "samples.csv") << " ("
                  << run.collision_count << " collisions)\n";
        return 0;
    }

    RunResult run;
    const RunConfig rc = run_config_from(cfg);
    if (std::holds_alternative<WanderingModel>(cfg.model)) {
        const auto& m = std::get<WanderingModel>(cfg.model);
        run = run_wandering(m.profile, m.n_tracers, rc);
    } else if (std::holds_alternative<ConfinedModel>(cfg.model)) {
        run = run_confined(std::get<ConfinedModel>(cfg.model).profile, rc);
    } else {
        const auto& m = std::get<GeneralModel>(cfg.model);
        run = run_general(m.profile, m.matrix, 1, rc);
    }
    write_ledger_csv(out_path(cfg, "ledger.csv"), run);
    write_run_summary_json(out_path(cfg, "summary.json"), cfg, run);
    if (!run.phase_samples.empty())
        write_phase_samples_csv(out_path(cfg, "samples.csv"), run.phase_samples);
    std::cout << "wrote " << out_path(cfg, "ledger.csv") << " and "
              << out_path(cfg, "summary.json") << "\n";
    return 0;
}

const TempProfile& model_profile(const ExperimentConfig& cfg) {
    if (std::holds_alternative<WanderingModel>(cfg.model))
        return std::get<WanderingModel>(cfg.model).profile;
    if (std::holds_alternative<ConfinedModel>(cfg.model))
        return std::get<ConfinedModel>(cfg.model).profile;
    if (std::holds_alternative<GeneralModel>(cfg.model))
        return std::get<GeneralModel>(cfg.model).profile;
    throw std::invalid_argument("this command needs a scatterer-array model, not \"basic\"");
}

std::vector<CgfSweepRow> cgf_sweep(const ExperimentConfig& cfg) {
    const TempProfile& profile = model_profile(cfg);
    const TracerModel model = std::holds_alternative<ConfinedModel>(cfg.model)
                                  ? TracerModel::Confined
                                  : TracerModel::Wandering;
    if (cfg.lambda_grid.empty())
        throw std::invalid_argument("cgf sweep needs a lambda_grid in the config");
    const double dbeta = profile.beta(cfg.cgf_link + 1) - profile.beta(cfg.cgf_link);
    std::vector<CgfSweepRow> rows;
    for (double lam : cfg.lambda_grid) {
        CgfSweepRow row;
        row.lambda = lam;
        const CgfResult c = cgf_value({model, profile, cfg.cgf_link, lam});
        row.value = c.value;
        row.plateau = c.branch == CgfBranch::ZeroPlateau;
        row.root_residual = c.root_residual;
        row.quadrature_error_bound = c.quadrature_error_bound;
        const double mirrored = dbeta - lam;
        if (mirrored > -profile.beta(cfg.cgf_link) &&
            mirrored < profile.beta(cfg.cgf_link + 1)) {
            const CgfResult m = cgf_value({model, profile, cfg.cgf_link, mirrored});
            row.gc_pair_diff = std::abs(c.value - m.value);
        }
        if (cfg.cgf_empirical) {
            const EmpiricalCgf e = estimate_empirical_cgf(
                model, profile, cfg.cgf_link, lam, cfg.cgf_horizon, cfg.n_replicas, cfg.seed,
                0, cfg.threads);
            row.empirical = true;
            row.empirical_value = e.value;
            row.empirical_std_error = e.std_error;
            row.empirical_max_share = e.max_weight_share;
            row.empirical_warning = e.heavy_tail_warning;
            if (e.heavy_tail_warning)
                std::cerr << "warning: lambda=" << lam
                          << ": one replica carries more than 10% of the exponential "
                             "mean; the plain estimate is unreliable, see the tilted "
                             "columns\n";
            if (!row.plateau) {
                const EmpiricalCgf ti = estimate_empirical_cgf_tilted(
                    model, profile, cfg.cgf_link, lam, cfg.cgf_horizon, cfg.n_replicas,
                    cfg.seed, 500000, cfg.threads);
                row.tilted = true;
                row.tilted_value = ti.value;
                row.tilted_std_error = ti.std_error;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

int cmd_analyze(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    const TempProfile& profile = model_profile(cfg);

    StationaryReport report;
    ProfileSolution solution;
    if (std::holds_alternative<ConfinedModel>(cfg.model)) {
        report = confined_stationary(profile);
        solution = confined_profile(profile.temperature(0),
                                    profile.temperature(profile.n_links()), profile.n_links());
    } else {
        const int m = std::holds_alternative<WanderingModel>(cfg.model)
                          ? std::get<WanderingModel>(cfg.model).n_tracers
                          : 1;
        report = wandering_stationary(profile, m);
        solution = wandering_profile(profile.temperature(0),
                                     profile.temperature(profile.n_links()), profile.n_links());
    }
    write_stationary_csv(out_path(cfg, "stationary_report.csv"), report);
    write_profile_csv(out_path(cfg, "profile.csv"), solution, profile.temperature(0),
                      profile.temperature(profile.n_links()));
    if (!cfg.lambda_grid.empty())
        write_cgf_csv(out_path(cfg, "cgf_sweep.csv"), cgf_sweep(cfg));
    std::cout << "wrote analytic tables under " << cfg.out_dir << "\n";
    return 0;
}

int cmd_cgf(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    write_cgf_csv(out_path(cfg, "cgf_sweep.csv"), cgf_sweep(cfg));
    std::cout << "wrote " << out_path(cfg, "cgf_sweep.csv") << "\n";
    return 0;
}

int cmd_profile(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    const TempProfile& profile = model_profile(cfg);
    const double tl = profile.temperature(0);
    const double tr = profile.temperature(profile.n_links());
    const ProfileSolution solution = std::holds_alternative<ConfinedModel>(cfg.model)
                                         ? confined_profile(tl, tr, profile.n_links())
                                         : wandering_profile(tl, tr, profile.n_links());
    write_profile_csv(out_path(cfg, "profile.csv"), solution, tl, tr);
    std::cout << "wrote " << out_path(cfg, "profile.csv") << "\n";
    return 0;
}

int cmd_verify(bool fast) {
    VerifyOptions options;
    options.fast = fast;
    const std::vector<CriterionResult> results = run_acceptance(options);
    print_results(std::cout, results);
    return all_passed(results) ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hotscat: stochastic heat transport by tracer particles among "
                 "thermal scatterers"};
    app.require_subcommand(1);

    CommonArgs args;
    bool fast = false;

    auto add_common = [&args](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "JSON experiment config")->required();
        sub->add_option("--out-dir", args.out_dir_override, "output directory override");
        sub->add_option("--seed", args.seed_override, "seed override")
            ->each([&args](const std::string&) { args.has_seed_override = true; });
    };

    CLI::App* sim = app.add_subcommand("simulate", "run the event-driven engine");
    add_common(sim);
    CLI::App* analyze = app.add_subcommand("analyze", "closed-form stationary tables");
    add_common(analyze);
    CLI::App* cgf = app.add_subcommand("cgf", "cumulant generating function sweep");
    add_common(cgf);
    CLI::App* profile = app.add_subcommand("profile", "self-consistent temperature profile");
    add_common(profile);
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance battery");
    verify->add_flag("--fast", fast, "skip the long-horizon simulation criteria");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(args);
        if (analyze->parsed()) return cmd_analyze(args);
        if (cgf->parsed()) return cmd_cgf(args);
        if (profile->parsed()) return cmd_profile(args);
        if (verify->parsed()) return cmd_verify(fast);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
