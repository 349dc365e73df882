#include "hotscat/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#ifndef HOTSCAT_GIT_REV
#define HOTSCAT_GIT_REV "unknown"
#endif

namespace hotscat {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: byte-stable newlines
    if (!out) throw std::runtime_error("report: cannot open \"" + path + "\" for writing");
    return out;
}

void write_row(std::ofstream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_field(fields[i]);
    }
    out << "\r\n";
}

std::string model_tag(const StationaryReport& r) {
    return r.model == TracerModel::Wandering ? "wandering" : "confined";
}

json ledger_json(const ObservableLedger& l) {
    json j;
    j["t_elapsed"] = l.t_elapsed;
    j["n_tracers"] = l.n_tracers;
    json energy = json::array(), current = json::array(), freq = json::array();
    for (int n = 0; n < static_cast<int>(l.energy.size()); ++n) {
        energy.push_back(l.energy_rate(n));
        freq.push_back(l.collision_rate(n));
    }
    for (int c = 0; c < l.n_links(); ++c) current.push_back(l.current_rate(c));
    j["energy_rate"] = energy;
    j["current_rate"] = current;
    j["collision_rate"] = freq;
    j["entropy_rate"] = l.entropy_rate();
    j["initial_kinetic"] = l.initial_kinetic;
    j["final_kinetic"] = l.final_kinetic;
    j["max_event_energy"] = l.max_event_energy;
    return j;
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& raw) {
    const bool needs_quote = raw.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quote) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string build_version_string() {
    return std::string("hotscat 1.0.0 (") + HOTSCAT_GIT_REV + ")";
}

void write_ledger_csv(const std::string& path, const RunResult& run) {
    std::ofstream out = open_out(path);
    write_row(out, {"schema_version", "quantity", "index", "rate", "per_tracer_rate",
                    "std_error"});
    const ObservableLedger& l = run.ledger;

    // window-based standard error of a per-tracer rate
    auto window_se = [&run](auto getter) {
        std::vector<double> xs;
        xs.reserve(run.windows.size());
        for (const auto& w : run.windows) xs.push_back(getter(w));
        if (xs.size() < 2) return 0.0;
        return mean_and_stderr(xs).std_error;
    };

    const std::string v = std::to_string(kCsvSchemaVersion);
    for (int c = 0; c < l.n_links(); ++c) {
        const double se = window_se(
            [c](const ObservableLedger& w) { return w.per_tracer_current_rate(c); });
        write_row(out, {v, "link_current", std::to_string(c), format_double(l.current_rate(c)),
                        format_double(l.per_tracer_current_rate(c)), format_double(se)});
    }
    for (int n = 0; n < static_cast<int>(l.energy.size()); ++n) {
        const double se = window_se(
            [n](const ObservableLedger& w) { return w.per_tracer_energy_rate(n); });
        write_row(out, {v, "scatterer_energy", std::to_string(n),
                        format_double(l.energy_rate(n)),
                        format_double(l.per_tracer_energy_rate(n)), format_double(se)});
    }
    for (int n = 0; n < static_cast<int>(l.collisions.size()); ++n) {
        const double se = window_se(
            [n](const ObservableLedger& w) { return w.per_tracer_collision_rate(n); });
        write_row(out, {v, "collision_frequency", std::to_string(n),
                        format_double(l.collision_rate(n)),
                        format_double(l.per_tracer_collision_rate(n)), format_double(se)});
    }
    const double se = window_se(
        [](const ObservableLedger& w) { return w.per_tracer_entropy_rate(); });
    write_row(out, {v, "entropy", "", format_double(l.entropy_rate()),
                    format_double(l.per_tracer_entropy_rate()), format_double(se)});
}

void write_run_summary_json(const std::string& path, const ExperimentConfig& config,
                            const RunResult& run) {
    json j;
    j["schema_version"] = kCsvSchemaVersion;
    j["build"] = build_version_string();
    j["model"] = config.model_name;
    j["seed"] = config.seed;
    j["t_end"] = config.t_end;
    j["t_burn"] = config.effective_burn();
    j["n_windows"] = config.n_windows;
    j["ledger"] = ledger_json(run.ledger);
    j["phase_sample_count"] = run.phase_samples.size();

    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_basic_samples_csv(const std::string& path, const BasicRunResult& run) {
    std::ofstream out = open_out(path);
    write_row(out, {"schema_version", "t", "q", "p", "age", "residual"});
    const std::string v = std::to_string(kCsvSchemaVersion);
    for (std::size_t i = 0; i < run.samples.size(); ++i) {
        write_row(out, {v, format_double(run.samples[i].t), format_double(run.samples[i].q),
                        format_double(run.samples[i].p),
                        format_double(run.age_samples[i].age),
                        format_double(run.age_samples[i].residual)});
    }
}

void write_phase_samples_csv(const std::string& path, const std::vector<PhaseSample>& samples) {
    std::ofstream out = open_out(path);
    write_row(out, {"schema_version", "t", "q", "p"});
    const std::string v = std::to_string(kCsvSchemaVersion);
    for (const PhaseSample& s : samples)
        write_row(out, {v, format_double(s.t), format_double(s.q), format_double(s.p)});
}

void write_stationary_csv(const std::string& path, const StationaryReport& report) {
    std::ofstream out = open_out(path);
    write_row(out, {"schema_version", "model", "quantity", "index", "value", "formula_ref"});
    const std::string v = std::to_string(kCsvSchemaVersion);
    const std::string m = model_tag(report);
    const bool wandering = report.model == TracerModel::Wandering;

    write_row(out, {v, m, "n_tracers", "", std::to_string(report.n_tracers), ""});
    if (wandering)
        write_row(out, {v, m, "z_total", "", format_double(report.z_total), "selfmu"});
    for (std::size_t l = 0; l < report.z_link.size(); ++l)
        write_row(out, {v, m, "z_link", std::to_string(l), format_double(report.z_link[l]),
                        "selfmu2"});
    for (std::size_t l = 0; l < report.current.size(); ++l)
        write_row(out, {v, m, "current", std::to_string(l), format_double(report.current[l]),
                        wandering ? "cJ" : "cJ2"});
    for (std::size_t n = 0; n < report.energy_flow.size(); ++n)
        write_row(out, {v, m, "energy_flow", std::to_string(n),
                        format_double(report.energy_flow[n]), wandering ? "cE" : "cE2"});
    write_row(out, {v, m, "entropy_rate", "", format_double(report.entropy_rate),
                    wandering ? "cJ" : "cJ2"});
    for (std::size_t n = 0; n < report.frequency.size(); ++n) {
        const bool boundary = n == 0 || n + 1 == report.frequency.size();
        write_row(out, {v, m, "collision_frequency", std::to_string(n),
                        format_double(report.frequency[n]),
                        wandering ? (boundary ? "eqN_t2" : "eqN_t") : "cJ2"});
    }
    for (std::size_t l = 0; l < report.conductivity.size(); ++l)
        write_row(out, {v, m, "conductivity", std::to_string(l),
                        format_double(report.conductivity[l]), wandering ? "GK0" : "GK"});
}

void write_profile_csv(const std::string& path, const ProfileSolution& solution,
                       double t_left, double t_right) {
    std::ofstream out = open_out(path);
    write_row(out, {"schema_version", "n", "temperature", "continuum", "conductivity",
                    "formula_ref"});
    const std::string v = std::to_string(kCsvSchemaVersion);
    const int n = solution.n_links();
    const StationaryReport report = solution.model == TracerModel::Wandering
                                        ? wandering_stationary(solution.profile(), 1)
                                        : confined_stationary(solution.profile());
    for (int i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        const double cont = solution.model == TracerModel::Wandering
                                ? t_left + x * (t_right - t_left)
                                : continuum_profile(t_left, t_right, x);
        const std::string kappa =
            i < n ? format_double(report.conductivity[static_cast<std::size_t>(i)]) : "";
        write_row(out, {v, std::to_string(i), format_double(solution.temperatures[i]),
                        format_double(cont), kappa,
                        solution.model == TracerModel::Wandering ? "profile" : "selfT"});
    }
}

void write_cgf_csv(const std::string& path, const std::vector<CgfSweepRow>& rows) {
    std::ofstream out = open_out(path);
    write_row(out, {"schema_version", "lambda", "value", "branch", "root_residual",
                    "quadrature_error_bound", "gc_pair_diff", "empirical_value",
                    "empirical_std_error", "empirical_max_share", "empirical_warning",
                    "tilted_value", "tilted_std_error", "formula_ref"});
    const std::string v = std::to_string(kCsvSchemaVersion);
    for (const CgfSweepRow& r : rows) {
        write_row(out,
                  {v, format_double(r.lambda), format_double(r.value),
                   r.plateau ? "ZeroPlateau" : "PositiveRoot", format_double(r.root_residual),
                   format_double(r.quadrature_error_bound), format_double(r.gc_pair_diff),
                   r.empirical ? format_double(r.empirical_value) : "",
                   r.empirical ? format_double(r.empirical_std_error) : "",
                   r.empirical ? format_double(r.empirical_max_share) : "",
                   r.empirical ? (r.empirical_warning ? "1" : "0") : "",
                   r.tilted ? format_double(r.tilted_value) : "",
                   r.tilted ? format_double(r.tilted_std_error) : "", "mgf"});
    }
}

} // namespace hotscat
