#include "hotscat/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "hotscat/selfconsistent.hpp"

namespace hotscat {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            fail("unknown key \"" + item.key() + "\" in " + where);
    }
}

std::vector<double> parse_lambda_grid(const json& node) {
    if (node.is_array()) {
        std::vector<double> grid;
        for (const auto& v : node) {
            if (!v.is_number()) fail("lambda_grid entries must be numbers");
            grid.push_back(v.get<double>());
        }
        if (grid.empty()) fail("lambda_grid must not be empty");
        return grid;
    }
    if (node.is_object()) {
        require_keys(node, {"min", "max", "count"}, "lambda_grid");
        const double lo = node.at("min").get<double>();
        const double hi = node.at("max").get<double>();
        const int count = node.at("count").get<int>();
        if (count < 2 || !(hi > lo)) fail("lambda_grid needs min < max and count >= 2");
        std::vector<double> grid(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
        return grid;
    }
    fail("lambda_grid must be an array or a {min,max,count} object");
}

TempProfile parse_profile(const json& node, bool& selfconsistent, bool confined) {
    if (!node.is_object()) fail("profile must be an object");
    require_keys(node, {"betas", "temperatures", "linear", "selfconsistent"}, "profile");
    if (node.size() != 1) fail("profile must have exactly one of betas/temperatures/linear/selfconsistent");

    if (node.contains("betas"))
        return TempProfile::from_betas(node.at("betas").get<std::vector<double>>());
    if (node.contains("temperatures"))
        return TempProfile::from_temperatures(node.at("temperatures").get<std::vector<double>>());

    const bool wants_selfconsistent = node.contains("selfconsistent");
    const json& ramp = wants_selfconsistent ? node.at("selfconsistent") : node.at("linear");
    require_keys(ramp, {"t_left", "t_right", "n_links"},
                 wants_selfconsistent ? "profile.selfconsistent" : "profile.linear");
    const double tl = ramp.at("t_left").get<double>();
    const double tr = ramp.at("t_right").get<double>();
    const int n = ramp.at("n_links").get<int>();
    selfconsistent = wants_selfconsistent;
    if (wants_selfconsistent && confined)
        return confined_profile(tl, tr, n).profile();
    // the wandering self-consistent profile is the linear one
    return TempProfile::linear_temperature(tl, tr, n);
}

TransitionMatrix parse_transition(const json& node, int n_links) {
    if (!node.is_object()) fail("transition must be an object");
    require_keys(node, {"transmit", "rows"}, "transition");
    if (node.size() != 1) fail("transition must have exactly one of transmit/rows");
    if (node.contains("transmit"))
        return TransitionMatrix::transmit_reflect(n_links, node.at("transmit").get<double>());
    const auto rows = node.at("rows").get<std::vector<std::vector<double>>>();
    const std::size_t m = 2 * static_cast<std::size_t>(n_links);
    if (rows.size() != m) fail("transition.rows must have 2N rows");
    std::vector<double> entries;
    entries.reserve(m * m);
    for (const auto& row : rows) {
        if (row.size() != m) fail("transition.rows must be square (2N x 2N)");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return TransitionMatrix::from_entries(n_links, std::move(entries));
}

} // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open \"" + path + "\"");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), std::filesystem::path(path).parent_path().string());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text,
                                                  const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("top level must be an object");

    require_keys(doc,
                 {"model", "beta", "profile", "transition", "n_tracers", "t_end", "t_burn",
                  "n_windows", "n_replicas", "seed", "out_dir", "phase_samples", "threads",
                  "cgf_link", "cgf_horizon", "cgf_empirical", "lambda_grid",
                  "lambda_grid_file"},
                 "top level");

    ExperimentConfig cfg;
    if (!doc.contains("model")) fail("missing \"model\"");
    cfg.model_name = doc.at("model").get<std::string>();

    auto get_or = [&doc](const char* key, auto fallback) {
        using T = decltype(fallback);
        return doc.contains(key) ? doc.at(key).get<T>() : fallback;
    };
    cfg.t_end = get_or("t_end", cfg.t_end);
    cfg.t_burn = get_or("t_burn", cfg.t_burn);
    cfg.n_windows = get_or("n_windows", cfg.n_windows);
    cfg.n_replicas = get_or("n_replicas", cfg.n_replicas);
    cfg.seed = get_or("seed", cfg.seed);
    cfg.out_dir = get_or("out_dir", cfg.out_dir);
    cfg.phase_samples = get_or("phase_samples", cfg.phase_samples);
    cfg.threads = get_or("threads", cfg.threads);
    cfg.cgf_link = get_or("cgf_link", cfg.cgf_link);
    cfg.cgf_horizon = get_or("cgf_horizon", cfg.cgf_horizon);
    cfg.cgf_empirical = get_or("cgf_empirical", cfg.cgf_empirical);

    if (doc.contains("lambda_grid") && doc.contains("lambda_grid_file"))
        fail("give lambda_grid or lambda_grid_file, not both");
    if (doc.contains("lambda_grid")) cfg.lambda_grid = parse_lambda_grid(doc.at("lambda_grid"));
    if (doc.contains("lambda_grid_file")) {
        const std::filesystem::path p =
            std::filesystem::path(base_dir) / doc.at("lambda_grid_file").get<std::string>();
        std::ifstream in(p);
        if (!in) fail("cannot open lambda_grid_file \"" + p.string() + "\"");
        json inc;
        try {
            inc = json::parse(in);
        } catch (const json::parse_error& e) {
            fail(std::string("invalid JSON in lambda_grid_file: ") + e.what());
        }
        if (!inc.is_object() || !inc.contains("lambda_grid"))
            fail("lambda_grid_file must contain a lambda_grid entry");
        require_keys(inc, {"lambda_grid"}, "lambda_grid_file");
        cfg.lambda_grid = parse_lambda_grid(inc.at("lambda_grid"));
    }

    if (cfg.model_name == "basic") {
        for (const char* k : {"profile", "transition", "n_tracers"})
            if (doc.contains(k)) fail(std::string("\"") + k + "\" does not apply to the basic model");
        BasicModel m;
        m.beta = get_or("beta", 1.0);
        cfg.model = m;
    } else {
        if (doc.contains("beta")) fail("\"beta\" applies only to the basic model");
        if (!doc.contains("profile")) fail("missing \"profile\"");
        const bool confined = cfg.model_name == "confined";
        const TempProfile profile =
            parse_profile(doc.at("profile"), cfg.selfconsistent_profile, confined);
        if (cfg.model_name == "wandering") {
            if (doc.contains("transition")) fail("\"transition\" applies only to the general model");
            WanderingModel m{profile, get_or("n_tracers", 1)};
            cfg.model = m;
        } else if (cfg.model_name == "confined") {
            for (const char* k : {"transition", "n_tracers"})
                if (doc.contains(k))
                    fail(std::string("\"") + k + "\" does not apply to the confined model");
            cfg.model = ConfinedModel{profile};
        } else if (cfg.model_name == "general") {
            if (doc.contains("n_tracers")) fail("\"n_tracers\" applies only to the wandering model");
            const TransitionMatrix q = doc.contains("transition")
                                           ? parse_transition(doc.at("transition"), profile.n_links())
                                           : TransitionMatrix::wandering(profile.n_links());
            cfg.model = GeneralModel{profile, q};
        } else {
            fail("model must be one of basic/general/wandering/confined");
        }
    }

    if (!(cfg.t_end > 0.0)) fail("t_end must be positive");
    if (cfg.t_burn >= cfg.t_end) fail("t_burn must be smaller than t_end");
    if (cfg.n_windows < 1) fail("n_windows must be >= 1");
    if (cfg.phase_samples < 0) fail("phase_samples must be >= 0");
    validate_model(cfg.model);
    return cfg;
}

} // namespace hotscat
