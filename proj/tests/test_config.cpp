#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <variant>

#include "hotscat/config.hpp"

using namespace hotscat;

TEST_CASE("minimal wandering config") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "model": "wandering",
        "profile": {"linear": {"t_left": 1.0, "t_right": 2.0, "n_links": 4}},
        "n_tracers": 8,
        "t_end": 1000.0,
        "seed": 42
    })");
    REQUIRE(std::holds_alternative<WanderingModel>(cfg.model));
    const auto& m = std::get<WanderingModel>(cfg.model);
    CHECK(m.n_tracers == 8);
    CHECK(m.profile.n_links() == 4);
    CHECK(m.profile.temperature(2) == doctest::Approx(1.5));
    CHECK(cfg.seed == 42);
    CHECK(cfg.effective_burn() == doctest::Approx(10.0)); // default 1% of t_end
}

TEST_CASE("unknown keys are rejected everywhere") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "basic", "beta": 1.0, "typo_key": 3
    })"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "wandering",
        "profile": {"linear": {"t_left": 1.0, "t_right": 2.0, "n_links": 4, "oops": 1}}
    })"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "general",
        "profile": {"betas": [1.0, 1.0, 1.0]},
        "transition": {"transmit": 0.5, "rows": []}
    })"),
                    std::invalid_argument);
}

TEST_CASE("model-specific key validation") {
    // beta only for basic
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "confined", "beta": 1.0,
        "profile": {"betas": [1.0, 2.0]}
    })"),
                    std::invalid_argument);
    // n_tracers only for wandering
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "confined", "n_tracers": 2,
        "profile": {"betas": [1.0, 2.0]}
    })"),
                    std::invalid_argument);
    // transition only for general
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "wandering",
        "profile": {"betas": [1.0, 2.0]},
        "transition": {"transmit": 0.5}
    })"),
                    std::invalid_argument);
    // invalid betas rejected through the domain validation
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "wandering", "profile": {"betas": [1.0, -2.0]}
    })"),
                    std::invalid_argument);
}

TEST_CASE("general model with a transmit/reflect matrix") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "model": "general",
        "profile": {"betas": [1.0, 1.0, 1.0]},
        "transition": {"transmit": 0.5},
        "phase_samples": 100
    })");
    const auto& m = std::get<GeneralModel>(cfg.model);
    CHECK(m.matrix.entry({1, +1}, {0, +1}) == doctest::Approx(0.5));
    CHECK(cfg.phase_samples == 100);
}

TEST_CASE("self-consistent profile selection depends on the model") {
    const ExperimentConfig wander = ExperimentConfig::from_json_text(R"({
        "model": "wandering",
        "profile": {"selfconsistent": {"t_left": 1.0, "t_right": 4.0, "n_links": 4}}
    })");
    const auto& wp = std::get<WanderingModel>(wander.model).profile;
    CHECK(wp.temperature(2) == doctest::Approx(2.5)); // linear midpoint

    const ExperimentConfig confined = ExperimentConfig::from_json_text(R"({
        "model": "confined",
        "profile": {"selfconsistent": {"t_left": 1.0, "t_right": 4.0, "n_links": 4}}
    })");
    const auto& cp = std::get<ConfinedModel>(confined.model).profile;
    CHECK(cp.temperature(2) > 2.5); // concave profile sits above the chord
    CHECK(confined.selfconsistent_profile);
}

TEST_CASE("lambda grids: inline, generated, and included from a file") {
    const ExperimentConfig inline_grid = ExperimentConfig::from_json_text(R"({
        "model": "wandering", "profile": {"betas": [1.0, 2.0]},
        "lambda_grid": [-0.5, 0.0, 0.5]
    })");
    CHECK(inline_grid.lambda_grid == std::vector<double>{-0.5, 0.0, 0.5});

    const ExperimentConfig generated = ExperimentConfig::from_json_text(R"({
        "model": "wandering", "profile": {"betas": [1.0, 2.0]},
        "lambda_grid": {"min": -0.9, "max": 1.9, "count": 41}
    })");
    REQUIRE(generated.lambda_grid.size() == 41);
    CHECK(generated.lambda_grid.front() == doctest::Approx(-0.9));
    CHECK(generated.lambda_grid.back() == doctest::Approx(1.9));
    CHECK(generated.lambda_grid[20] == doctest::Approx(0.5));

    // include file
    const char* grid_path = "lambda_grid_include_test.json";
    {
        std::ofstream out(grid_path);
        out << R"({"lambda_grid": [0.1, 0.2]})";
    }
    const ExperimentConfig included = ExperimentConfig::from_json_text(R"({
        "model": "wandering", "profile": {"betas": [1.0, 2.0]},
        "lambda_grid_file": "lambda_grid_include_test.json"
    })");
    CHECK(included.lambda_grid == std::vector<double>{0.1, 0.2});
    std::remove(grid_path);

    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "wandering", "profile": {"betas": [1.0, 2.0]},
        "lambda_grid": [0.1], "lambda_grid_file": "x.json"
    })"),
                    std::invalid_argument);
}

TEST_CASE("model validation catches cross-field inconsistencies") {
    const TempProfile p3 = TempProfile::uniform(1.0, 3);
    CHECK_THROWS_AS(validate_model(GeneralModel{p3, TransitionMatrix::wandering(2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_model(WanderingModel{p3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_model(BasicModel{-1.0}), std::invalid_argument);
    CHECK_NOTHROW(validate_model(ConfinedModel{p3}));
}

TEST_CASE("malformed JSON and bad run parameters") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"model": "quantum"})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "basic", "beta": 1.0, "t_end": -5.0
    })"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({
        "model": "basic", "beta": 1.0, "t_end": 10.0, "t_burn": 20.0
    })"),
                    std::invalid_argument);
}
