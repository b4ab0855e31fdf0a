#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "botma/csv.hpp"
#include "botma/scenario_io.hpp"

using namespace botma;
using nlohmann::json;

TEST_CASE("twelve presets with the published ground truth rows") {
    const std::vector<std::string> names = preset_names();
    REQUIRE(names.size() == 12);
    CHECK(names.front() == "trial01");
    CHECK(names.back() == "trial12");

    const Scenario t7 = preset("trial07");
    CHECK(t7.truth.r0_m == 4006.0);
    CHECK(t7.truth.course_deg == 90.0);
    CHECK(t7.truth.speed_mps == 10.0);
    CHECK(t7.noise_sigma_deg == 0.0);
    CHECK(t7.truth.b0_deg == 0.0);
    CHECK(t7.n_samples == 121);
    CHECK(t7.dt_s == 10.0);
    REQUIRE(t7.observer_legs.size() == 2);
    CHECK(t7.observer_legs[0].course_deg != t7.observer_legs[1].course_deg);

    const Scenario t1 = preset("trial01");
    CHECK(t1.truth.r0_m == 7994.0);
    CHECK(t1.noise_sigma_deg == 0.3);
    const Scenario t12 = preset("trial12");
    CHECK(t12.noise_sigma_deg == 10.0);
    CHECK(t12.truth.r0_m == 4006.0);

    CHECK_THROWS_AS(static_cast<void>(preset("trial13")), std::invalid_argument);
}

TEST_CASE("every preset passes validation and covers its window") {
    for (const std::string& name : preset_names()) {
        const Scenario s = preset(name);
        CHECK_NOTHROW(validate(s));
        double total = 0.0;
        for (const Leg& leg : s.observer_legs) total += leg.duration_s;
        CHECK(total >= (s.n_samples - 1) * s.dt_s);
    }
}

TEST_CASE("scenario JSON round trip") {
    Scenario s = preset("trial03");
    s.name = "roundtrip";
    s.noise_sigma_deg = 0.7;
    s.seed = 12345;
    const Scenario back = scenario_from_json(scenario_to_json(s));
    CHECK(back.name == s.name);
    CHECK(back.observer_start.x == s.observer_start.x);
    CHECK(back.observer_legs.size() == s.observer_legs.size());
    CHECK(back.truth.r0_m == s.truth.r0_m);
    CHECK(back.truth.b0_deg == s.truth.b0_deg);
    CHECK(back.dt_s == s.dt_s);
    CHECK(back.n_samples == s.n_samples);
    CHECK(back.noise_sigma_deg == s.noise_sigma_deg);
    CHECK(back.seed == s.seed);
    CHECK(back.observable == s.observable);
}

TEST_CASE("scenario files load and save") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "botma_io_test.json").string();
    Scenario s = preset("trial05");
    save_scenario(s, path);
    const Scenario back = load_scenario(path);
    CHECK(back.truth.course_deg == 150.0);
    std::remove(path.c_str());

    CHECK_THROWS_AS(static_cast<void>(load_scenario("/nonexistent/file.json")),
                    std::invalid_argument);
}

TEST_CASE("invalid scenario documents fail with a named rule") {
    json j = scenario_to_json(preset("trial07"));
    j["legs"] = json::array({json{{"course", 0.0}, {"speed", 5.0}, {"duration", 1200.0}}});
    CHECK_THROWS_WITH_AS(static_cast<void>(scenario_from_json(j)),
                         doctest::Contains("leg"), std::invalid_argument);

    json short_window = scenario_to_json(preset("trial07"));
    short_window["legs"][0]["duration"] = 10.0;
    short_window["legs"][1]["duration"] = 10.0;
    CHECK_THROWS_WITH_AS(static_cast<void>(scenario_from_json(short_window)),
                         doctest::Contains("window"), std::invalid_argument);
}

TEST_CASE("solver config sections parse with defaults and overrides") {
    const json doc = json::parse(R"({
      "ga": {"population_size": 8, "inner_runs": 2},
      "cma": {"feval_budget": 1234, "sigma0": 0.5},
      "grid": {"range": [0, 1000, 100], "course": [0, 360, 90], "speed": [0, 10, 5]}
    })");

    const SolverSpec ga = solver_spec_from_json("ga", doc);
    const GaConfig& ga_cfg = std::get<GaConfig>(ga.config);
    CHECK(ga_cfg.population_size == 8);
    CHECK(ga_cfg.inner_runs == 2);
    CHECK(ga_cfg.main_generations == 500); // untouched default

    const SolverSpec cma = solver_spec_from_json("cma", doc);
    const CmaConfig& cma_cfg = std::get<CmaConfig>(cma.config);
    CHECK(cma_cfg.feval_budget == 1234);
    CHECK(cma_cfg.sigma0 == 0.5);
    CHECK(cma_cfg.parent_size == 100);

    const SolverSpec grid = solver_spec_from_json("grid", doc);
    const GridSpec& grid_spec = std::get<GridSpec>(grid.config);
    CHECK(grid_cell_count(grid_spec) == 10 * 4 * 2);

    const SolverSpec defaulted = solver_spec_from_json("cma", json::object());
    CHECK(std::get<CmaConfig>(defaulted.config).feval_budget == 50000);

    CHECK_THROWS_AS(static_cast<void>(solver_spec_from_json("annealing", doc)),
                    std::invalid_argument);
}

TEST_CASE("config serialization round trips") {
    GaConfig ga;
    ga.population_size = 33;
    ga.bounds = default_xy_bounds();
    const GaConfig ga_back = ga_config_from_json(ga_config_to_json(ga));
    CHECK(ga_back.population_size == 33);
    CHECK(ga_back.bounds.size() == 4);

    CmaConfig cma;
    cma.tol_sigma = 0.0;
    const CmaConfig cma_back = cma_config_from_json(cma_config_to_json(cma));
    CHECK(cma_back.tol_sigma == 0.0);

    const GridSpec grid_back = grid_spec_from_json(grid_spec_to_json(reference_grid()));
    CHECK(grid_cell_count(grid_back) == 50400000);
}

TEST_CASE("csv emitters produce one row per sample plus a header") {
    const Scenario s = preset("trial07");
    RandomStream rng(s.seed);
    const BearingObservations obs = synthesize_bearings(s, rng);
    std::ostringstream out;
    write_bearings_csv(out, obs.clean, obs.noisy);
    const std::string text = out.str();
    const long rows = std::count(text.begin(), text.end(), '\n');
    CHECK(rows == s.n_samples + 1);
    CHECK(text.rfind("t,clean_deg,noisy_deg\n", 0) == 0);
}
