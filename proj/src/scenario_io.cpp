#include "botma/scenario_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace botma {

using nlohmann::json;

json scenario_to_json(const Scenario& s) {
    json legs = json::array();
    for (const Leg& leg : s.observer_legs) {
        legs.push_back({{"course", leg.course_deg},
                        {"speed", leg.speed_mps},
                        {"duration", leg.duration_s}});
    }
    return json{{"name", s.name},
                {"observer_start", {{"x", s.observer_start.x}, {"y", s.observer_start.y}}},
                {"legs", legs},
                {"truth",
                 {{"r0", s.truth.r0_m},
                  {"b0", s.truth.b0_deg},
                  {"course", s.truth.course_deg},
                  {"speed", s.truth.speed_mps}}},
                {"dt", s.dt_s},
                {"n_samples", s.n_samples},
                {"noise_sigma", s.noise_sigma_deg},
                {"seed", s.seed},
                {"observable", s.observable}};
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.name = j.value("name", std::string{});
    if (j.contains("observer_start")) {
        s.observer_start.x = j.at("observer_start").at("x").get<double>();
        s.observer_start.y = j.at("observer_start").at("y").get<double>();
    }
    s.observer_legs.clear();
    for (const json& leg : j.at("legs")) {
        s.observer_legs.push_back(Leg{leg.at("course").get<double>(),
                                      leg.at("speed").get<double>(),
                                      leg.at("duration").get<double>()});
    }
    const json& truth = j.at("truth");
    s.truth.r0_m = truth.at("r0").get<double>();
    s.truth.b0_deg = truth.value("b0", 0.0);
    s.truth.course_deg = truth.at("course").get<double>();
    s.truth.speed_mps = truth.at("speed").get<double>();
    s.dt_s = j.value("dt", 10.0);
    s.n_samples = j.value("n_samples", 121);
    s.noise_sigma_deg = j.value("noise_sigma", 0.0);
    s.seed = j.value("seed", std::uint64_t{0});
    s.observable = j.value("observable", true);
    validate(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open scenario file: " + path);
    }
    json j;
    in >> j;
    return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write scenario file: " + path);
    }
    out << scenario_to_json(s).dump(2) << "\n";
}

namespace {

struct TrialRow {
    double r0;
    double course;
    double speed;
    double sigma;
};

// Published ground-truth rows for the twelve trials.
constexpr TrialRow kTrials[12] = {
    {7994.0, 90.0, 10.0, 0.3}, {7071.0, 90.0, 6.0, 0.3},
    {4006.0, 90.0, 6.0, 0.3},  {8000.0, 175.0, 10.0, 0.3},
    {8000.0, 150.0, 10.0, 0.3}, {8000.0, 120.0, 10.0, 0.3},
    {4006.0, 90.0, 10.0, 0.0}, {4006.0, 90.0, 10.0, 0.5},
    {4006.0, 90.0, 10.0, 1.0}, {4006.0, 90.0, 10.0, 2.0},
    {4006.0, 90.0, 10.0, 5.0}, {4006.0, 90.0, 10.0, 10.0},
};

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    names.reserve(12);
    for (int i = 1; i <= 12; ++i) {
        names.push_back("trial" + std::string(i < 10 ? "0" : "") + std::to_string(i));
    }
    return names;
}

Scenario preset(const std::string& name) {
    const std::vector<std::string> names = preset_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            const TrialRow& row = kTrials[i];
            Scenario s;
            s.name = name;
            s.observer_start = Point{0.0, 0.0};
            s.observer_legs = {Leg{0.0, 5.0, 600.0}, Leg{90.0, 5.0, 600.0}};
            s.truth = TargetTruth{row.r0, 0.0, row.course, row.speed};
            s.dt_s = 10.0;
            s.n_samples = 121;
            s.noise_sigma_deg = row.sigma;
            s.seed = static_cast<std::uint64_t>(i + 1);
            s.observable = true;
            return s;
        }
    }
    throw std::invalid_argument("unknown preset: " + name +
                                " (expected trial01 .. trial12)");
}

namespace {

SearchBounds bounds_from_json(const json& j) {
    SearchBounds b;
    for (const json& axis : j) {
        b.axes.push_back(Interval{axis.at(0).get<double>(), axis.at(1).get<double>()});
    }
    validate(b);
    return b;
}

json bounds_to_json(const SearchBounds& b) {
    json out = json::array();
    for (const Interval& iv : b.axes) {
        out.push_back({iv.min, iv.max});
    }
    return out;
}

GridAxis axis_from_json(const json& j) {
    return GridAxis{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

} // namespace

GaConfig ga_config_from_json(const json& j) {
    GaConfig cfg;
    cfg.population_size = j.value("population_size", cfg.population_size);
    cfg.narrowing_generations = j.value("narrowing_generations", cfg.narrowing_generations);
    cfg.main_generations = j.value("main_generations", cfg.main_generations);
    cfg.inner_runs = j.value("inner_runs", cfg.inner_runs);
    cfg.outer_runs = j.value("outer_runs", cfg.outer_runs);
    cfg.mutation_rate = j.value("mutation_rate", cfg.mutation_rate);
    cfg.narrowing_fraction = j.value("narrowing_fraction", cfg.narrowing_fraction);
    cfg.precision_p = j.value("precision_p", cfg.precision_p);
    cfg.elitism = j.value("elitism", cfg.elitism);
    if (j.contains("bounds")) {
        cfg.bounds = bounds_from_json(j.at("bounds"));
    }
    validate(cfg);
    return cfg;
}

CmaConfig cma_config_from_json(const json& j) {
    CmaConfig cfg;
    cfg.parent_size = j.value("parent_size", cfg.parent_size);
    cfg.offspring_size = j.value("offspring_size", cfg.offspring_size);
    cfg.max_generations = j.value("max_generations", cfg.max_generations);
    cfg.feval_budget = j.value("feval_budget", cfg.feval_budget);
    cfg.sigma0 = j.value("sigma0", cfg.sigma0);
    cfg.tol_cost = j.value("tol_cost", cfg.tol_cost);
    cfg.tol_sigma = j.value("tol_sigma", cfg.tol_sigma);
    if (j.contains("bounds")) {
        cfg.bounds = bounds_from_json(j.at("bounds"));
    }
    validate(cfg);
    return cfg;
}

GridSpec grid_spec_from_json(const json& j) {
    GridSpec spec = coarse_grid();
    if (j.contains("range")) spec.range = axis_from_json(j.at("range"));
    if (j.contains("course")) spec.course = axis_from_json(j.at("course"));
    if (j.contains("speed")) spec.speed = axis_from_json(j.at("speed"));
    grid_cell_count(spec); // validates axes
    return spec;
}

json ga_config_to_json(const GaConfig& cfg) {
    json j{{"population_size", cfg.population_size},
           {"narrowing_generations", cfg.narrowing_generations},
           {"main_generations", cfg.main_generations},
           {"inner_runs", cfg.inner_runs},
           {"outer_runs", cfg.outer_runs},
           {"mutation_rate", cfg.mutation_rate},
           {"narrowing_fraction", cfg.narrowing_fraction},
           {"precision_p", cfg.precision_p},
           {"elitism", cfg.elitism}};
    if (!cfg.bounds.axes.empty()) {
        j["bounds"] = bounds_to_json(cfg.bounds);
    }
    return j;
}

json cma_config_to_json(const CmaConfig& cfg) {
    json j{{"parent_size", cfg.parent_size},
           {"offspring_size", cfg.offspring_size},
           {"max_generations", cfg.max_generations},
           {"feval_budget", cfg.feval_budget},
           {"sigma0", cfg.sigma0},
           {"tol_cost", cfg.tol_cost},
           {"tol_sigma", cfg.tol_sigma}};
    if (!cfg.bounds.axes.empty()) {
        j["bounds"] = bounds_to_json(cfg.bounds);
    }
    return j;
}

json grid_spec_to_json(const GridSpec& spec) {
    return json{{"range", {spec.range.min, spec.range.max, spec.range.step}},
                {"course", {spec.course.min, spec.course.max, spec.course.step}},
                {"speed", {spec.speed.min, spec.speed.max, spec.speed.step}}};
}

SolverSpec solver_spec_from_json(const std::string& kind, const json& doc) {
    if (kind == "ga") {
        return SolverSpec::ga(doc.contains("ga") ? ga_config_from_json(doc.at("ga"))
                                                 : GaConfig{});
    }
    if (kind == "cma") {
        return SolverSpec::cma(doc.contains("cma")
                                   ? cma_config_from_json(doc.at("cma"))
                                   : CmaConfig{});
    }
    if (kind == "grid") {
        return SolverSpec::grid(doc.contains("grid")
                                    ? grid_spec_from_json(doc.at("grid"))
                                    : coarse_grid());
    }
    throw std::invalid_argument("unknown solver: " + kind +
                                " (expected ga, cma, or grid)");
}

} // namespace botma
