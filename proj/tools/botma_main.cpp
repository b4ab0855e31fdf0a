/**
 * botma — bearings-only target motion analysis workbench.
 *
 * Subcommands:
 *   presets   list built-in trial scenarios
 *   simulate  write observer/target tracks and bearing series as CSV
 *   solve     run one solver on one scenario
 *   mc        Monte Carlo campaign for one solver
 *   sweep     Monte Carlo campaign per noise level
 *
 * Exit codes: 0 success, 1 invalid input or configuration, 2 runtime failure
 * (including violated thresholds embedded in a sweep config).
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "botma/csv.hpp"
#include "botma/harness.hpp"
#include "botma/scenario_io.hpp"

namespace {

using namespace botma;
using nlohmann::json;

struct CommonArgs {
    std::string preset;
    std::string scenario_path;
    std::string config_path;
    std::string solver = "cma";
    std::string out_dir = ".";
    int jobs = 1;
    bool print_preset = false;
};

void add_scenario_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--preset", args.preset, "built-in scenario name (trial01..trial12)");
    cmd->add_option("--scenario", args.scenario_path, "scenario JSON file");
    cmd->add_option("--out", args.out_dir, "output directory for CSV files")
        ->capture_default_str();
    cmd->add_flag("--print-preset", args.print_preset,
                  "print the fully resolved scenario as JSON and exit");
}

Scenario resolve_scenario(const CommonArgs& args) {
    if (!args.preset.empty() && !args.scenario_path.empty()) {
        throw std::invalid_argument("give either --preset or --scenario, not both");
    }
    if (!args.preset.empty()) {
        return preset(args.preset);
    }
    if (!args.scenario_path.empty()) {
        return load_scenario(args.scenario_path);
    }
    throw std::invalid_argument("a scenario is required (--preset or --scenario)");
}

json load_config(const std::string& path) {
    if (path.empty()) {
        return json::object();
    }
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    json j;
    in >> j;
    return j;
}

std::string out_path(const CommonArgs& args, const Scenario& s,
                     const std::string& suffix) {
    std::filesystem::create_directories(args.out_dir);
    const std::string stem = s.name.empty() ? "scenario" : s.name;
    return (std::filesystem::path(args.out_dir) / (stem + suffix)).string();
}

void print_summary(const std::string& label, const MonteCarloSummary& s) {
    std::printf("%-8s %12s %12s %12s\n", label.c_str(), "R(m)", "C(deg)", "S(m/s)");
    std::printf("%-8s %12.3f %12.3f %12.3f\n", "mean", s.range.mean, s.course.mean,
                s.speed.mean);
    std::printf("%-8s %12.3f %12.3f %12.3f\n", "std", s.range.stddev,
                s.course.stddev, s.speed.stddev);
    std::printf("%-8s %12.3f %12.3f %12.3f\n", "abs_dev", s.range.abs_dev,
                s.course.abs_dev, s.speed.abs_dev);
    std::printf("runs=%d total_fevals=%llu\n", s.runs,
                static_cast<unsigned long long>(s.total_fevals));
}

int cmd_presets() {
    for (const std::string& name : preset_names()) {
        const Scenario s = preset(name);
        std::printf("%-8s R=%8.1f m  C=%5.1f deg  S=%4.1f m/s  sigma=%4.1f deg\n",
                    name.c_str(), s.truth.r0_m, s.truth.course_deg, s.truth.speed_mps,
                    s.noise_sigma_deg);
    }
    return 0;
}

int cmd_simulate(const CommonArgs& args) {
    const Scenario s = resolve_scenario(args);
    if (args.print_preset) {
        std::cout << scenario_to_json(s).dump(2) << "\n";
        return 0;
    }
    RandomStream rng(s.seed);
    const BearingObservations obs = synthesize_bearings(s, rng);
    const Track observer = observer_track(s);
    const Track target = target_track(s);

    std::ostringstream obs_csv, tgt_csv, brg_csv;
    write_track_csv(obs_csv, observer);
    write_track_csv(tgt_csv, target);
    write_bearings_csv(brg_csv, obs.clean, obs.noisy);
    write_file(out_path(args, s, "_observer.csv"), obs_csv.str());
    write_file(out_path(args, s, "_target.csv"), tgt_csv.str());
    write_file(out_path(args, s, "_bearings.csv"), brg_csv.str());

    std::printf("wrote %s, %s, %s (%d samples, noise sigma %.3g deg)\n",
                out_path(args, s, "_observer.csv").c_str(),
                out_path(args, s, "_target.csv").c_str(),
                out_path(args, s, "_bearings.csv").c_str(), s.n_samples,
                s.noise_sigma_deg);
    return 0;
}

int cmd_solve(const CommonArgs& args, std::uint64_t solver_seed, bool full_grid,
              bool confirm, bool trace_wanted, bool dump_volume) {
    const Scenario s = resolve_scenario(args);
    if (args.print_preset) {
        std::cout << scenario_to_json(s).dump(2) << "\n";
        return 0;
    }
    const json config = load_config(args.config_path);
    SolverSpec spec = solver_spec_from_json(args.solver, config);

    if (args.solver == "grid") {
        GridSpec grid = std::get<GridSpec>(spec.config);
        if (full_grid && !config.contains("grid")) {
            grid = reference_grid();
        }
        const std::int64_t cells = grid_cell_count(grid);
        if (cells > 10000000 && !confirm) {
            throw std::invalid_argument(
                "grid has " + std::to_string(cells) +
                " cells (> 1e7); pass --confirm to run it anyway");
        }
        spec.config = grid;
    }

    RandomStream noise_rng(s.seed);
    const BearingObservations obs = synthesize_bearings(s, noise_rng);
    const Track observer = observer_track(s);
    const Objective objective(obs.noisy, observer);
    RandomStream solver_rng(solver_seed);

    Candidate estimate;
    double cost = 0.0;
    std::uint64_t fevals = 0;

    if (args.solver == "ga") {
        const GaConfig& cfg = std::get<GaConfig>(spec.config);
        const GaReport report = run_tmaga(objective, cfg, solver_rng);
        estimate = Candidate{distance(Point{report.best.x0_m, report.best.y0_m},
                                      s.observer_start),
                             wrap360(report.best.course_deg), report.best.speed_mps};
        cost = report.best_cost;
        fevals = report.fevals;
        const Candidate weighted{
            distance(Point{report.weighted.x0_m, report.weighted.y0_m},
                     s.observer_start),
            wrap360(report.weighted.course_deg), report.weighted.speed_mps};
        std::printf("weighted-average aggregate: R=%.1f m C=%.2f deg S=%.2f m/s\n",
                    weighted.r0_m, weighted.course_deg, weighted.speed_mps);
        std::ostringstream runs_csv;
        write_ga_inner_runs_csv(runs_csv, report,
                                report.fevals / report.inner_runs.size());
        write_file(out_path(args, s, "_ga_runs.csv"), runs_csv.str());
    } else if (args.solver == "cma") {
        const CmaConfig& cfg = std::get<CmaConfig>(spec.config);
        std::vector<CmaTraceRow> trace;
        const SolverReport report =
            run_cma(objective, cfg, solver_rng, trace_wanted ? &trace : nullptr);
        estimate = report.best;
        cost = report.best_cost;
        fevals = report.fevals;
        if (trace_wanted) {
            std::ostringstream trace_csv;
            write_cma_trace_csv(trace_csv, trace);
            write_file(out_path(args, s, "_cma_trace.csv"), trace_csv.str());
        }
    } else {
        const GridSpec& grid = std::get<GridSpec>(spec.config);
        const SolverReport report = grid_search(objective, grid, args.jobs);
        estimate = report.best;
        cost = report.best_cost;
        fevals = report.fevals;
        if (dump_volume) {
            std::ostringstream volume_csv;
            write_cost_volume_csv(volume_csv, objective, grid);
            write_file(out_path(args, s, "_grid_volume.csv"), volume_csv.str());
        }
    }

    std::printf("%-10s %12s %12s %12s %14s %12s\n", "solver", "R(m)", "C(deg)",
                "S(m/s)", "cost(deg)", "fevals");
    std::printf("%-10s %12.3f %12.3f %12.3f %14.6g %12llu\n", args.solver.c_str(),
                estimate.r0_m, estimate.course_deg, estimate.speed_mps, cost,
                static_cast<unsigned long long>(fevals));

    std::ostringstream report_csv;
    report_csv << std::setprecision(17) << "r,course,speed,cost,fevals\n"
               << estimate.r0_m << ',' << estimate.course_deg << ','
               << estimate.speed_mps << ',' << cost << ',' << fevals << "\n";
    write_file(out_path(args, s, "_" + args.solver + "_report.csv"),
               report_csv.str());
    return 0;
}

int cmd_mc(const CommonArgs& args, int runs, std::uint64_t master_seed) {
    const Scenario s = resolve_scenario(args);
    if (args.print_preset) {
        std::cout << scenario_to_json(s).dump(2) << "\n";
        return 0;
    }
    const json config = load_config(args.config_path);
    const SolverSpec spec = solver_spec_from_json(args.solver, config);

    const MonteCarloSummary summary =
        run_monte_carlo(spec, s, runs, master_seed, args.jobs);
    print_summary(args.solver, summary);

    std::ostringstream summary_csv, records_csv;
    write_summary_csv(summary_csv, summary);
    write_run_records_csv(records_csv, summary.records);
    write_file(out_path(args, s, "_" + args.solver + "_mc_summary.csv"),
               summary_csv.str());
    write_file(out_path(args, s, "_" + args.solver + "_mc_runs.csv"),
               records_csv.str());
    return 0;
}

int cmd_sweep(const CommonArgs& args, std::vector<double> sigmas, int runs,
              std::uint64_t master_seed) {
    const Scenario s = resolve_scenario(args);
    if (args.print_preset) {
        std::cout << scenario_to_json(s).dump(2) << "\n";
        return 0;
    }
    const json config = load_config(args.config_path);
    const SolverSpec spec = solver_spec_from_json(args.solver, config);
    if (sigmas.empty() && config.contains("sweep") &&
        config.at("sweep").contains("sigmas")) {
        sigmas = config.at("sweep").at("sigmas").get<std::vector<double>>();
    }

    const SweepResult sweep = noise_sweep(spec, s, sigmas, runs, master_seed, args.jobs);
    for (std::size_t i = 0; i < sweep.sigmas.size(); ++i) {
        std::printf("--- noise sigma = %g deg ---\n", sweep.sigmas[i]);
        print_summary(args.solver, sweep.summaries[i]);
    }

    std::ostringstream sweep_csv;
    write_sweep_csv(sweep_csv, sweep);
    write_file(out_path(args, s, "_" + args.solver + "_sweep.csv"), sweep_csv.str());

    // A sweep config may embed acceptance thresholds; violating one makes the
    // command fail so scripted experiments notice.
    int violations = 0;
    if (config.contains("sweep") && config.at("sweep").contains("thresholds")) {
        const json& th = config.at("sweep").at("thresholds");
        if (th.value("monotone_range_std", false)) {
            for (std::size_t i = 1; i < sweep.summaries.size(); ++i) {
                if (sweep.summaries[i].range.stddev <
                    sweep.summaries[i - 1].range.stddev) {
                    std::fprintf(stderr,
                                 "threshold violated: range std not monotone at "
                                 "sigma=%g (%.3f < %.3f)\n",
                                 sweep.sigmas[i], sweep.summaries[i].range.stddev,
                                 sweep.summaries[i - 1].range.stddev);
                    ++violations;
                }
            }
        }
        if (th.contains("range_std_max")) {
            const auto limits = th.at("range_std_max").get<std::vector<double>>();
            for (std::size_t i = 0; i < limits.size() && i < sweep.summaries.size();
                 ++i) {
                if (sweep.summaries[i].range.stddev > limits[i]) {
                    std::fprintf(stderr,
                                 "threshold violated: range std %.3f > %.3f at "
                                 "sigma=%g\n",
                                 sweep.summaries[i].range.stddev, limits[i],
                                 sweep.sigmas[i]);
                    ++violations;
                }
            }
        }
    }
    return violations == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bearings-only target motion analysis workbench"};
    app.require_subcommand(1);

    CLI::App* presets_cmd = app.add_subcommand("presets", "list built-in scenarios");

    CommonArgs sim_args;
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "synthesize tracks and bearings");
    add_scenario_options(simulate_cmd, sim_args);

    CommonArgs solve_args;
    std::uint64_t solver_seed = 1;
    bool full_grid = false;
    bool confirm = false;
    bool trace_wanted = false;
    CLI::App* solve_cmd = app.add_subcommand("solve", "run one solver once");
    add_scenario_options(solve_cmd, solve_args);
    solve_cmd->add_option("--solver", solve_args.solver, "ga | cma | grid")
        ->capture_default_str();
    solve_cmd->add_option("--config", solve_args.config_path, "experiment config JSON");
    solve_cmd->add_option("--seed", solver_seed, "solver random seed")
        ->capture_default_str();
    solve_cmd->add_option("--jobs", solve_args.jobs, "worker threads (grid)")
        ->capture_default_str();
    solve_cmd->add_flag("--full-grid", full_grid,
                        "use the full-resolution reference grid");
    solve_cmd->add_flag("--confirm", confirm, "acknowledge a > 1e7-cell grid run");
    solve_cmd->add_flag("--trace", trace_wanted, "write a per-generation trace (cma)");
    bool dump_volume = false;
    solve_cmd->add_flag("--dump-volume", dump_volume,
                        "write the full cost volume as CSV (grid, < 1e6 cells)");

    CommonArgs mc_args;
    int mc_runs = 100;
    std::uint64_t mc_seed = 1;
    CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo campaign");
    add_scenario_options(mc_cmd, mc_args);
    mc_cmd->add_option("--solver", mc_args.solver, "ga | cma | grid")
        ->capture_default_str();
    mc_cmd->add_option("--config", mc_args.config_path, "experiment config JSON");
    mc_cmd->add_option("-M,--runs", mc_runs, "Monte Carlo runs")->capture_default_str();
    mc_cmd->add_option("--master-seed", mc_seed, "campaign master seed")
        ->capture_default_str();
    mc_cmd->add_option("--jobs", mc_args.jobs, "worker threads")->capture_default_str();

    CommonArgs sweep_args;
    int sweep_runs = 100;
    std::uint64_t sweep_seed = 1;
    std::vector<double> sigmas;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "noise-level sweep");
    add_scenario_options(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--solver", sweep_args.solver, "ga | cma | grid")
        ->capture_default_str();
    sweep_cmd->add_option("--config", sweep_args.config_path, "experiment config JSON");
    sweep_cmd->add_option("--sigmas", sigmas, "noise levels in degrees")
        ->delimiter(',');
    sweep_cmd->add_option("-M,--runs", sweep_runs, "Monte Carlo runs per level")
        ->capture_default_str();
    sweep_cmd->add_option("--master-seed", sweep_seed, "campaign master seed")
        ->capture_default_str();
    sweep_cmd->add_option("--jobs", sweep_args.jobs, "worker threads")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (presets_cmd->parsed()) {
            return cmd_presets();
        }
        if (simulate_cmd->parsed()) {
            return cmd_simulate(sim_args);
        }
        if (solve_cmd->parsed()) {
            return cmd_solve(solve_args, solver_seed, full_grid, confirm, trace_wanted,
                             dump_volume);
        }
        if (mc_cmd->parsed()) {
            return cmd_mc(mc_args, mc_runs, mc_seed);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_args, sigmas, sweep_runs, sweep_seed);
        }
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 2;
    }
}
