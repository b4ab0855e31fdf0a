#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "botma/kinematics.hpp"
#include "botma/solver_cma.hpp"
#include "botma/solver_ga.hpp"
#include "botma/solver_grid.hpp"

namespace botma {

/**
 * Monte Carlo orchestration. Run k of a campaign derives its noise stream
 * from derive_seed(master_seed, 2k) and its solver stream from
 * derive_seed(master_seed, 2k+1); each run draws a fresh noise realization
 * and a fresh solver stream, so a campaign is fully reproducible from
 * (scenario, solver spec, M, master_seed) and adding runs never perturbs
 * earlier ones.
 */

/// A named solver choice plus its configuration.
struct SolverSpec {
    std::string label;
    std::variant<GaConfig, CmaConfig, GridSpec> config;

    static SolverSpec ga(GaConfig cfg = {}, std::string label = "ga");
    static SolverSpec cma(CmaConfig cfg = {}, std::string label = "cma");
    static SolverSpec grid(GridSpec spec, std::string label = "grid");
};

struct RunRecord {
    int run = 0;
    Candidate estimate; // polar form; GA results are converted via the
                        // observer start so all solvers report alike
    double cost = 0.0;  // for the GA, the best inner-run cost
    std::uint64_t fevals = 0;
};

struct ParamStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (M-1); 0 when M = 1
    double abs_dev = 0.0; // |mean - truth|
};

/// Mean / standard deviation / absolute deviation from truth, per estimated
/// parameter, over one Monte Carlo campaign.
struct MonteCarloSummary {
    ParamStats range;
    ParamStats course;
    ParamStats speed;
    int runs = 0;
    std::uint64_t total_fevals = 0;
    std::vector<RunRecord> records;
};

/// mean/stddev/|dev| of one parameter sample; M = 1 yields stddev 0.
ParamStats compute_stats(std::span<const double> values, double truth);

/// Mean evaluations per run; the cross-solver comparison currency.
double mean_fevals(const MonteCarloSummary& summary);

/// Run one solve: synthesize noisy bearings with noise_seed, solve with
/// solver_seed, and report the estimate in polar form.
RunRecord solve_once(const SolverSpec& solver, const Scenario& scenario,
                     std::uint64_t noise_seed, std::uint64_t solver_seed);

MonteCarloSummary run_monte_carlo(const SolverSpec& solver,
                                  const Scenario& scenario, int runs,
                                  std::uint64_t master_seed, int jobs = 1);

struct SweepResult {
    std::vector<double> sigmas;
    std::vector<MonteCarloSummary> summaries;
};

/// One Monte Carlo campaign per noise level; the geometry is shared and only
/// noise_sigma varies. sigmas must be strictly increasing.
SweepResult noise_sweep(const SolverSpec& solver, const Scenario& base,
                        const std::vector<double>& sigmas, int runs,
                        std::uint64_t master_seed, int jobs = 1);

struct SolverComparison {
    std::vector<SolverSpec> solvers;
    std::vector<MonteCarloSummary> summaries;
};

/// Same campaign (same scenario, M, master seed) under each solver, so
/// evaluation-count ratios can be read straight off the counters.
SolverComparison compare_solvers(const Scenario& scenario,
                                 const std::vector<SolverSpec>& solvers, int runs,
                                 std::uint64_t master_seed, int jobs = 1);

} // namespace botma
