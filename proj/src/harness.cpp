#include "botma/harness.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace botma {

SolverSpec SolverSpec::ga(GaConfig cfg, std::string label) {
    return SolverSpec{std::move(label), std::move(cfg)};
}

SolverSpec SolverSpec::cma(CmaConfig cfg, std::string label) {
    return SolverSpec{std::move(label), std::move(cfg)};
}

SolverSpec SolverSpec::grid(GridSpec spec, std::string label) {
    return SolverSpec{std::move(label), std::move(spec)};
}

ParamStats compute_stats(std::span<const double> values, double truth) {
    if (values.empty()) {
        throw std::invalid_argument("compute_stats: empty sample");
    }
    ParamStats out;
    for (double v : values) {
        out.mean += v;
    }
    out.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double acc = 0.0;
        for (double v : values) {
            const double d = v - out.mean;
            acc += d * d;
        }
        out.stddev = std::sqrt(acc / static_cast<double>(values.size() - 1));
    }
    out.abs_dev = std::abs(out.mean - truth);
    return out;
}

double mean_fevals(const MonteCarloSummary& summary) {
    return static_cast<double>(summary.total_fevals) /
           static_cast<double>(summary.runs);
}

namespace {

Candidate to_polar(const CandidateXY& c, const Point& observer_start) {
    return Candidate{distance(Point{c.x0_m, c.y0_m}, observer_start),
                     wrap360(c.course_deg), c.speed_mps};
}

} // namespace

RunRecord solve_once(const SolverSpec& solver, const Scenario& scenario,
                     std::uint64_t noise_seed, std::uint64_t solver_seed) {
    RandomStream noise_rng(noise_seed);
    const BearingObservations obs = synthesize_bearings(scenario, noise_rng);
    const Track observer = observer_track(scenario);
    const Objective objective(obs.noisy, observer);

    RunRecord record;
    RandomStream solver_rng(solver_seed);

    if (const GaConfig* ga = std::get_if<GaConfig>(&solver.config)) {
        const GaReport report = run_tmaga(objective, *ga, solver_rng);
        record.estimate = to_polar(report.best, scenario.observer_start);
        record.cost = report.best_cost;
    } else if (const CmaConfig* cma = std::get_if<CmaConfig>(&solver.config)) {
        const SolverReport report = run_cma(objective, *cma, solver_rng);
        record.estimate = report.best;
        record.cost = report.best_cost;
    } else {
        const GridSpec& spec = std::get<GridSpec>(solver.config);
        const SolverReport report = grid_search(objective, spec);
        record.estimate = report.best;
        record.cost = report.best_cost;
    }
    record.fevals = objective.evaluations();
    return record;
}

MonteCarloSummary run_monte_carlo(const SolverSpec& solver,
                                  const Scenario& scenario, int runs,
                                  std::uint64_t master_seed, int jobs) {
    if (runs < 1) {
        throw std::invalid_argument("run_monte_carlo: need at least one run");
    }
    validate(scenario);

    MonteCarloSummary summary;
    summary.runs = runs;
    summary.records.resize(static_cast<std::size_t>(runs));

    auto work = [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            const std::uint64_t noise_seed =
                derive_seed(master_seed, 2 * static_cast<std::uint64_t>(k));
            const std::uint64_t solver_seed =
                derive_seed(master_seed, 2 * static_cast<std::uint64_t>(k) + 1);
            RunRecord rec = solve_once(solver, scenario, noise_seed, solver_seed);
            rec.run = k;
            summary.records[static_cast<std::size_t>(k)] = std::move(rec);
        }
    };

    const int workers = std::max(1, std::min(jobs, runs));
    if (workers == 1) {
        work(0, runs);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            const int begin = runs * w / workers;
            const int end = runs * (w + 1) / workers;
            threads.emplace_back(work, begin, end);
        }
        for (std::thread& t : threads) {
            t.join();
        }
    }

    // Reduce in run-index order so the summary is independent of scheduling.
    std::vector<double> r(summary.records.size());
    std::vector<double> c(summary.records.size());
    std::vector<double> s(summary.records.size());
    for (std::size_t i = 0; i < summary.records.size(); ++i) {
        r[i] = summary.records[i].estimate.r0_m;
        c[i] = summary.records[i].estimate.course_deg;
        s[i] = summary.records[i].estimate.speed_mps;
        summary.total_fevals += summary.records[i].fevals;
    }
    summary.range = compute_stats(r, scenario.truth.r0_m);
    summary.course = compute_stats(c, scenario.truth.course_deg);
    summary.speed = compute_stats(s, scenario.truth.speed_mps);
    return summary;
}

SweepResult noise_sweep(const SolverSpec& solver, const Scenario& base,
                        const std::vector<double>& sigmas, int runs,
                        std::uint64_t master_seed, int jobs) {
    if (sigmas.empty()) {
        throw std::invalid_argument("noise_sweep: no noise levels given");
    }
    for (std::size_t i = 1; i < sigmas.size(); ++i) {
        if (!(sigmas[i] > sigmas[i - 1])) {
            throw std::invalid_argument("noise_sweep: sigmas must be strictly increasing");
        }
    }
    SweepResult result;
    result.sigmas = sigmas;
    for (double sigma : sigmas) {
        Scenario s = base;
        s.noise_sigma_deg = sigma;
        result.summaries.push_back(
            run_monte_carlo(solver, s, runs, master_seed, jobs));
    }
    return result;
}

SolverComparison compare_solvers(const Scenario& scenario,
                                 const std::vector<SolverSpec>& solvers, int runs,
                                 std::uint64_t master_seed, int jobs) {
    if (solvers.size() < 2) {
        throw std::invalid_argument("compare_solvers: need at least two solvers");
    }
    SolverComparison comparison;
    comparison.solvers = solvers;
    for (const SolverSpec& solver : solvers) {
        comparison.summaries.push_back(
            run_monte_carlo(solver, scenario, runs, master_seed, jobs));
    }
    return comparison;
}

} // namespace botma
