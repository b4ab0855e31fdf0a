/**
 * Acceptance suite. Every criterion prints exactly one [PASS]/[FAIL] line;
 * the binary exits nonzero if any criterion fails. Tolerances are pinned in
 * code next to each check.
 */

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "botma/harness.hpp"
#include "botma/scenario_io.hpp"

using namespace botma;

namespace {

struct Checker {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

int g_failures = 0;

void criterion(int number, const std::string& name,
               const std::function<void(Checker&)>& body) {
    Checker check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (check.pass) {
        std::printf("[PASS] criterion %d: %s (%.2f s)\n", number, name.c_str(), seconds);
    } else {
        ++g_failures;
        std::printf("[FAIL] criterion %d: %s (%.2f s) -- %s\n", number, name.c_str(),
                    seconds, check.detail.str().c_str());
    }
    std::fflush(stdout);
}

struct Problem {
    Scenario scenario;
    Track observer;
    BearingObservations obs;
};

Problem make_problem(const std::string& name) {
    Problem p;
    p.scenario = preset(name);
    p.observer = observer_track(p.scenario);
    RandomStream rng(p.scenario.seed);
    p.obs = synthesize_bearings(p.scenario, rng);
    return p;
}

BearingSeries make_series(const std::vector<double>& values) {
    BearingSeries s;
    s.bearings_deg = values;
    s.times_s.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.times_s[i] = static_cast<double>(i);
    }
    return s;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void criterion_1_bit_widths(Checker& check) {
    check.require(bit_width(20000.0, 0.0, 7) == 38, "x0 width != 38");
    check.require(bit_width(20000.0, 0.0, 7) == 38, "y0 width != 38");
    check.require(bit_width(360.0, 0.0, 7) == 32, "course width != 32");
    check.require(bit_width(25.0, 0.0, 7) == 28, "speed width != 28");
    const ChromosomeLayout layout =
        ChromosomeLayout::from_bounds(default_xy_bounds(), 7);
    check.require(layout.total_bits == 136,
                  "total bits " + std::to_string(layout.total_bits) + " != 136");
}

void criterion_2_feval_accounting(Checker& check) {
    // Closed form at full scale.
    const GaConfig full;
    check.require(ga_fevals_per_run(full) == 700000,
                  "closed form != 700000 per outer run");
    check.require(static_cast<std::uint64_t>(full.outer_runs) *
                          ga_fevals_per_run(full) == 14000000,
                  "20 outer runs != 14000000");

    // Counter check at reduced scale.
    const Problem p = make_problem("trial07");
    {
        GaConfig small;
        small.population_size = 10;
        small.narrowing_generations = 3;
        small.main_generations = 4;
        small.inner_runs = 2;
        const Objective objective(p.obs.noisy, p.observer);
        RandomStream rng(1001);
        const GaReport report = run_tmaga(objective, small, rng);
        check.require(report.fevals == 10u * 7u * 2u,
                      "reduced-scale counter " + std::to_string(report.fevals));
        check.require(objective.evaluations() == report.fevals,
                      "report does not match the live counter");
    }

    // One full 700000-evaluation run, verified on the live counter.
    {
        const Objective objective(p.obs.noisy, p.observer);
        RandomStream rng(1002);
        const GaReport report = run_tmaga(objective, full, rng);
        check.require(report.fevals == 700000,
                      "full-scale counter " + std::to_string(report.fevals));
        check.require(objective.evaluations() == 700000,
                      "live counter " + std::to_string(objective.evaluations()));
    }
}

void criterion_3_grid_arithmetic(Checker& check) {
    check.require(grid_cell_count(reference_grid()) == 50400000,
                  "reference grid cells != 50400000");
}

void criterion_4_noiseless_recovery(Checker& check) {
    const Scenario scenario = preset("trial07");
    const CmaConfig cfg; // published parameter set
    const MonteCarloSummary summary =
        run_monte_carlo(SolverSpec::cma(cfg), scenario, 20, 20260401);

    for (const RunRecord& rec : summary.records) {
        check.require(std::abs(rec.estimate.r0_m - 4006.0) <= 10.0,
                      "run " + std::to_string(rec.run) + " range off by " +
                          fmt(rec.estimate.r0_m - 4006.0));
        check.require(std::abs(wrap180(rec.estimate.course_deg - 90.0)) <= 0.1,
                      "run " + std::to_string(rec.run) + " course off");
        check.require(std::abs(rec.estimate.speed_mps - 10.0) <= 0.05,
                      "run " + std::to_string(rec.run) + " speed off");
        check.require(rec.fevals <= 50000,
                      "run " + std::to_string(rec.run) + " exceeded the budget");
    }
    check.require(summary.range.stddev < 10.0,
                  "range std " + fmt(summary.range.stddev));
    check.require(summary.course.stddev < 0.1,
                  "course std " + fmt(summary.course.stddev));
    check.require(summary.speed.stddev < 0.05,
                  "speed std " + fmt(summary.speed.stddev));
}

void criterion_5_feval_ratio(Checker& check) {
    // Both solvers run their full published budgets; the CMA tolerances are
    // disabled so the counters read exactly 700000 and 50000.
    const Scenario scenario = preset("trial01");
    GaConfig ga; // 50 * 700 * 20 = 700000
    CmaConfig cma;
    cma.tol_cost = 0.0;
    cma.tol_sigma = 0.0;

    const SolverComparison cmp = compare_solvers(
        scenario, {SolverSpec::ga(ga), SolverSpec::cma(cma)}, 1, 31337);
    const double ga_fevals = mean_fevals(cmp.summaries[0]);
    const double cma_fevals = mean_fevals(cmp.summaries[1]);
    check.require(ga_fevals == 700000.0, "ga counter " + fmt(ga_fevals));
    check.require(cma_fevals == 50000.0, "cma counter " + fmt(cma_fevals));
    check.require(ga_fevals / cma_fevals == 14.0,
                  "ratio " + fmt(ga_fevals / cma_fevals));
}

void criterion_6_grid_oracle_dominance(Checker& check) {
    const Problem p = make_problem("trial07");
    const Objective objective(p.obs.noisy, p.observer);

    const SolverReport grid = grid_search(objective, coarse_grid());
    check.require(std::abs(grid.best.r0_m - 4006.0) <= 1000.0,
                  "grid argmin range " + fmt(grid.best.r0_m));
    check.require(std::abs(grid.best.course_deg - 90.0) <= 10.0,
                  "grid argmin course " + fmt(grid.best.course_deg));
    check.require(std::abs(grid.best.speed_mps - 10.0) <= 1.0,
                  "grid argmin speed " + fmt(grid.best.speed_mps));

    RandomStream rng(2024);
    const SolverReport cma = run_cma(objective, CmaConfig{}, rng);
    check.require(cma.best_cost <= grid.best_cost,
                  "cma cost " + fmt(cma.best_cost) + " > grid cost " +
                      fmt(grid.best_cost));
}

void criterion_7_nonmetric_defect(Checker& check) {
    const CostValue nonmetric =
        cost_total_deviation_nonmetric(make_series({3.0}), make_series({4.0}));
    check.require(nonmetric.undefined_count == 1, "undefined_count != 1");
    const CostValue metric = cost_euclidean(make_series({3.0}), make_series({4.0}));
    check.require(metric.value == 1.0, "metric cost != 1");

    RandomStream rng(7001);
    int undefined_pairs = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> pred, obsv;
        for (int i = 0; i < 20; ++i) {
            pred.push_back(rng.uniform(0.0, 360.0));
            obsv.push_back(rng.uniform(0.0, 360.0));
        }
        if (cost_total_deviation_nonmetric(make_series(pred), make_series(obsv))
                .undefined_count > 0) {
            ++undefined_pairs;
        }
    }
    check.require(undefined_pairs > 0, "no undefined terms found");
    check.detail << "undefined in " << undefined_pairs << "/" << trials
                 << " random pairs";
}

void criterion_8_substituted_properties(Checker& check) {
    // (a) Noise monotonicity of the range-estimate spread.
    {
        const Scenario base = preset("trial07");
        const SweepResult sweep =
            noise_sweep(SolverSpec::cma(CmaConfig{}), base, {0.0, 0.5, 1.0, 2.0},
                        100, 8675309);
        for (std::size_t i = 1; i < sweep.summaries.size(); ++i) {
            check.require(sweep.summaries[i].range.stddev + 1e-12 >=
                              sweep.summaries[i - 1].range.stddev,
                          "range std not monotone at sigma " +
                              fmt(sweep.sigmas[i]) + " (" +
                              fmt(sweep.summaries[i].range.stddev) + " < " +
                              fmt(sweep.summaries[i - 1].range.stddev) + ")");
        }
    }

    RandomStream rng(8001);

    // (b) Wrap invariance, 1e4 cases.
    for (int t = 0; t < 10000; ++t) {
        std::vector<double> pred, obsv, shifted;
        for (int i = 0; i < 10; ++i) {
            pred.push_back(rng.uniform(0.0, 360.0));
            obsv.push_back(rng.uniform(0.0, 360.0));
            shifted.push_back(pred.back() + 360.0);
        }
        const double a = cost_euclidean(make_series(pred), make_series(obsv)).value;
        const double b = cost_euclidean(make_series(shifted), make_series(obsv)).value;
        if (std::abs(a - b) >= 1e-9) {
            check.require(false, "wrap invariance violated");
            break;
        }
    }

    // (b) Metric axioms, 1e4 cases.
    for (int t = 0; t < 10000; ++t) {
        std::vector<double> a, b, c;
        for (int i = 0; i < 8; ++i) {
            a.push_back(rng.uniform(0.0, 360.0));
            b.push_back(rng.uniform(0.0, 360.0));
            c.push_back(rng.uniform(0.0, 360.0));
        }
        const double ab = cost_euclidean(make_series(a), make_series(b)).value;
        const double ba = cost_euclidean(make_series(b), make_series(a)).value;
        const double ac = cost_euclidean(make_series(a), make_series(c)).value;
        const double cb = cost_euclidean(make_series(c), make_series(b)).value;
        if (ab < 0.0 || std::abs(ab - ba) >= 1e-9 || ab > ac + cb + 1e-9) {
            check.require(false, "metric axiom violated");
            break;
        }
    }

    // (b) Chromosome codec round trip, 1e4 cases.
    {
        const ChromosomeLayout layout =
            ChromosomeLayout::from_bounds(default_xy_bounds(), 7);
        const double half_step[4] = {
            0.5 * 20000.0 / (std::ldexp(1.0, 38) - 1.0),
            0.5 * 20000.0 / (std::ldexp(1.0, 38) - 1.0),
            0.5 * 360.0 / (std::ldexp(1.0, 32) - 1.0),
            0.5 * 25.0 / (std::ldexp(1.0, 28) - 1.0)};
        for (int t = 0; t < 10000; ++t) {
            const CandidateXY c{rng.uniform(0.0, 20000.0), rng.uniform(0.0, 20000.0),
                                rng.uniform(0.0, 360.0), rng.uniform(0.0, 25.0)};
            const CandidateXY back = decode(encode(c, layout), layout);
            if (std::abs(back.x0_m - c.x0_m) > half_step[0] * (1 + 1e-9) ||
                std::abs(back.y0_m - c.y0_m) > half_step[1] * (1 + 1e-9) ||
                std::abs(back.course_deg - c.course_deg) > half_step[2] * (1 + 1e-9) ||
                std::abs(back.speed_mps - c.speed_mps) > half_step[3] * (1 + 1e-9)) {
                check.require(false, "codec round trip exceeded half a step");
                break;
            }
        }
    }

    // (b) Recombination weight constraints for every parent count up to 128.
    for (int mu = 1; mu <= 128; ++mu) {
        const std::vector<double> w = recombination_weights(mu);
        double sum = 0.0;
        bool ordered = true;
        for (std::size_t i = 0; i < w.size(); ++i) {
            sum += w[i];
            if (w[i] <= 0.0 || (i > 0 && w[i] > w[i - 1])) {
                ordered = false;
            }
        }
        if (!ordered || std::abs(sum - 1.0) > 1e-12) {
            check.require(false, "weight constraints violated at mu=" +
                                     std::to_string(mu));
            break;
        }
    }

    // (b) Covariance positive-definiteness across 1e4 random-rank updates.
    {
        const std::vector<double> weights = recombination_weights(5);
        const CmaRates rates = CmaRates::defaults(3, weights);
        CmaState state;
        state.sigma = 0.3;
        state.refresh_decomposition();
        bool pd = true;
        for (int g = 0; g < 10000 && pd; ++g) {
            const std::vector<Eigen::Vector3d> samples = cma_sample(state, 10, rng);
            cma_update(state, samples, weights, rates);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(state.C);
            pd = eig.eigenvalues().minCoeff() >= CmaState::kEigenFloor * 0.5 &&
                 (state.C - state.C.transpose()).cwiseAbs().maxCoeff() <= 1e-12;
            state.mean = Eigen::Vector3d::Constant(0.5);
            if (state.sigma < 1e-6 || state.sigma > 1.0) {
                state.sigma = 0.3;
            }
        }
        check.require(pd, "covariance lost positive-definiteness");
        check.require(state.resets == 0, "covariance needed a reset");
    }

    // (b) Determinism per seed for every solver.
    {
        const Problem p = make_problem("trial08");
        const Objective oa(p.obs.noisy, p.observer);
        const Objective ob(p.obs.noisy, p.observer);

        CmaConfig cma;
        cma.feval_budget = 2000;
        RandomStream ra(9001), rb(9001);
        const SolverReport ca = run_cma(oa, cma, ra);
        const SolverReport cb = run_cma(ob, cma, rb);
        check.require(ca.best.r0_m == cb.best.r0_m && ca.best_cost == cb.best_cost,
                      "cma not deterministic per seed");

        GaConfig ga;
        ga.population_size = 10;
        ga.narrowing_generations = 5;
        ga.main_generations = 5;
        ga.inner_runs = 2;
        RandomStream ga_a(9002), ga_b(9002);
        const GaReport ra2 = run_tmaga(p.obs.noisy, p.observer, ga, ga_a);
        const GaReport rb2 = run_tmaga(p.obs.noisy, p.observer, ga, ga_b);
        check.require(ra2.best.x0_m == rb2.best.x0_m &&
                          ra2.best_cost == rb2.best_cost,
                      "ga not deterministic per seed");
    }
}

void criterion_9_ga_sanity(Checker& check) {
    // Desk-scale genetic-solver check: with the default configuration on the
    // noiseless preset, at least 8 of 10 seeded runs must land within 2
    // degrees of course and 1 m/s of speed. Thresholds are this project's.
    // Recovery is judged on the report's best (lowest-cost) solution; the
    // weighted-average aggregate is reported alongside but carries the
    // documented far/fast bias of stalled inner runs.
    const Problem p = make_problem("trial07");
    const GaConfig cfg;
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Objective objective(p.obs.noisy, p.observer);
        RandomStream rng(seed);
        const GaReport report = run_tmaga(objective, cfg, rng);
        const double course_err = std::abs(wrap180(report.best.course_deg - 90.0));
        const double speed_err = std::abs(report.best.speed_mps - 10.0);
        if (course_err <= 2.0 && speed_err <= 1.0) {
            ++good;
        } else {
            check.detail << "seed " << seed << ": course err " << fmt(course_err)
                         << ", speed err " << fmt(speed_err) << "; ";
        }
    }
    check.require(good >= 8, "only " + std::to_string(good) + "/10 runs in tolerance");
    check.detail << good << "/10 runs in tolerance";
}

} // namespace

int main() {
    std::printf("acceptance suite\n");

    criterion(1, "bit-width replication (38/38/32/28, 136 total)", criterion_1_bit_widths);
    criterion(2, "feval accounting (700000 per run, 14000000 for 20)",
              criterion_2_feval_accounting);
    criterion(3, "grid arithmetic (50400000 cells)", criterion_3_grid_arithmetic);
    criterion(4, "noiseless recovery, 20-run campaign within (10 m, 0.1 deg, 0.05 m/s)",
              criterion_4_noiseless_recovery);
    criterion(5, "feval ratio 700000 / 50000 = 14 from live counters",
              criterion_5_feval_ratio);
    criterion(6, "grid oracle dominance on trial07", criterion_6_grid_oracle_dominance);
    criterion(7, "non-metric cost defect", criterion_7_nonmetric_defect);
    criterion(8, "substituted property suite (noise trend + invariants)",
              criterion_8_substituted_properties);
    criterion(9, "ga sanity: 8/10 runs within 2 deg and 1 m/s",
              criterion_9_ga_sanity);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
