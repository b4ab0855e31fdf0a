#include "botma/solver_cma.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace botma {

void validate(const CmaConfig& cfg) {
    if (cfg.dimension != 3) {
        throw std::invalid_argument("cma config: dimension must be 3");
    }
    if (cfg.parent_size < 1 || cfg.offspring_size < 1 ||
        cfg.parent_size > cfg.offspring_size) {
        throw std::invalid_argument("cma config: need 1 <= parent_size <= offspring_size");
    }
    if (cfg.feval_budget == 0 || cfg.max_generations < 1) {
        throw std::invalid_argument("cma config: budget and generation cap must be positive");
    }
    if (!(cfg.sigma0 > 0.0)) {
        throw std::invalid_argument("cma config: sigma0 must be > 0");
    }
    if (!cfg.bounds.axes.empty()) {
        if (cfg.bounds.size() != 3) {
            throw std::invalid_argument("cma config: bounds must have 3 axes");
        }
        validate(cfg.bounds);
    }
}

std::vector<double> recombination_weights(int mu) {
    if (mu < 1) {
        throw std::invalid_argument("recombination_weights: mu must be >= 1");
    }
    std::vector<double> w(static_cast<std::size_t>(mu));
    const double base = std::log(static_cast<double>(mu) + 0.5);
    double sum = 0.0;
    for (int i = 0; i < mu; ++i) {
        w[static_cast<std::size_t>(i)] = base - std::log(static_cast<double>(i + 1));
        sum += w[static_cast<std::size_t>(i)];
    }
    for (double& v : w) {
        v /= sum;
    }
    return w;
}

CmaRates CmaRates::defaults(int dimension, const std::vector<double>& weights) {
    const double n = static_cast<double>(dimension);
    double sum_sq = 0.0;
    for (double w : weights) {
        sum_sq += w * w;
    }
    CmaRates r;
    r.mu_eff = 1.0 / sum_sq;
    r.c_sigma = (r.mu_eff + 2.0) / (n + r.mu_eff + 5.0);
    r.d_sigma = 1.0 +
                2.0 * std::max(0.0, std::sqrt((r.mu_eff - 1.0) / (n + 1.0)) - 1.0) +
                r.c_sigma;
    r.c_c = (4.0 + r.mu_eff / n) / (n + 4.0 + 2.0 * r.mu_eff / n);
    r.c_1 = 2.0 / ((n + 1.3) * (n + 1.3) + r.mu_eff);
    r.c_mu = std::min(1.0 - r.c_1, 2.0 * (r.mu_eff - 2.0 + 1.0 / r.mu_eff) /
                                       ((n + 2.0) * (n + 2.0) + r.mu_eff));
    r.chi_n = std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));
    return r;
}

Eigen::Vector3d normalize(const Candidate& c, const SearchBounds& bounds) {
    return Eigen::Vector3d((c.r0_m - bounds[0].min) / bounds[0].width(),
                           (c.course_deg - bounds[1].min) / bounds[1].width(),
                           (c.speed_mps - bounds[2].min) / bounds[2].width());
}

Candidate denormalize(const Eigen::Vector3d& v, const SearchBounds& bounds) {
    return Candidate{bounds[0].min + v[0] * bounds[0].width(),
                     bounds[1].min + v[1] * bounds[1].width(),
                     bounds[2].min + v[2] * bounds[2].width()};
}

void CmaState::refresh_decomposition() {
    Eigen::Matrix3d sym = 0.5 * (C + C.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(sym);
    bool ok = eig.info() == Eigen::Success;
    Eigen::Vector3d vals = ok ? eig.eigenvalues() : Eigen::Vector3d::Ones();
    if (ok) {
        for (int i = 0; i < 3; ++i) {
            if (!std::isfinite(vals[i])) {
                ok = false;
            }
        }
    }
    if (!ok) {
        std::cerr << "cma: covariance factorization failed, resetting C to identity\n";
        C = Eigen::Matrix3d::Identity();
        B = Eigen::Matrix3d::Identity();
        D = Eigen::Vector3d::Ones();
        ++resets;
        return;
    }
    bool floored = false;
    for (int i = 0; i < 3; ++i) {
        if (vals[i] < kEigenFloor) {
            vals[i] = kEigenFloor;
            floored = true;
        }
    }
    B = eig.eigenvectors();
    D = vals.cwiseSqrt();
    if (floored) {
        C = B * vals.asDiagonal() * B.transpose();
    } else {
        C = sym;
    }
}

std::vector<Eigen::Vector3d> cma_sample(const CmaState& state, int lambda,
                                        RandomStream& rng) {
    if (lambda < 1) {
        throw std::invalid_argument("cma_sample: lambda must be >= 1");
    }
    constexpr int kMaxResamples = 10;
    std::vector<Eigen::Vector3d> samples;
    samples.reserve(static_cast<std::size_t>(lambda));
    const Eigen::Matrix3d shape = state.B * state.D.asDiagonal();

    auto in_box = [](const Eigen::Vector3d& v) {
        return v[0] >= 0.0 && v[0] <= 1.0 && v[1] >= 0.0 && v[1] <= 1.0 &&
               v[2] >= 0.0 && v[2] <= 1.0;
    };

    for (int i = 0; i < lambda; ++i) {
        Eigen::Vector3d x;
        for (int attempt = 0;; ++attempt) {
            const Eigen::Vector3d z(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0),
                                    rng.normal(0.0, 1.0));
            x = state.mean + state.sigma * (shape * z);
            if (in_box(x) || attempt >= kMaxResamples) {
                break;
            }
        }
        for (int d = 0; d < 3; ++d) {
            x[d] = std::clamp(x[d], 0.0, 1.0);
        }
        samples.push_back(x);
    }
    return samples;
}

Eigen::Vector3d cma_recombine(const std::vector<Eigen::Vector3d>& sorted_samples,
                              const std::vector<double>& weights) {
    if (weights.empty() || weights.size() > sorted_samples.size()) {
        throw std::invalid_argument("cma_recombine: weight/sample count mismatch");
    }
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        mean += weights[i] * sorted_samples[i];
    }
    return mean;
}

void cma_update(CmaState& state, const std::vector<Eigen::Vector3d>& sorted_samples,
                const std::vector<double>& weights, const CmaRates& rates) {
    const std::size_t mu = weights.size();
    if (mu == 0 || mu > sorted_samples.size()) {
        throw std::invalid_argument("cma_update: weight/sample count mismatch");
    }

    const Eigen::Vector3d old_mean = state.mean;
    const double sigma = state.sigma;

    // Selected steps in sampling coordinates.
    std::vector<Eigen::Vector3d> steps(mu);
    Eigen::Vector3d y_w = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < mu; ++i) {
        steps[i] = (sorted_samples[i] - old_mean) / sigma;
        y_w += weights[i] * steps[i];
    }

    state.mean = old_mean + sigma * y_w;

    // C^(-1/2) from the decomposition that generated the samples.
    const Eigen::Matrix3d c_inv_sqrt =
        state.B * state.D.cwiseInverse().asDiagonal() * state.B.transpose();

    state.p_sigma = (1.0 - rates.c_sigma) * state.p_sigma +
                    std::sqrt(rates.c_sigma * (2.0 - rates.c_sigma) * rates.mu_eff) *
                        (c_inv_sqrt * y_w);

    const double ps_norm = state.p_sigma.norm();
    const double decay =
        1.0 - std::pow(1.0 - rates.c_sigma,
                       2.0 * static_cast<double>(state.generation + 1));
    const bool h_sigma =
        ps_norm / std::sqrt(decay) < (1.4 + 2.0 / 4.0) * rates.chi_n;

    state.p_c = (1.0 - rates.c_c) * state.p_c;
    if (h_sigma) {
        state.p_c += std::sqrt(rates.c_c * (2.0 - rates.c_c) * rates.mu_eff) * y_w;
    }

    Eigen::Matrix3d rank_mu = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < mu; ++i) {
        rank_mu += weights[i] * (steps[i] * steps[i].transpose());
    }
    const double hole = h_sigma ? 0.0 : rates.c_c * (2.0 - rates.c_c);
    state.C = (1.0 - rates.c_1 - rates.c_mu) * state.C +
              rates.c_1 * (state.p_c * state.p_c.transpose() + hole * state.C) +
              rates.c_mu * rank_mu;

    state.sigma =
        sigma * std::exp((rates.c_sigma / rates.d_sigma) *
                         (ps_norm / rates.chi_n - 1.0));

    ++state.generation;

    if (!state.mean.allFinite() || !std::isfinite(state.sigma) ||
        !state.C.allFinite()) {
        std::cerr << "cma: non-finite update, resetting state\n";
        state.mean = old_mean;
        state.sigma = 0.3;
        state.C = Eigen::Matrix3d::Identity();
        state.p_sigma.setZero();
        state.p_c.setZero();
        ++state.resets;
    }
    state.refresh_decomposition();
}

SolverReport run_cma(const Objective& objective, const CmaConfig& cfg,
                     RandomStream& rng, std::vector<CmaTraceRow>* trace) {
    validate(cfg);
    const SearchBounds bounds =
        cfg.bounds.axes.empty() ? default_polar_bounds() : cfg.bounds;
    const std::vector<double> weights = recombination_weights(cfg.parent_size);

    CmaRates rates = CmaRates::defaults(cfg.dimension, weights);
    if (cfg.c_sigma > 0.0) rates.c_sigma = cfg.c_sigma;
    if (cfg.d_sigma > 0.0) rates.d_sigma = cfg.d_sigma;
    if (cfg.c_c > 0.0) rates.c_c = cfg.c_c;
    if (cfg.c_1 >= 0.0) rates.c_1 = cfg.c_1;
    if (cfg.c_mu >= 0.0) rates.c_mu = cfg.c_mu;

    CmaState state;
    state.sigma = cfg.sigma0;
    state.refresh_decomposition();

    SolverReport report;
    report.best_cost = std::numeric_limits<double>::infinity();

    const std::uint64_t evals_before = objective.evaluations();
    const int lambda = cfg.offspring_size;
    std::uint64_t used = 0;

    std::vector<std::size_t> order(static_cast<std::size_t>(lambda));
    std::vector<double> costs(static_cast<std::size_t>(lambda));
    std::vector<Eigen::Vector3d> sorted(static_cast<std::size_t>(lambda));

    while (used + static_cast<std::uint64_t>(lambda) <= cfg.feval_budget &&
           state.generation < cfg.max_generations) {
        const std::vector<Eigen::Vector3d> samples = cma_sample(state, lambda, rng);
        for (int i = 0; i < lambda; ++i) {
            const Candidate c = denormalize(samples[static_cast<std::size_t>(i)], bounds);
            costs[static_cast<std::size_t>(i)] = objective(c);
        }
        used += static_cast<std::uint64_t>(lambda);

        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (costs[a] != costs[b]) return costs[a] < costs[b];
            return a < b;
        });
        for (std::size_t i = 0; i < order.size(); ++i) {
            sorted[i] = samples[order[i]];
        }
        if (costs[order[0]] < report.best_cost) {
            report.best_cost = costs[order[0]];
            report.best = denormalize(sorted[0], bounds);
            report.best.course_deg = wrap360(report.best.course_deg);
        }

        cma_update(state, sorted, weights, rates);
        ++report.iterations;

        if (trace) {
            trace->push_back(CmaTraceRow{state.generation, state.sigma,
                                         report.best_cost,
                                         denormalize(state.mean, bounds)});
        }

        if (cfg.tol_cost > 0.0 && report.best_cost < cfg.tol_cost) {
            break;
        }
        if (cfg.tol_sigma > 0.0 && state.sigma * state.D.maxCoeff() < cfg.tol_sigma) {
            break;
        }
    }

    // Budget smaller than one full generation: spend what is left on a single
    // ranked draw so the report is still meaningful.
    if (used == 0 && cfg.feval_budget < static_cast<std::uint64_t>(lambda)) {
        const std::vector<Eigen::Vector3d> samples =
            cma_sample(state, static_cast<int>(cfg.feval_budget), rng);
        for (const Eigen::Vector3d& s : samples) {
            const Candidate c = denormalize(s, bounds);
            const double cost = objective(c);
            if (cost < report.best_cost) {
                report.best_cost = cost;
                report.best = c;
                report.best.course_deg = wrap360(report.best.course_deg);
            }
        }
    }

    report.fevals = objective.evaluations() - evals_before;
    return report;
}

SolverReport run_cma(const BearingSeries& observed, const Track& observer,
                     const CmaConfig& cfg, RandomStream& rng,
                     std::vector<CmaTraceRow>* trace) {
    const Objective objective(observed, observer);
    return run_cma(objective, cfg, rng, trace);
}

} // namespace botma
