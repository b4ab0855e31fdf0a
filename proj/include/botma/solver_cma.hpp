#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "botma/objective.hpp"
#include "botma/rng.hpp"
#include "botma/solver_report.hpp"

namespace botma {

/**
 * Covariance-matrix-adaptation evolution strategy over the 3-parameter polar
 * candidate. The search runs in box-normalized coordinates [0,1]^3 so one
 * initial step size is meaningful across parameter scales; samples are drawn
 * from N(m, sigma^2 C), ranked by cost, recombined with log-decreasing
 * weights, and the step size and covariance adapt via cumulative paths with
 * the standard learning rates for the dimension.
 */

struct CmaConfig {
    int dimension = 3;
    int parent_size = 100;    // mu, ranked samples used for recombination
    int offspring_size = 100; // lambda, samples per generation
    long max_generations = 50000;
    std::uint64_t feval_budget = 50000;
    SearchBounds bounds; // 3 axes; empty selects default_polar_bounds()
    double sigma0 = 0.3; // in normalized coordinates
    // Early-stop tolerances; set to 0 to always run the full budget.
    double tol_cost = 1e-8;
    double tol_sigma = 1e-12; // on sigma * sqrt(max eigenvalue of C)
    // Learning-rate overrides; < 0 selects the standard value for n = 3.
    double c_sigma = -1.0;
    double d_sigma = -1.0;
    double c_c = -1.0;
    double c_1 = -1.0;
    double c_mu = -1.0;
};

void validate(const CmaConfig& cfg);

/// Ranked recombination weights w_i proportional to ln(mu+0.5) - ln(i),
/// normalized to sum 1. Positive and non-increasing for every mu >= 1.
std::vector<double> recombination_weights(int mu);

/// Strategy constants derived from the weights and dimension.
struct CmaRates {
    double mu_eff = 0.0;
    double c_sigma = 0.0;
    double d_sigma = 0.0;
    double c_c = 0.0;
    double c_1 = 0.0;
    double c_mu = 0.0;
    double chi_n = 0.0; // E||N(0,I)|| approximation

    static CmaRates defaults(int dimension, const std::vector<double>& weights);
};

/// Map a polar candidate into the unit box given the bounds (affine per axis).
Eigen::Vector3d normalize(const Candidate& c, const SearchBounds& bounds);
Candidate denormalize(const Eigen::Vector3d& v, const SearchBounds& bounds);

struct CmaState {
    Eigen::Vector3d mean = Eigen::Vector3d::Constant(0.5);
    double sigma = 0.3;
    Eigen::Matrix3d C = Eigen::Matrix3d::Identity();
    Eigen::Vector3d p_sigma = Eigen::Vector3d::Zero();
    Eigen::Vector3d p_c = Eigen::Vector3d::Zero();
    long generation = 0;
    int resets = 0; // times the covariance had to be reset to identity

    // Cached eigendecomposition of C (C = B * diag(D^2) * B^T), refreshed by
    // refresh_decomposition(); used for sampling and for C^(-1/2).
    Eigen::Matrix3d B = Eigen::Matrix3d::Identity();
    Eigen::Vector3d D = Eigen::Vector3d::Ones(); // sqrt of eigenvalues

    /// Re-factor C, flooring eigenvalues at kEigenFloor; resets C to the
    /// identity (and counts it) if the factorization degenerates.
    void refresh_decomposition();

    static constexpr double kEigenFloor = 1e-14;
};

/**
 * Draw lambda samples m + sigma * B D z (z standard normal) inside the unit
 * box; an out-of-box draw is resampled up to 10 times, then clamped.
 */
std::vector<Eigen::Vector3d> cma_sample(const CmaState& state, int lambda,
                                        RandomStream& rng);

/// Weighted mean of the best samples (sorted ascending by cost).
Eigen::Vector3d cma_recombine(const std::vector<Eigen::Vector3d>& sorted_samples,
                              const std::vector<double>& weights);

/**
 * One adaptation step from the ranked generation: updates the mean, both
 * evolution paths, the covariance (rank-one plus rank-mu), and the step size.
 * sorted_samples must be ordered ascending by cost; the first weights.size()
 * entries are used. Non-finite updates reset the state.
 */
void cma_update(CmaState& state, const std::vector<Eigen::Vector3d>& sorted_samples,
                const std::vector<double>& weights, const CmaRates& rates);

struct CmaTraceRow {
    long generation = 0;
    double sigma = 0.0;
    double best_cost = 0.0;
    Candidate mean;
};

/**
 * Full solver loop: sample, evaluate, rank, recombine, adapt, until the
 * evaluation budget (never exceeded), the generation cap, or a tolerance is
 * hit. Returns the best candidate ever evaluated.
 */
SolverReport run_cma(const Objective& objective, const CmaConfig& cfg,
                     RandomStream& rng, std::vector<CmaTraceRow>* trace = nullptr);

SolverReport run_cma(const BearingSeries& observed, const Track& observer,
                     const CmaConfig& cfg, RandomStream& rng,
                     std::vector<CmaTraceRow>* trace = nullptr);

} // namespace botma
