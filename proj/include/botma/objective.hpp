#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "botma/kinematics.hpp"

namespace botma {

/// Target-motion hypothesis in polar form: initial range (from the observer
/// start, along the first observed bearing) plus course and speed.
struct Candidate {
    double r0_m = 0.0;
    double course_deg = 0.0;
    double speed_mps = 0.0;
};

/// Target-motion hypothesis with an explicit initial position. Used by the
/// genetic solver, whose chromosome carries x0/y0 segments.
struct CandidateXY {
    double x0_m = 0.0;
    double y0_m = 0.0;
    double course_deg = 0.0;
    double speed_mps = 0.0;
};

struct Interval {
    double min = 0.0;
    double max = 0.0;
    double width() const { return max - min; }
};

/// Per-parameter search box. Three axes (r0, course, speed) for polar
/// candidates, four (x0, y0, course, speed) for the XY form.
struct SearchBounds {
    std::vector<Interval> axes;

    std::size_t size() const { return axes.size(); }
    const Interval& operator[](std::size_t i) const { return axes[i]; }
    Interval& operator[](std::size_t i) { return axes[i]; }
};

/// Default polar box: range [0, 28000] m, course [0, 360] deg, speed [0, 25] m/s.
SearchBounds default_polar_bounds();

/// Default XY box: x0/y0 [0, 20000] m, course [0, 360] deg, speed [0, 25] m/s.
SearchBounds default_xy_bounds();

/// Throws std::invalid_argument unless min < max on every axis.
void validate(const SearchBounds& b);

bool contains(const SearchBounds& b, const Candidate& c);
bool contains(const SearchBounds& b, const CandidateXY& c);

/**
 * Result of a cost evaluation. For the root-sum-square cost the value is a
 * nonnegative number of degrees and undefined_count stays 0. For the
 * non-metric total-deviation cost, terms with a negative radicand contribute
 * nothing to the value and are tallied in undefined_count instead.
 */
struct CostValue {
    double value = 0.0;
    int undefined_count = 0;
};

/// Difference a - b wrapped to [-180, 180).
double angle_residual(double a_deg, double b_deg);

/**
 * Root-sum-square of the wrapped per-sample residuals:
 * sqrt(sum_i wrap180(pred_i - obs_i)^2). A proper metric on bearing series
 * (modulo 360). Throws on length mismatch.
 */
CostValue cost_euclidean(const BearingSeries& predicted,
                         const BearingSeries& observed);

/**
 * sum_i sqrt(pred_i^2 - obs_i^2), evaluated literally on the raw bearing
 * values. Whenever pred_i^2 < obs_i^2 the radicand is negative and the term
 * is undefined; such terms contribute 0 and increment undefined_count. Kept
 * for the cost-function comparison experiments; not a metric.
 */
CostValue cost_total_deviation_nonmetric(const BearingSeries& predicted,
                                         const BearingSeries& observed);

/**
 * Track implied by a polar candidate: the start point lies at range c.r0
 * from the first observer position along the anchor bearing b0 (the first
 * observed bearing), then runs straight at (c.course, c.speed) over the
 * observer's sample times. Anchoring to the observed bearing is what makes
 * the search 3-dimensional.
 */
Track candidate_track(const Candidate& c, double b0_deg, const Track& observer);

/// Track implied by an XY candidate: starts at (x0, y0) directly.
Track candidate_track_xy(const CandidateXY& c, const std::vector<double>& times_s);

/// Bearings from the observer to a hypothesized target track, sample by sample.
BearingSeries predicted_bearings(const Track& target, const Track& observer);

/**
 * Black-box cost function binding one observed bearing series to one observer
 * track. Evaluating a candidate predicts its bearings and scores them with
 * the root-sum-square cost; every call bumps a shared evaluation counter,
 * the cross-solver cost currency.
 *
 * A geometrically infeasible hypothesis (track through an observer sample
 * position) scores the fixed penalty kInfeasiblePenaltyDeg instead of
 * throwing, so solver loops stay total-ordered.
 *
 * Copies share the counter; the counter is atomic, so concurrent workers may
 * either share one instance or sum per-worker instances.
 */
class Objective {
public:
    static constexpr double kInfeasiblePenaltyDeg = 1e9;

    Objective(BearingSeries observed, Track observer);

    /// Cost of a polar candidate (anchored at the first observed bearing).
    double operator()(const Candidate& c) const;

    /// Cost of an XY candidate.
    double operator()(const CandidateXY& c) const;

    std::uint64_t evaluations() const { return evals_->load(); }
    void reset_evaluations() { evals_->store(0); }

    double anchor_bearing_deg() const { return anchor_b0_deg_; }
    const Track& observer() const { return observer_; }
    const BearingSeries& observed() const { return observed_; }

private:
    double score(double start_x, double start_y, double course_deg,
                 double speed_mps) const;

    BearingSeries observed_;
    Track observer_;
    double anchor_b0_deg_ = 0.0;
    std::shared_ptr<std::atomic<std::uint64_t>> evals_;
};

} // namespace botma
