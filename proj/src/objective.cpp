#include "botma/objective.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace botma {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
} // namespace

SearchBounds default_polar_bounds() {
    return SearchBounds{{{0.0, 28000.0}, {0.0, 360.0}, {0.0, 25.0}}};
}

SearchBounds default_xy_bounds() {
    return SearchBounds{{{0.0, 20000.0}, {0.0, 20000.0}, {0.0, 360.0}, {0.0, 25.0}}};
}

void validate(const SearchBounds& b) {
    if (b.axes.empty()) {
        throw std::invalid_argument("bounds: no axes");
    }
    for (const Interval& iv : b.axes) {
        if (!(iv.min < iv.max)) {
            throw std::invalid_argument("bounds: min must be < max on every axis");
        }
    }
}

namespace {
bool in_axis(const Interval& iv, double v) { return v >= iv.min && v <= iv.max; }
} // namespace

bool contains(const SearchBounds& b, const Candidate& c) {
    return b.size() == 3 && in_axis(b[0], c.r0_m) && in_axis(b[1], c.course_deg) &&
           in_axis(b[2], c.speed_mps);
}

bool contains(const SearchBounds& b, const CandidateXY& c) {
    return b.size() == 4 && in_axis(b[0], c.x0_m) && in_axis(b[1], c.y0_m) &&
           in_axis(b[2], c.course_deg) && in_axis(b[3], c.speed_mps);
}

double angle_residual(double a_deg, double b_deg) {
    return wrap180(a_deg - b_deg);
}

CostValue cost_euclidean(const BearingSeries& predicted,
                         const BearingSeries& observed) {
    if (predicted.bearings_deg.size() != observed.bearings_deg.size() ||
        predicted.bearings_deg.empty()) {
        throw std::invalid_argument("cost_euclidean: series length mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < predicted.bearings_deg.size(); ++i) {
        const double r =
            angle_residual(predicted.bearings_deg[i], observed.bearings_deg[i]);
        acc += r * r;
    }
    return CostValue{std::sqrt(acc), 0};
}

CostValue cost_total_deviation_nonmetric(const BearingSeries& predicted,
                                         const BearingSeries& observed) {
    if (predicted.bearings_deg.size() != observed.bearings_deg.size()) {
        throw std::invalid_argument("cost_total_deviation: series length mismatch");
    }
    CostValue out;
    for (std::size_t i = 0; i < predicted.bearings_deg.size(); ++i) {
        const double m = predicted.bearings_deg[i];
        const double g = observed.bearings_deg[i];
        const double radicand = m * m - g * g;
        if (radicand < 0.0) {
            ++out.undefined_count;
        } else {
            out.value += std::sqrt(radicand);
        }
    }
    return out;
}

Track candidate_track(const Candidate& c, double b0_deg, const Track& observer) {
    if (observer.positions.empty()) {
        throw std::invalid_argument("candidate_track: empty observer track");
    }
    const Point start =
        initial_target_position(observer.positions[0], b0_deg, c.r0_m);
    return candidate_track_xy(
        CandidateXY{start.x, start.y, c.course_deg, c.speed_mps},
        observer.times_s);
}

Track candidate_track_xy(const CandidateXY& c, const std::vector<double>& times_s) {
    const double crs = c.course_deg * kDegToRad;
    const double vx = c.speed_mps * std::sin(crs);
    const double vy = c.speed_mps * std::cos(crs);
    Track track;
    track.times_s = times_s;
    track.positions.resize(times_s.size());
    for (std::size_t k = 0; k < times_s.size(); ++k) {
        track.positions[k] =
            Point{c.x0_m + vx * times_s[k], c.y0_m + vy * times_s[k]};
    }
    return track;
}

BearingSeries predicted_bearings(const Track& target, const Track& observer) {
    if (target.positions.size() != observer.positions.size()) {
        throw std::invalid_argument("predicted_bearings: track length mismatch");
    }
    BearingSeries out;
    out.times_s = observer.times_s;
    out.bearings_deg.resize(observer.positions.size());
    for (std::size_t k = 0; k < observer.positions.size(); ++k) {
        out.bearings_deg[k] =
            bearing_from_to(observer.positions[k], target.positions[k]);
    }
    return out;
}

Objective::Objective(BearingSeries observed, Track observer)
    : observed_(std::move(observed)),
      observer_(std::move(observer)),
      evals_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
    if (observed_.bearings_deg.size() != observer_.positions.size() ||
        observed_.bearings_deg.empty()) {
        throw std::invalid_argument("objective: series/track misaligned");
    }
    anchor_b0_deg_ = observed_.bearings_deg[0];
}

double Objective::score(double start_x, double start_y, double course_deg,
                        double speed_mps) const {
    const double crs = course_deg * kDegToRad;
    const double vx = speed_mps * std::sin(crs);
    const double vy = speed_mps * std::cos(crs);

    double acc = 0.0;
    const std::size_t n = observed_.bearings_deg.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double t = observer_.times_s[k];
        const double dx = start_x + vx * t - observer_.positions[k].x;
        const double dy = start_y + vy * t - observer_.positions[k].y;
        if (dx == 0.0 && dy == 0.0) {
            return kInfeasiblePenaltyDeg;
        }
        const double bearing = std::atan2(dx, dy) * kRadToDeg;
        const double r = wrap180(bearing - observed_.bearings_deg[k]);
        acc += r * r;
    }
    return std::sqrt(acc);
}

double Objective::operator()(const Candidate& c) const {
    evals_->fetch_add(1, std::memory_order_relaxed);
    if (!(c.r0_m > 0.0)) {
        return kInfeasiblePenaltyDeg;
    }
    const double b = anchor_b0_deg_ * kDegToRad;
    const double sx = observer_.positions[0].x + c.r0_m * std::sin(b);
    const double sy = observer_.positions[0].y + c.r0_m * std::cos(b);
    return score(sx, sy, c.course_deg, c.speed_mps);
}

double Objective::operator()(const CandidateXY& c) const {
    evals_->fetch_add(1, std::memory_order_relaxed);
    return score(c.x0_m, c.y0_m, c.course_deg, c.speed_mps);
}

} // namespace botma
