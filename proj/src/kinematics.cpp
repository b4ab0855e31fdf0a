#include "botma/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace botma {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("non-finite ") + what);
    }
}

} // namespace

double wrap360(double deg) {
    return deg - 360.0 * std::floor(deg / 360.0);
}

double wrap180(double deg) {
    return deg - 360.0 * std::floor((deg + 180.0) / 360.0);
}

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void validate(const Scenario& s) {
    require_finite(s.observer_start.x, "observer_start.x");
    require_finite(s.observer_start.y, "observer_start.y");
    if (s.n_samples < 2) {
        throw std::invalid_argument("scenario: n_samples must be >= 2");
    }
    if (!(s.dt_s > 0.0)) {
        throw std::invalid_argument("scenario: dt must be > 0");
    }
    if (!(s.noise_sigma_deg >= 0.0)) {
        throw std::invalid_argument("scenario: noise_sigma must be >= 0");
    }
    if (!(s.truth.r0_m > 0.0)) {
        throw std::invalid_argument("scenario: truth.r0 must be > 0");
    }
    if (!(s.truth.speed_mps >= 0.0)) {
        throw std::invalid_argument("scenario: truth.speed must be >= 0");
    }
    if (s.observer_legs.empty()) {
        throw std::invalid_argument("scenario: at least one observer leg required");
    }
    double total = 0.0;
    for (const Leg& leg : s.observer_legs) {
        if (!(leg.duration_s > 0.0)) {
            throw std::invalid_argument("scenario: leg duration must be > 0");
        }
        if (!(leg.speed_mps >= 0.0)) {
            throw std::invalid_argument("scenario: leg speed must be >= 0");
        }
        total += leg.duration_s;
    }
    const double window = (s.n_samples - 1) * s.dt_s;
    if (total + 1e-9 < window) {
        throw std::invalid_argument(
            "scenario: total leg duration shorter than the observation window");
    }
    if (s.observable) {
        bool distinct = false;
        for (std::size_t i = 1; i < s.observer_legs.size(); ++i) {
            if (wrap360(s.observer_legs[i].course_deg) !=
                wrap360(s.observer_legs[0].course_deg)) {
                distinct = true;
                break;
            }
        }
        if (!distinct) {
            throw std::invalid_argument(
                "scenario: flagged observable but the observer never makes a leg "
                "(need >= 2 legs with distinct courses)");
        }
    }
}

Point initial_target_position(const Point& obs0, double b0_deg, double r0_m) {
    require_finite(obs0.x, "obs0.x");
    require_finite(obs0.y, "obs0.y");
    require_finite(b0_deg, "b0");
    require_finite(r0_m, "r0");
    if (!(r0_m > 0.0)) {
        throw std::invalid_argument("initial_target_position: r0 must be > 0");
    }
    const double b = b0_deg * kDegToRad;
    return Point{obs0.x + r0_m * std::sin(b), obs0.y + r0_m * std::cos(b)};
}

Track propagate_linear(const Point& start, double course_deg, double speed_mps,
                       double dt_s, int n) {
    if (n < 1) {
        throw std::invalid_argument("propagate_linear: n must be >= 1");
    }
    if (!(dt_s > 0.0)) {
        throw std::invalid_argument("propagate_linear: dt must be > 0");
    }
    const double c = course_deg * kDegToRad;
    const double vx = speed_mps * std::sin(c);
    const double vy = speed_mps * std::cos(c);
    Track track;
    track.times_s.resize(static_cast<std::size_t>(n));
    track.positions.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = k * dt_s;
        track.times_s[static_cast<std::size_t>(k)] = t;
        track.positions[static_cast<std::size_t>(k)] =
            Point{start.x + vx * t, start.y + vy * t};
    }
    return track;
}

Track observer_track(const Scenario& s) {
    validate(s);

    Track track;
    track.times_s.resize(static_cast<std::size_t>(s.n_samples));
    track.positions.resize(static_cast<std::size_t>(s.n_samples));

    Point pos = s.observer_start;
    std::size_t leg_idx = 0;
    double leg_remaining = s.observer_legs[0].duration_s;

    track.times_s[0] = 0.0;
    track.positions[0] = pos;

    constexpr double kTimeEps = 1e-9; // seconds; absorbs split-step rounding

    for (int k = 1; k < s.n_samples; ++k) {
        double step = s.dt_s;
        // Advance through legs, splitting the step at leg boundaries.
        while (step > kTimeEps) {
            const Leg& leg = s.observer_legs[leg_idx];
            const double chunk = std::min(step, leg_remaining);
            const double c = leg.course_deg * kDegToRad;
            pos.x += leg.speed_mps * std::sin(c) * chunk;
            pos.y += leg.speed_mps * std::cos(c) * chunk;
            step -= chunk;
            leg_remaining -= chunk;
            if (leg_remaining <= kTimeEps) {
                if (leg_idx + 1 < s.observer_legs.size()) {
                    ++leg_idx;
                    leg_remaining = s.observer_legs[leg_idx].duration_s;
                } else if (step > kTimeEps) {
                    throw std::invalid_argument(
                        "scenario: observer legs exhausted before the observation window");
                } else {
                    break;
                }
            }
        }
        track.times_s[static_cast<std::size_t>(k)] = k * s.dt_s;
        track.positions[static_cast<std::size_t>(k)] = pos;
    }
    return track;
}

Track target_track(const Scenario& s) {
    const Point start =
        initial_target_position(s.observer_start, s.truth.b0_deg, s.truth.r0_m);
    return propagate_linear(start, s.truth.course_deg, s.truth.speed_mps, s.dt_s,
                            s.n_samples);
}

double bearing_from_to(const Point& from, const Point& to) {
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    if (dx == 0.0 && dy == 0.0) {
        throw std::domain_error("bearing_from_to: coincident points");
    }
    return wrap360(std::atan2(dx, dy) * kRadToDeg);
}

BearingObservations synthesize_bearings(const Scenario& s, RandomStream& rng) {
    const Track obs = observer_track(s);
    const Track tgt = target_track(s);

    BearingObservations out;
    out.clean.times_s = obs.times_s;
    out.noisy.times_s = obs.times_s;
    out.clean.bearings_deg.resize(obs.positions.size());
    out.noisy.bearings_deg.resize(obs.positions.size());

    for (std::size_t k = 0; k < obs.positions.size(); ++k) {
        const double clean = bearing_from_to(obs.positions[k], tgt.positions[k]);
        out.clean.bearings_deg[k] = clean;
        out.noisy.bearings_deg[k] =
            wrap360(clean + rng.normal(0.0, s.noise_sigma_deg));
    }
    return out;
}

} // namespace botma
