#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "botma/rng.hpp"

namespace botma {

// Angle convention used project-wide: degrees, measured clockwise from
// north (+Y), so bearing 0 = due north and 90 = due east. Positions are
// meters, x east / y north.

/// Wrap an angle in degrees to [0, 360).
double wrap360(double deg);

/// Wrap an angle in degrees to [-180, 180).
double wrap180(double deg);

struct Point {
    double x = 0.0; // meters east
    double y = 0.0; // meters north
};

double distance(const Point& a, const Point& b);

/// One constant-course, constant-speed segment of the observer's path.
struct Leg {
    double course_deg = 0.0;  // [0, 360)
    double speed_mps = 0.0;   // >= 0
    double duration_s = 0.0;  // > 0
};

/// Ground-truth target motion: initial range/bearing from the observer's
/// start plus a fixed course and speed.
struct TargetTruth {
    double r0_m = 0.0;      // initial range, > 0
    double b0_deg = 0.0;    // initial bearing from observer start
    double course_deg = 0.0;
    double speed_mps = 0.0;
};

/**
 * Full description of one engagement: the observer path, the target truth,
 * and the sampling/noise parameters. The single source of geometric truth
 * for simulation, solving, and reporting.
 */
struct Scenario {
    std::string name;
    Point observer_start;
    std::vector<Leg> observer_legs;
    TargetTruth truth;
    double dt_s = 10.0;
    int n_samples = 121;
    double noise_sigma_deg = 0.0;
    std::uint64_t seed = 0;
    // When set, the scenario must contain at least two legs with distinct
    // courses; a single-leg observer leaves infinitely many track candidates.
    bool observable = true;
};

/// Throws std::invalid_argument naming the violated rule.
void validate(const Scenario& s);

/// Time-indexed positions, uniformly spaced by dt.
struct Track {
    std::vector<double> times_s;
    std::vector<Point> positions;
};

/// Time-indexed bearings in degrees, every value in [0, 360).
struct BearingSeries {
    std::vector<double> times_s;
    std::vector<double> bearings_deg;
};

/// Position at range r0 along bearing b0 from obs0.
Point initial_target_position(const Point& obs0, double b0_deg, double r0_m);

/// Straight-line track: position[k] = start + k*speed*dt*(sin c, cos c),
/// times[k] = k*dt.
Track propagate_linear(const Point& start, double course_deg, double speed_mps,
                       double dt_s, int n);

/**
 * Observer track sampled at k*dt for k = 0..n_samples-1, applying the legs
 * in order. A leg boundary falling inside a sample interval splits the step
 * at the exact boundary time, so the track does not depend on dt.
 * Throws if the legs do not cover the observation window.
 */
Track observer_track(const Scenario& s);

/// True target track implied by the scenario.
Track target_track(const Scenario& s);

/// Bearing from one point to another, degrees in [0, 360).
/// Throws std::domain_error on coincident points.
double bearing_from_to(const Point& from, const Point& to);

struct BearingObservations {
    BearingSeries clean;
    BearingSeries noisy;
};

/**
 * Bearings from the observer to the true target at every sample time, plus
 * a noisy copy with iid Gaussian(0, noise_sigma^2) degrees added and wrapped
 * to [0, 360). noise_sigma = 0 reproduces the clean series bit-exactly.
 */
BearingObservations synthesize_bearings(const Scenario& s, RandomStream& rng);

} // namespace botma
