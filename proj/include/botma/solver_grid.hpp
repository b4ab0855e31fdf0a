#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "botma/objective.hpp"
#include "botma/solver_report.hpp"

namespace botma {

/**
 * Exhaustive search over the (range, course, speed) box — the baseline
 * oracle every other solver is measured against.
 */

struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;
};

struct GridSpec {
    GridAxis range;  // meters
    GridAxis course; // degrees
    GridAxis speed;  // meters/second
};

/// The reference grid: [0, 28000) m by 100, [0, 360) deg by 0.5,
/// [0, 25) m/s by 0.1 — 280 * 720 * 250 = 50400000 cells.
inline GridSpec reference_grid() {
    return GridSpec{{0.0, 28000.0, 100.0}, {0.0, 360.0, 0.5}, {0.0, 25.0, 0.1}};
}

/// Desk-scale version of the same box: 28 * 36 * 25 cells.
inline GridSpec coarse_grid() {
    return GridSpec{{0.0, 28000.0, 1000.0}, {0.0, 360.0, 10.0}, {0.0, 25.0, 1.0}};
}

/**
 * Cells per axis under the half-open convention: values min + k*step for
 * k = 0, 1, .. while the value stays below max, so an exact division of the
 * span excludes max itself. Division is snapped to the nearest integer when
 * within 1e-9 relative, which keeps decimal steps like 0.1 exact.
 */
inline std::int64_t axis_count(const GridAxis& axis) {
    if (!(axis.step > 0.0) || !(axis.max > axis.min)) {
        throw std::invalid_argument("grid axis: need step > 0 and max > min");
    }
    const double q = (axis.max - axis.min) / axis.step;
    const double nearest = std::round(q);
    if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, std::abs(q))) {
        return static_cast<std::int64_t>(nearest);
    }
    return static_cast<std::int64_t>(std::floor(q)) + 1;
}

/// Total cell count; throws on multiplication overflow.
inline std::int64_t grid_cell_count(const GridSpec& spec) {
    const std::int64_t nr = axis_count(spec.range);
    const std::int64_t nc = axis_count(spec.course);
    const std::int64_t ns = axis_count(spec.speed);
    constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
    const __int128 rc = static_cast<__int128>(nr) * nc;
    if (rc > kMax || rc * ns > kMax) {
        throw std::overflow_error("grid: cell count overflows");
    }
    return static_cast<std::int64_t>(rc * ns);
}

/// Candidate at cell (i, j, k) of the grid (range-major ordering).
inline Candidate grid_candidate(const GridSpec& spec, std::int64_t i,
                                std::int64_t j, std::int64_t k) {
    return Candidate{spec.range.min + static_cast<double>(i) * spec.range.step,
                     spec.course.min + static_cast<double>(j) * spec.course.step,
                     spec.speed.min + static_cast<double>(k) * spec.speed.step};
}

namespace detail {

struct GridMin {
    double cost = std::numeric_limits<double>::infinity();
    std::int64_t index = std::numeric_limits<std::int64_t>::max();

    void consider(double c, std::int64_t idx) {
        if (c < cost || (c == cost && idx < index)) {
            cost = c;
            index = idx;
        }
    }
    void merge(const GridMin& other) { consider(other.cost, other.index); }
};

template <class F>
GridMin scan_range_slices(const F& objective, const GridSpec& spec,
                          std::int64_t i_begin, std::int64_t i_end,
                          std::int64_t nc, std::int64_t ns) {
    GridMin best;
    for (std::int64_t i = i_begin; i < i_end; ++i) {
        for (std::int64_t j = 0; j < nc; ++j) {
            for (std::int64_t k = 0; k < ns; ++k) {
                const double cost = objective(grid_candidate(spec, i, j, k));
                best.consider(cost, (i * nc + j) * ns + k);
            }
        }
    }
    return best;
}

} // namespace detail

/**
 * Evaluate every cell in range-major order and return the minimum-cost
 * candidate; ties break toward the lowest linear index, so the argmin is
 * independent of how the work is partitioned. jobs > 1 splits range slices
 * across threads.
 */
template <class F>
SolverReport grid_search(const F& objective, const GridSpec& spec, int jobs = 1) {
    const std::int64_t nr = axis_count(spec.range);
    const std::int64_t nc = axis_count(spec.course);
    const std::int64_t ns = axis_count(spec.speed);
    const std::int64_t total = grid_cell_count(spec);

    detail::GridMin best;
    if (jobs <= 1 || nr == 1) {
        best = detail::scan_range_slices(objective, spec, 0, nr, nc, ns);
    } else {
        const int workers = static_cast<int>(
            std::min<std::int64_t>(jobs, nr));
        std::vector<detail::GridMin> partial(static_cast<std::size_t>(workers));
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            const std::int64_t begin = nr * w / workers;
            const std::int64_t end = nr * (w + 1) / workers;
            threads.emplace_back([&, w, begin, end]() {
                partial[static_cast<std::size_t>(w)] =
                    detail::scan_range_slices(objective, spec, begin, end, nc, ns);
            });
        }
        for (std::thread& t : threads) {
            t.join();
        }
        for (const detail::GridMin& p : partial) {
            best.merge(p);
        }
    }

    SolverReport report;
    const std::int64_t i = best.index / (nc * ns);
    const std::int64_t j = (best.index / ns) % nc;
    const std::int64_t k = best.index % ns;
    report.best = grid_candidate(spec, i, j, k);
    report.best_cost = best.cost;
    report.fevals = static_cast<std::uint64_t>(total);
    report.iterations = total;
    return report;
}

} // namespace botma
