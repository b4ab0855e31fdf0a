#pragma once

#include <cstdint>

#include "botma/objective.hpp"

namespace botma {

/// What every solver hands back: the best hypothesis found, its cost, and
/// the number of objective evaluations it spent getting there.
struct SolverReport {
    Candidate best;
    double best_cost = 0.0;
    std::uint64_t fevals = 0;
    long iterations = 0; // generations for the evolutionary solvers, cells for grid
};

} // namespace botma
