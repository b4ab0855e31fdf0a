#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "botma/harness.hpp"
#include "botma/solver_cma.hpp"
#include "botma/solver_ga.hpp"
#include "botma/solver_grid.hpp"

namespace botma {

// CSV emitters. Values are written with round-trip precision so files can be
// compared byte for byte across identical runs.

void write_track_csv(std::ostream& out, const Track& track);
void write_bearings_csv(std::ostream& out, const BearingSeries& clean,
                        const BearingSeries& noisy);
void write_run_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_summary_csv(std::ostream& out, const MonteCarloSummary& summary);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
void write_ga_inner_runs_csv(std::ostream& out, const GaReport& report,
                             std::uint64_t fevals_per_inner_run);
void write_cma_trace_csv(std::ostream& out, const std::vector<CmaTraceRow>& trace);

void write_file(const std::string& path, const std::string& contents);

namespace detail {
void write_cost_volume_row(std::ostream& out, const Candidate& c, double cost);
}

/// Full cost volume of a small grid (refused above 10^6 cells).
template <class F>
void write_cost_volume_csv(std::ostream& out, const F& objective,
                           const GridSpec& spec) {
    if (grid_cell_count(spec) >= 1000000) {
        throw std::invalid_argument("cost volume dump refused: grid has >= 1e6 cells");
    }
    out << "r,course,speed,cost\n";
    const std::int64_t nr = axis_count(spec.range);
    const std::int64_t nc = axis_count(spec.course);
    const std::int64_t ns = axis_count(spec.speed);
    for (std::int64_t i = 0; i < nr; ++i) {
        for (std::int64_t j = 0; j < nc; ++j) {
            for (std::int64_t k = 0; k < ns; ++k) {
                const Candidate c = grid_candidate(spec, i, j, k);
                detail::write_cost_volume_row(out, c, objective(c));
            }
        }
    }
}

} // namespace botma
