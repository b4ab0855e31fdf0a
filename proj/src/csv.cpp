#include "botma/csv.hpp"

#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace botma {

namespace {

std::ostream& full(std::ostream& out) {
    return out << std::setprecision(17);
}

void stat_row(std::ostream& out, const char* name, const MonteCarloSummary& s,
              double ParamStats::* field) {
    out << name << ',' << s.range.*field << ',' << s.course.*field << ','
        << s.speed.*field << '\n';
}

} // namespace

void write_track_csv(std::ostream& out, const Track& track) {
    full(out) << "t,x,y\n";
    for (std::size_t k = 0; k < track.positions.size(); ++k) {
        out << track.times_s[k] << ',' << track.positions[k].x << ','
            << track.positions[k].y << '\n';
    }
}

void write_bearings_csv(std::ostream& out, const BearingSeries& clean,
                        const BearingSeries& noisy) {
    full(out) << "t,clean_deg,noisy_deg\n";
    for (std::size_t k = 0; k < clean.bearings_deg.size(); ++k) {
        out << clean.times_s[k] << ',' << clean.bearings_deg[k] << ','
            << noisy.bearings_deg[k] << '\n';
    }
}

void write_run_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    full(out) << "run,r,course,speed,cost,fevals\n";
    for (const RunRecord& rec : records) {
        out << rec.run << ',' << rec.estimate.r0_m << ',' << rec.estimate.course_deg
            << ',' << rec.estimate.speed_mps << ',' << rec.cost << ',' << rec.fevals
            << '\n';
    }
}

void write_summary_csv(std::ostream& out, const MonteCarloSummary& summary) {
    full(out) << "stat,r,course,speed\n";
    stat_row(out, "mean", summary, &ParamStats::mean);
    stat_row(out, "std", summary, &ParamStats::stddev);
    stat_row(out, "abs_dev", summary, &ParamStats::abs_dev);
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
    full(out) << "noise_sigma,stat,r,course,speed\n";
    for (std::size_t i = 0; i < sweep.sigmas.size(); ++i) {
        const MonteCarloSummary& s = sweep.summaries[i];
        out << sweep.sigmas[i] << ",mean," << s.range.mean << ',' << s.course.mean
            << ',' << s.speed.mean << '\n';
        out << sweep.sigmas[i] << ",std," << s.range.stddev << ',' << s.course.stddev
            << ',' << s.speed.stddev << '\n';
        out << sweep.sigmas[i] << ",abs_dev," << s.range.abs_dev << ','
            << s.course.abs_dev << ',' << s.speed.abs_dev << '\n';
    }
}

void write_ga_inner_runs_csv(std::ostream& out, const GaReport& report,
                             std::uint64_t fevals_per_inner_run) {
    full(out) << "run,x0,y0,course,speed,cost,fevals\n";
    for (std::size_t i = 0; i < report.inner_runs.size(); ++i) {
        const GaInnerRun& r = report.inner_runs[i];
        out << i << ',' << r.best.x0_m << ',' << r.best.y0_m << ','
            << r.best.course_deg << ',' << r.best.speed_mps << ',' << r.cost << ','
            << fevals_per_inner_run << '\n';
    }
}

void write_cma_trace_csv(std::ostream& out, const std::vector<CmaTraceRow>& trace) {
    full(out) << "generation,sigma,best_cost,mean_r,mean_course,mean_speed\n";
    for (const CmaTraceRow& row : trace) {
        out << row.generation << ',' << row.sigma << ',' << row.best_cost << ','
            << row.mean.r0_m << ',' << row.mean.course_deg << ','
            << row.mean.speed_mps << '\n';
    }
}

namespace detail {
void write_cost_volume_row(std::ostream& out, const Candidate& c, double cost) {
    full(out) << c.r0_m << ',' << c.course_deg << ',' << c.speed_mps << ',' << cost
              << '\n';
}
} // namespace detail

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << contents;
}

} // namespace botma
