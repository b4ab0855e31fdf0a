#include "botma/solver_ga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace botma {

int bit_width(double max, double min, int precision_p) {
    if (!(max > min)) {
        throw std::invalid_argument("bit_width: max must be > min");
    }
    if (precision_p < 0) {
        throw std::invalid_argument("bit_width: precision must be >= 0");
    }
    const double target = (max - min) * std::pow(10.0, precision_p);
    for (int m = 1; m <= 63; ++m) {
        const double lo = std::ldexp(1.0, m - 1);      // 2^(m-1)
        const double hi = std::ldexp(1.0, m) - 1.0;    // 2^m - 1
        if (lo < target && target < hi) {
            return m;
        }
    }
    throw std::domain_error("bit_width: no width satisfies the coding rule for this span");
}

ChromosomeLayout ChromosomeLayout::from_bounds(const SearchBounds& xy_bounds,
                                               int precision_p) {
    if (xy_bounds.size() != 4) {
        throw std::invalid_argument("chromosome layout needs a 4-axis box");
    }
    validate(xy_bounds);
    ChromosomeLayout layout;
    layout.total_bits = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        ParamCoding& p = layout.params[i];
        p.min = xy_bounds[i].min;
        p.max = xy_bounds[i].max;
        p.precision_p = precision_p;
        p.bits = bit_width(p.max, p.min, precision_p);
        layout.total_bits += p.bits;
    }
    return layout;
}

namespace {

std::uint64_t segment_value(const Chromosome& ch, std::size_t offset, int bits) {
    std::uint64_t v = 0;
    for (int i = 0; i < bits; ++i) {
        v = (v << 1) | ch.bits[offset + static_cast<std::size_t>(i)];
    }
    return v;
}

void write_segment(Chromosome& ch, std::size_t offset, int bits, std::uint64_t v) {
    for (int i = bits - 1; i >= 0; --i) {
        ch.bits[offset + static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(v & 1u);
        v >>= 1;
    }
}

double decode_param(std::uint64_t v, const ParamCoding& p) {
    const double levels = std::ldexp(1.0, p.bits) - 1.0; // 2^bits - 1
    return p.min + static_cast<double>(v) * ((p.max - p.min) / levels);
}

std::uint64_t encode_param(double value, const ParamCoding& p) {
    const double levels = std::ldexp(1.0, p.bits) - 1.0;
    const double scaled = (value - p.min) / (p.max - p.min) * levels;
    const double clamped = std::clamp(scaled, 0.0, levels);
    return static_cast<std::uint64_t>(std::llround(clamped));
}

} // namespace

Chromosome encode(const CandidateXY& c, const ChromosomeLayout& layout) {
    const std::array<double, 4> values{c.x0_m, c.y0_m, c.course_deg, c.speed_mps};
    Chromosome ch;
    ch.bits.assign(static_cast<std::size_t>(layout.total_bits), 0);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const ParamCoding& p = layout.params[i];
        if (values[i] < p.min || values[i] > p.max) {
            throw std::invalid_argument("encode: candidate outside layout bounds");
        }
        write_segment(ch, offset, p.bits, encode_param(values[i], p));
        offset += static_cast<std::size_t>(p.bits);
    }
    return ch;
}

CandidateXY decode(const Chromosome& ch, const ChromosomeLayout& layout) {
    if (ch.bits.size() != static_cast<std::size_t>(layout.total_bits)) {
        throw std::invalid_argument("decode: chromosome length does not match layout");
    }
    std::array<double, 4> values{};
    std::size_t offset = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const ParamCoding& p = layout.params[i];
        values[i] = decode_param(segment_value(ch, offset, p.bits), p);
        offset += static_cast<std::size_t>(p.bits);
    }
    return CandidateXY{values[0], values[1], values[2], values[3]};
}

std::pair<std::size_t, std::size_t> select_pair(const std::vector<double>& fitnesses,
                                                RandomStream& rng) {
    if (fitnesses.empty()) {
        throw std::invalid_argument("select_pair: empty population");
    }
    double total = 0.0;
    for (double f : fitnesses) {
        if (f < 0.0) {
            throw std::invalid_argument("select_pair: negative fitness");
        }
        total += f;
    }
    auto draw = [&]() -> std::size_t {
        if (total <= 0.0) {
            return rng.uniform_index(fitnesses.size());
        }
        const double r = rng.uniform01() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < fitnesses.size(); ++i) {
            acc += fitnesses[i];
            if (r < acc) {
                return i;
            }
        }
        return fitnesses.size() - 1;
    };
    const std::size_t first = draw();
    const std::size_t second = draw();
    return {first, second};
}

std::pair<Chromosome, Chromosome> crossover_two_piece(const Chromosome& a,
                                                      const Chromosome& b,
                                                      std::size_t cut1,
                                                      std::size_t cut2) {
    if (a.bits.size() != b.bits.size()) {
        throw std::invalid_argument("crossover: parent layouts differ");
    }
    if (cut1 > cut2 || cut2 > a.bits.size()) {
        throw std::invalid_argument("crossover: bad cut points");
    }
    Chromosome c1 = a;
    Chromosome c2 = b;
    for (std::size_t i = cut1; i < cut2; ++i) {
        c1.bits[i] = b.bits[i];
        c2.bits[i] = a.bits[i];
    }
    return {std::move(c1), std::move(c2)};
}

std::pair<Chromosome, Chromosome> crossover_two_piece(const Chromosome& a,
                                                      const Chromosome& b,
                                                      RandomStream& rng) {
    const std::size_t n = a.bits.size();
    if (n < 2) {
        return {a, b};
    }
    // Interior cut positions; equal cuts degenerate to cloning.
    std::size_t cut1 = 1 + rng.uniform_index(n - 1);
    std::size_t cut2 = 1 + rng.uniform_index(n - 1);
    if (cut1 > cut2) {
        std::swap(cut1, cut2);
    }
    return crossover_two_piece(a, b, cut1, cut2);
}

Chromosome mutate_bitwise(Chromosome ch, double rate, RandomStream& rng) {
    if (rate < 0.0 || rate > 1.0) {
        throw std::invalid_argument("mutate: rate must be in [0, 1]");
    }
    for (std::uint8_t& bit : ch.bits) {
        if (rng.uniform01() < rate) {
            bit ^= 1u;
        }
    }
    return ch;
}

SearchBounds narrow_space(const SearchBounds& bounds,
                          const std::vector<CandidateXY>& bests,
                          const std::vector<double>& costs, double fraction) {
    if (bests.empty() || bests.size() != costs.size()) {
        throw std::invalid_argument("narrow_space: bests/costs mismatch");
    }
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw std::invalid_argument("narrow_space: fraction must be in (0, 1)");
    }
    validate(bounds);
    if (bounds.size() != 4) {
        throw std::invalid_argument("narrow_space: expected a 4-axis box");
    }

    double wsum = 0.0;
    std::array<double, 4> center{};
    for (std::size_t i = 0; i < bests.size(); ++i) {
        const double w = 1.0 / (1.0 + costs[i]);
        wsum += w;
        center[0] += w * bests[i].x0_m;
        center[1] += w * bests[i].y0_m;
        center[2] += w * bests[i].course_deg;
        center[3] += w * bests[i].speed_mps;
    }
    for (double& c : center) {
        c /= wsum;
    }

    SearchBounds out = bounds;
    for (std::size_t i = 0; i < 4; ++i) {
        const double half = 0.5 * fraction * bounds[i].width();
        out[i].min = std::max(bounds[i].min, center[i] - half);
        out[i].max = std::min(bounds[i].max, center[i] + half);
    }
    return out;
}

void validate(const GaConfig& cfg) {
    if (cfg.population_size < 2 || cfg.narrowing_generations < 1 ||
        cfg.main_generations < 1 || cfg.inner_runs < 1 || cfg.outer_runs < 1) {
        throw std::invalid_argument("ga config: counts must be positive");
    }
    if (!(cfg.narrowing_fraction > 0.0 && cfg.narrowing_fraction < 1.0)) {
        throw std::invalid_argument("ga config: narrowing fraction must be in (0, 1)");
    }
    if (cfg.mutation_rate > 1.0) {
        throw std::invalid_argument("ga config: mutation rate above 1");
    }
    if (!cfg.bounds.axes.empty() && cfg.bounds.size() != 4) {
        throw std::invalid_argument("ga config: bounds must have 4 axes");
    }
}

std::uint64_t ga_fevals_per_run(const GaConfig& cfg) {
    return static_cast<std::uint64_t>(cfg.population_size) *
           static_cast<std::uint64_t>(cfg.narrowing_generations +
                                      cfg.main_generations) *
           static_cast<std::uint64_t>(cfg.inner_runs);
}

namespace {

Chromosome random_chromosome(int total_bits, RandomStream& rng) {
    Chromosome ch;
    ch.bits.resize(static_cast<std::size_t>(total_bits));
    for (std::uint8_t& bit : ch.bits) {
        bit = rng.bernoulli(0.5) ? 1 : 0;
    }
    return ch;
}

} // namespace

EpochResult run_ga_epoch(const Objective& objective, const SearchBounds& bounds,
                         const ChromosomeLayout& layout, int generations,
                         int population_size, double mutation_rate, bool elitism,
                         RandomStream& rng) {
    validate(bounds);
    if (generations < 1 || population_size < 2) {
        throw std::invalid_argument("ga epoch: generations and population must be positive");
    }

    std::vector<Chromosome> population;
    population.reserve(static_cast<std::size_t>(population_size));
    for (int i = 0; i < population_size; ++i) {
        population.push_back(random_chromosome(layout.total_bits, rng));
    }

    EpochResult result;
    result.best_cost = std::numeric_limits<double>::infinity();
    Chromosome best_chromosome;
    std::vector<double> fitness(static_cast<std::size_t>(population_size));

    for (int gen = 0; gen < generations; ++gen) {
        for (std::size_t i = 0; i < population.size(); ++i) {
            const CandidateXY c = decode(population[i], layout);
            const double cost = objective(c);
            fitness[i] = 1.0 / (1.0 + cost);
            if (cost < result.best_cost) {
                result.best_cost = cost;
                result.best = c;
                best_chromosome = population[i];
            }
        }
        result.best_trace.push_back(result.best_cost);
        if (gen == generations - 1) {
            break;
        }

        std::vector<Chromosome> next;
        next.reserve(population.size());
        if (elitism) {
            next.push_back(best_chromosome);
        }
        while (next.size() < population.size()) {
            const auto [ia, ib] = select_pair(fitness, rng);
            auto [c1, c2] = crossover_two_piece(population[ia], population[ib], rng);
            next.push_back(mutate_bitwise(std::move(c1), mutation_rate, rng));
            if (next.size() < population.size()) {
                next.push_back(mutate_bitwise(std::move(c2), mutation_rate, rng));
            }
        }
        population = std::move(next);
    }
    return result;
}

CandidateXY fitness_weighted_average(const std::vector<CandidateXY>& candidates,
                                     const std::vector<double>& costs) {
    if (candidates.empty() || candidates.size() != costs.size()) {
        throw std::invalid_argument("weighted average: candidates/costs mismatch");
    }
    double wsum = 0.0;
    CandidateXY out{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double w = 1.0 / (1.0 + costs[i]);
        wsum += w;
        out.x0_m += w * candidates[i].x0_m;
        out.y0_m += w * candidates[i].y0_m;
        out.course_deg += w * candidates[i].course_deg;
        out.speed_mps += w * candidates[i].speed_mps;
    }
    out.x0_m /= wsum;
    out.y0_m /= wsum;
    out.course_deg /= wsum;
    out.speed_mps /= wsum;
    return out;
}

GaReport run_tmaga(const Objective& objective, const GaConfig& cfg,
                   RandomStream& rng) {
    validate(cfg);
    const SearchBounds bounds =
        cfg.bounds.axes.empty() ? default_xy_bounds() : cfg.bounds;
    const ChromosomeLayout base_layout =
        ChromosomeLayout::from_bounds(bounds, cfg.precision_p);
    const double rate = cfg.mutation_rate >= 0.0
                            ? cfg.mutation_rate
                            : 1.0 / static_cast<double>(base_layout.total_bits);

    const std::uint64_t evals_before = objective.evaluations();

    GaReport report;
    std::vector<CandidateXY> bests;
    std::vector<double> costs;

    for (int run = 0; run < cfg.inner_runs; ++run) {
        const EpochResult narrow_result =
            run_ga_epoch(objective, bounds, base_layout, cfg.narrowing_generations,
                         cfg.population_size, rate, cfg.elitism, rng);

        const SearchBounds narrowed =
            narrow_space(bounds, {narrow_result.best}, {narrow_result.best_cost},
                         cfg.narrowing_fraction);
        const ChromosomeLayout narrowed_layout =
            ChromosomeLayout::from_bounds(narrowed, cfg.precision_p);

        const EpochResult main_result =
            run_ga_epoch(objective, narrowed, narrowed_layout, cfg.main_generations,
                         cfg.population_size, rate, cfg.elitism, rng);

        GaInnerRun inner;
        inner.best = main_result.best;
        inner.cost = main_result.best_cost;
        inner.narrowed = narrowed;
        report.inner_runs.push_back(std::move(inner));
        bests.push_back(main_result.best);
        costs.push_back(main_result.best_cost);
    }

    const std::size_t best_idx = static_cast<std::size_t>(
        std::min_element(costs.begin(), costs.end()) - costs.begin());
    report.best = bests[best_idx];
    report.best_cost = costs[best_idx];
    report.weighted = fitness_weighted_average(bests, costs);
    report.fevals = objective.evaluations() - evals_before;
    return report;
}

GaReport run_tmaga(const BearingSeries& observed, const Track& observer,
                   const GaConfig& cfg, RandomStream& rng) {
    const Objective objective(observed, observer);
    return run_tmaga(objective, cfg, rng);
}

} // namespace botma
