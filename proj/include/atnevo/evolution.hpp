#ifndef ATNEVO_EVOLUTION_HPP
#define ATNEVO_EVOLUTION_HPP

/*
 * Generational GA: elitist truncation to the n best, parents drawn from the
 * survivors with exponentially decaying rank weights b*c^i, token-boundary
 * 2-point crossover, then point mutation. Every generation re-evaluates
 * survivors together with the offspring and folds the result into each
 * individual's running mean, which smooths the noise of stochastic policies.
 *
 * Reproducibility contract: a run is a pure function of its seed. Variation
 * consumes one sequential stream per generation; every population slot
 * evaluates on its own derived stream, so worker count cannot change results.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genome.hpp"
#include "graph_builder.hpp"
#include "maze.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "runtime.hpp"
#include "stats.hpp"

namespace atnevo {

enum class MutationKind : std::uint8_t { BitFlip, UniformToken };

struct MutationSpec {
    MutationKind kind = MutationKind::UniformToken;
    double rate = 0.01;
    double add_delete_rate = 0;  // optional codon insert/delete, off by default
    bool operator==(const MutationSpec&) const = default;
};

inline Genome::Encoding encoding_for(MutationKind kind) {
    return kind == MutationKind::BitFlip ? Genome::Encoding::Bitstring : Genome::Encoding::Integer;
}

inline double default_decay() { return std::pow(0.5, 1.0 / 60.0); }

struct EvolutionConfig {
    int population_size = 300;
    int truncation_size = 60;
    double decay = default_decay();
    MutationSpec mutation;
    Genome::Encoding encoding = Genome::Encoding::Integer;
    int genome_length = 300;
    BuildConfig build;
    RunPolicy policy;
    int generations = 100;
    std::uint64_t seed = 1;

    bool operator==(const EvolutionConfig&) const = default;

    void validate() const {
        if (truncation_size < 1 || truncation_size >= population_size)
            throw std::invalid_argument("truncation size must be in [1, population size)");
        if ((population_size - truncation_size) % 2 != 0)
            throw std::invalid_argument("population minus truncation must be even");
        if (!(decay > 0 && decay < 1)) throw std::invalid_argument("decay must lie in (0,1)");
        if (mutation.rate < 0 || mutation.rate > 1 || mutation.add_delete_rate < 0 ||
            mutation.add_delete_rate > 1)
            throw std::invalid_argument("mutation rates must lie in [0,1]");
        if (genome_length < 1) throw std::invalid_argument("genome length must be >= 1");
        if (generations < 0) throw std::invalid_argument("generations must be >= 0");
        if (policy.step_cap < 1) throw std::invalid_argument("step cap must be >= 1");
        if (encoding != encoding_for(mutation.kind))
            throw std::invalid_argument("mutation kind incompatible with genome encoding");
    }
};

struct Individual {
    Genome genome;
    int eval_count = 0;
    double mean_fitness = 0;

    void fold(double fitness) {
        ++eval_count;
        mean_fitness += (fitness - mean_fitness) / static_cast<double>(eval_count);
    }
};

// weight_i = b*c^i for ranks i = 0..n-1, b = (1-c)/(1-c^n); sums to 1.
inline std::vector<double> selection_weights(int n, double c) {
    if (n < 1) throw std::invalid_argument("selection_weights: n must be >= 1");
    if (!(c > 0 && c < 1)) throw std::invalid_argument("selection_weights: c must lie in (0,1)");
    const double b = (1 - c) / (1 - std::pow(c, n));
    std::vector<double> w(static_cast<std::size_t>(n));
    double cur = b;
    for (auto& x : w) {
        x = cur;
        cur *= c;
    }
    return w;
}

namespace detail {

// Cuts at token boundaries p1 <= p2; the middle segment is exchanged. Cuts
// are drawn on [0, min-length] so unequal parents (possible only with
// add/delete mutation) still yield well-formed children of unchanged length.
inline std::pair<Genome, Genome> crossover_at(const Genome& a, const Genome& b, std::size_t p1,
                                              std::size_t p2) {
    const std::size_t unit =
        a.encoding == Genome::Encoding::Bitstring ? GeneticCode::codon_width : 1;
    Genome ca = a, cb = b;
    for (std::size_t i = p1 * unit; i < p2 * unit; ++i) std::swap(ca.payload[i], cb.payload[i]);
    return {std::move(ca), std::move(cb)};
}

inline std::pair<Genome, Genome> crossover_any_length(const Genome& a, const Genome& b,
                                                      RngStream& rng) {
    if (a.encoding != b.encoding)
        throw std::invalid_argument("crossover: parents use different encodings");
    const std::size_t limit = std::min(a.token_count(), b.token_count());
    std::size_t p1 = rng.uniform_below(limit + 1);
    std::size_t p2 = rng.uniform_below(limit + 1);
    if (p1 > p2) std::swap(p1, p2);
    return crossover_at(a, b, p1, p2);
}

}  // namespace detail

inline std::pair<Genome, Genome> two_point_crossover(const Genome& a, const Genome& b,
                                                     RngStream& rng) {
    if (a.token_count() != b.token_count())
        throw std::invalid_argument("crossover: parents differ in length");
    return detail::crossover_any_length(a, b, rng);
}

inline Genome mutate(const Genome& genome, const MutationSpec& spec, RngStream& rng) {
    if (genome.encoding != encoding_for(spec.kind))
        throw std::invalid_argument("mutation kind incompatible with genome encoding");
    Genome out = genome;
    if (spec.kind == MutationKind::BitFlip) {
        for (auto& bit : out.payload)
            if (rng.bernoulli(spec.rate)) bit ^= 1;
    } else {
        for (auto& token : out.payload)
            if (rng.bernoulli(spec.rate))
                token = static_cast<std::uint8_t>(rng.uniform_below(GeneticCode::codon_count));
    }
    if (spec.add_delete_rate > 0 && rng.bernoulli(spec.add_delete_rate)) {
        const std::size_t unit =
            out.encoding == Genome::Encoding::Bitstring ? GeneticCode::codon_width : 1;
        const std::size_t tokens = out.token_count();
        if (rng.bernoulli(0.5)) {
            const std::size_t at = rng.uniform_below(tokens + 1) * unit;
            std::vector<std::uint8_t> codon(unit);
            if (out.encoding == Genome::Encoding::Integer) {
                codon[0] = static_cast<std::uint8_t>(rng.uniform_below(GeneticCode::codon_count));
            } else {
                for (auto& bit : codon) bit = static_cast<std::uint8_t>(rng.next_u64() & 1);
            }
            out.payload.insert(out.payload.begin() + static_cast<std::ptrdiff_t>(at),
                               codon.begin(), codon.end());
        } else if (tokens > 1) {
            const std::size_t at = rng.uniform_below(tokens) * unit;
            out.payload.erase(out.payload.begin() + static_cast<std::ptrdiff_t>(at),
                              out.payload.begin() + static_cast<std::ptrdiff_t>(at + unit));
        }
    }
    return out;
}

inline Atn build_controller(const Genome& genome, const GeneticCode& code,
                            const BuildConfig& build) {
    return interpret(translate(genome, code), build);
}

// Survivors keep the first n slots of the returned population, offspring
// fill the rest; every slot is (re)evaluated on its own derived stream.
inline std::vector<Individual> run_generation(std::vector<Individual> population, const Maze& maze,
                                              const EvolutionConfig& config,
                                              const GeneticCode& code, const RngStream& rng) {
    const std::size_t p = static_cast<std::size_t>(config.population_size);
    const std::size_t n = static_cast<std::size_t>(config.truncation_size);
    if (population.size() != p) throw std::invalid_argument("population size mismatch");

    std::stable_sort(population.begin(), population.end(),
                     [](const Individual& a, const Individual& b) {
                         return a.mean_fitness < b.mean_fitness;
                     });
    population.resize(n);

    const std::vector<double> weights = selection_weights(config.truncation_size, config.decay);
    RngStream variation = rng.derive(0);
    population.reserve(p);
    while (population.size() < p) {
        const std::size_t ia = variation.sample_discrete(weights);
        const std::size_t ib = variation.sample_discrete(weights);
        auto [child_a, child_b] = detail::crossover_any_length(population[ia].genome,
                                                               population[ib].genome, variation);
        population.push_back({mutate(child_a, config.mutation, variation)});
        population.push_back({mutate(child_b, config.mutation, variation)});
    }

    parallel_for(p, [&](std::size_t slot) {
        const Atn atn = build_controller(population[slot].genome, code, config.build);
        population[slot].fold(evaluate(atn, maze, config.policy, rng.derive(1 + slot)));
    });
    return population;
}

struct GenerationStats {
    int generation = 0;
    double best = 0;
    double mean = 0;
    double median = 0;
};

struct RunRecord {
    EvolutionConfig config;
    std::string maze_name;
    std::vector<GenerationStats> history;
    Genome champion;
    double champion_fitness = 0;
    int champion_evals = 0;
    std::string graph_path;

    // First generation whose population best reaches the target, or -1.
    int first_crossing(double target) const {
        for (const GenerationStats& g : history)
            if (g.best <= target) return g.generation;
        return -1;
    }
};

namespace detail {

inline GenerationStats population_stats(int generation, const std::vector<Individual>& pop) {
    std::vector<double> fs;
    fs.reserve(pop.size());
    for (const Individual& ind : pop) fs.push_back(ind.mean_fitness);
    GenerationStats s;
    s.generation = generation;
    s.best = *std::min_element(fs.begin(), fs.end());
    s.mean = std::accumulate(fs.begin(), fs.end(), 0.0) / static_cast<double>(fs.size());
    s.median = quantile_linear(fs, 0.5);
    return s;
}

}  // namespace detail

inline RunRecord run_evolution(const EvolutionConfig& config, const Maze& maze,
                               const GeneticCode* code_override = nullptr) {
    config.validate();
    const GeneticCode code =
        code_override ? *code_override : default_genetic_code(config.build.typed_stack_ops);

    const RngStream root(config.seed);
    const RngStream init = root.derive(0);
    std::vector<Individual> population(static_cast<std::size_t>(config.population_size));
    for (std::size_t i = 0; i < population.size(); ++i) {
        RngStream g = init.derive(i);
        population[i].genome =
            random_genome(config.encoding, static_cast<std::size_t>(config.genome_length), g);
    }

    RunRecord record;
    record.config = config;
    record.maze_name = maze.name;

    const RngStream gen0 = root.derive(1);
    parallel_for(population.size(), [&](std::size_t slot) {
        const Atn atn = build_controller(population[slot].genome, code, config.build);
        population[slot].fold(evaluate(atn, maze, config.policy, gen0.derive(1 + slot)));
    });
    record.history.push_back(detail::population_stats(0, population));

    for (int g = 1; g <= config.generations; ++g) {
        population = run_generation(std::move(population), maze, config, code, root.derive(1 + g));
        record.history.push_back(detail::population_stats(g, population));
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
        if (population[i].mean_fitness < population[best].mean_fitness) best = i;
    record.champion = population[best].genome;
    record.champion_fitness = population[best].mean_fitness;
    record.champion_evals = population[best].eval_count;
    return record;
}

}  // namespace atnevo

#endif
