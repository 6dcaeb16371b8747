#ifndef ATNEVO_EXPERIMENT_HPP
#define ATNEVO_EXPERIMENT_HPP

/*
 * Batch driver for the 4-factor ablation grid and the statistics taken over
 * stored run records.
 *
 * Factors: mutation {bitflip, uniform}, stack-ops {all, nodelabel},
 * contradiction {contradiction, nocontradiction}, default-action
 * {random, finish}. Each cell's seed derives from the master seed and the
 * cell index, each run's from the cell seed and the run index, so any cell
 * can be replayed alone and still match the full grid.
 */

#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "evolution.hpp"
#include "maze.hpp"
#include "parallel.hpp"
#include "runtime.hpp"
#include "stats.hpp"

namespace atnevo {

struct AblationCell {
    MutationKind mutation = MutationKind::BitFlip;
    bool typed_stack_ops = false;   // stack-ops factor: all vs nodelabel
    bool no_contradiction = false;  // contradiction factor
    DefaultAction default_action = DefaultAction::Random;

    int index() const {
        return (mutation == MutationKind::UniformToken ? 8 : 0) + (typed_stack_ops ? 4 : 0) +
               (no_contradiction ? 2 : 0) + (default_action == DefaultAction::Finish ? 1 : 0);
    }

    static AblationCell from_index(int index) {
        if (index < 0 || index > 15) throw std::invalid_argument("ablation cell index out of range");
        AblationCell c;
        c.mutation = (index & 8) ? MutationKind::UniformToken : MutationKind::BitFlip;
        c.typed_stack_ops = (index & 4) != 0;
        c.no_contradiction = (index & 2) != 0;
        c.default_action = (index & 1) ? DefaultAction::Finish : DefaultAction::Random;
        return c;
    }

    std::string name() const {
        std::string s;
        s += mutation == MutationKind::UniformToken ? "uniform" : "bitflip";
        s += typed_stack_ops ? "-nodelabel" : "-all";
        s += no_contradiction ? "-nocontradiction" : "-contradiction";
        s += default_action == DefaultAction::Finish ? "-finish" : "-random";
        return s;
    }

    void apply_to(EvolutionConfig& cfg) const {
        cfg.mutation.kind = mutation;
        cfg.encoding = encoding_for(mutation);
        cfg.build.typed_stack_ops = typed_stack_ops;
        cfg.build.no_contradiction = no_contradiction;
        cfg.policy.default_action = default_action;
    }
};

inline std::vector<AblationCell> all_cells() {
    std::vector<AblationCell> cells;
    cells.reserve(16);
    for (int i = 0; i < 16; ++i) cells.push_back(AblationCell::from_index(i));
    return cells;
}

// Restriction of the grid, e.g. Uniform-only leaves the 8 uniform cells.
inline std::vector<AblationCell> cells_matching(std::optional<MutationKind> mutation,
                                                std::optional<bool> typed_stack_ops,
                                                std::optional<bool> no_contradiction,
                                                std::optional<DefaultAction> default_action) {
    std::vector<AblationCell> cells;
    for (const AblationCell& c : all_cells()) {
        if (mutation && c.mutation != *mutation) continue;
        if (typed_stack_ops && c.typed_stack_ops != *typed_stack_ops) continue;
        if (no_contradiction && c.no_contradiction != *no_contradiction) continue;
        if (default_action && c.default_action != *default_action) continue;
        cells.push_back(c);
    }
    return cells;
}

inline std::uint64_t derive_cell_seed(std::uint64_t master_seed, int cell_index) {
    return mix_seed(master_seed, 0x6772696400000000ULL + static_cast<std::uint64_t>(cell_index));
}

inline std::uint64_t derive_run_seed(std::uint64_t cell_seed, int run_index) {
    return mix_seed(cell_seed, 0x72756E0000000000ULL + static_cast<std::uint64_t>(run_index));
}

// Runs-per-cell records per cell, cell-major order; base.seed is the master
// seed. Runs execute concurrently yet the collection is reproducible.
inline std::vector<RunRecord> run_grid(const Maze& maze, const std::vector<AblationCell>& cells,
                                       int runs_per_cell, const EvolutionConfig& base) {
    if (runs_per_cell < 1) throw std::invalid_argument("runs per cell must be >= 1");
    std::vector<RunRecord> records(cells.size() * static_cast<std::size_t>(runs_per_cell));
    parallel_for(records.size(), [&](std::size_t i) {
        const std::size_t cell_pos = i / static_cast<std::size_t>(runs_per_cell);
        const int run = static_cast<int>(i % static_cast<std::size_t>(runs_per_cell));
        EvolutionConfig cfg = base;
        cells[cell_pos].apply_to(cfg);
        cfg.seed = derive_run_seed(derive_cell_seed(base.seed, cells[cell_pos].index()), run);
        records[i] = run_evolution(cfg, maze);
    });
    return records;
}

enum class Factor : std::uint8_t { Mutation, StackOps, Contradiction, DefaultNodeAction };

inline std::string_view factor_name(Factor f) {
    switch (f) {
        case Factor::Mutation: return "mutation";
        case Factor::StackOps: return "stack-ops";
        case Factor::Contradiction: return "contradiction";
        case Factor::DefaultNodeAction: return "default-action";
    }
    return "?";
}

inline std::string_view factor_level_name(Factor f, int level) {
    switch (f) {
        case Factor::Mutation: return level ? "uniform" : "bitflip";
        case Factor::StackOps: return level ? "nodelabel" : "all";
        case Factor::Contradiction: return level ? "nocontradiction" : "contradiction";
        case Factor::DefaultNodeAction: return level ? "finish" : "random";
    }
    return "?";
}

inline int factor_level(const RunRecord& record, Factor f) {
    switch (f) {
        case Factor::Mutation: return record.config.mutation.kind == MutationKind::UniformToken;
        case Factor::StackOps: return record.config.build.typed_stack_ops;
        case Factor::Contradiction: return record.config.build.no_contradiction;
        case Factor::DefaultNodeAction:
            return record.config.policy.default_action == DefaultAction::Finish;
    }
    return 0;
}

inline double final_fitness(const RunRecord& record) { return record.champion_fitness; }

inline std::vector<RunRecord> filter_level(std::span<const RunRecord> records, Factor f,
                                           int level) {
    std::vector<RunRecord> out;
    for (const RunRecord& r : records)
        if (factor_level(r, f) == level) out.push_back(r);
    return out;
}

struct FactorReport {
    Factor factor = Factor::Mutation;
    double mean_level0 = 0, mean_level1 = 0;
    std::size_t n_level0 = 0, n_level1 = 0;
    TTestResult ttest;
};

// Mean final fitness of each factor level over the given records (condition
// by pre-filtering) plus the Welch p-value for the level difference.
inline FactorReport factor_ttest(std::span<const RunRecord> records, Factor factor) {
    std::vector<double> level0, level1;
    for (const RunRecord& r : records)
        (factor_level(r, factor) ? level1 : level0).push_back(final_fitness(r));
    if (level0.size() < 2 || level1.size() < 2)
        throw std::invalid_argument("factor_ttest: each level needs at least 2 records");
    FactorReport rep;
    rep.factor = factor;
    rep.n_level0 = level0.size();
    rep.n_level1 = level1.size();
    rep.mean_level0 = mean_and_sample_variance(level0).mean;
    rep.mean_level1 = mean_and_sample_variance(level1).mean;
    rep.ttest = welch_t_test(level0, level1);
    return rep;
}

inline QuartileSummary final_fitness_quartiles(std::span<const RunRecord> records) {
    std::vector<double> fs;
    fs.reserve(records.size());
    for (const RunRecord& r : records) fs.push_back(final_fitness(r));
    return quartile_summary(fs);
}

struct ConvergenceCost {
    double pr = 0;  // percent of runs whose best ever reaches the target
    double ng = 0;  // mean first-crossing generation among those runs
    double ne = 0;  // P * NG * 100 / PR
    double nt = 0;  // NS * NE
    bool attainable = false;
    std::size_t runs = 0;
    std::size_t crossed = 0;
};

inline ConvergenceCost convergence_cost(std::span<const RunRecord> records, double target,
                                        int start_cells) {
    if (records.empty()) throw std::invalid_argument("convergence_cost: no records");
    if (!(target > 0)) throw std::invalid_argument("convergence_cost: target must be > 0");
    ConvergenceCost cost;
    cost.runs = records.size();
    double generation_sum = 0;
    for (const RunRecord& r : records) {
        const int g = r.first_crossing(target);
        if (g < 0) continue;
        ++cost.crossed;
        generation_sum += g;
    }
    if (cost.crossed == 0) return cost;  // never outperforms the target
    cost.attainable = true;
    cost.pr = 100.0 * static_cast<double>(cost.crossed) / static_cast<double>(cost.runs);
    cost.ng = generation_sum / static_cast<double>(cost.crossed);
    cost.ne = static_cast<double>(records.front().config.population_size) * cost.ng * 100.0 /
              cost.pr;
    cost.nt = static_cast<double>(start_cells) * cost.ne;
    return cost;
}

// Rebuilds the champion, writes its graph export, and writes the per-start-
// cell steps table behind the policy figures. Updates record.graph_path.
inline void export_champion(RunRecord& record, const Maze& maze, const std::string& dot_path,
                            const std::string& steps_path,
                            const GeneticCode* code_override = nullptr) {
    const GeneticCode code = code_override
                                 ? *code_override
                                 : default_genetic_code(record.config.build.typed_stack_ops);
    const Atn atn = build_controller(record.champion, code, record.config.build);

    std::ofstream dot(dot_path);
    if (!dot) throw std::invalid_argument("cannot write graph export: " + dot_path);
    write_dot(atn, dot, record.maze_name.empty() ? std::string("atn") : record.maze_name);
    record.graph_path = dot_path;

    std::ofstream steps(steps_path);
    if (!steps) throw std::invalid_argument("cannot write steps table: " + steps_path);
    steps << "row,col,steps,found_food,oracle_steps\n";
    const std::vector<int> oracle = bfs_distances(maze);
    const RngStream rng = RngStream(record.config.seed).derive(0x504F4C494359ULL);
    for (std::size_t i = 0; i < maze.start_cells.size(); ++i) {
        const Coord cell = maze.start_cells[i];
        const TrialResult trial =
            run_trial(atn, maze, cell, record.config.policy, rng.derive(i));
        steps << cell.row << ',' << cell.col << ',' << trial.steps << ','
              << (trial.found_food ? 1 : 0) << ','
              << oracle[static_cast<std::size_t>(cell.row) * maze.width + cell.col] << '\n';
    }
}

}  // namespace atnevo

#endif
