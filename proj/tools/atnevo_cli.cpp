// Command line front end: evolve | grid | stats | oracle | build | eval.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <atnevo/atnevo.hpp>

namespace fs = std::filesystem;
using namespace atnevo;

namespace {

std::vector<std::uint32_t> read_codon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open genome file: " + path);
    std::vector<std::uint32_t> codons;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::uint32_t value = 0;
        while (fields >> value) codons.push_back(value);
        if (!fields.eof()) throw std::invalid_argument("genome file: expected integers in " + path);
    }
    if (codons.empty()) throw std::invalid_argument("genome file is empty: " + path);
    return codons;
}

GeneticCode resolve_code(const std::string& code_path, bool typed) {
    if (code_path.empty()) return default_genetic_code(typed);
    std::ifstream in(code_path);
    if (!in) throw std::invalid_argument("cannot open genetic code file: " + code_path);
    return load_genetic_code(in, typed);
}

EdgeChoice parse_edge_choice(const std::string& name) {
    if (name == "first") return EdgeChoice::FirstEligible;
    if (name == "random") return EdgeChoice::RandomEligible;
    throw std::invalid_argument("edge choice must be first or random");
}

DefaultAction parse_default_action(const std::string& name) {
    if (name == "random") return DefaultAction::Random;
    if (name == "finish") return DefaultAction::Finish;
    throw std::invalid_argument("default action must be random or finish");
}

// Records are stored one per file; directories are scanned for *.txt.
std::vector<RunRecord> load_records(const std::vector<std::string>& paths) {
    std::vector<std::string> files;
    for (const std::string& p : paths) {
        if (fs::is_directory(p)) {
            for (const auto& entry : fs::directory_iterator(p))
                if (entry.is_regular_file() && entry.path().extension() == ".txt")
                    files.push_back(entry.path().string());
        } else {
            files.push_back(p);
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::invalid_argument("no record files found");
    std::vector<RunRecord> records;
    records.reserve(files.size());
    for (const std::string& f : files) records.push_back(load_run_record(f));
    return records;
}

std::pair<Factor, int> parse_fix(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--fix expects FACTOR=LEVEL, got: " + text);
    const std::string factor = text.substr(0, eq);
    const std::string level = text.substr(eq + 1);
    for (const Factor f : {Factor::Mutation, Factor::StackOps, Factor::Contradiction,
                           Factor::DefaultNodeAction}) {
        if (factor != factor_name(f)) continue;
        for (int l = 0; l < 2; ++l)
            if (level == factor_level_name(f, l)) return {f, l};
        throw std::invalid_argument("unknown level '" + level + "' for factor " + factor);
    }
    throw std::invalid_argument("unknown factor '" + factor + "'");
}

void print_factor_report(const FactorReport& rep) {
    std::cout << "factor=" << factor_name(rep.factor)
              << " " << factor_level_name(rep.factor, 0) << ": n=" << rep.n_level0
              << " mean=" << rep.mean_level0
              << " | " << factor_level_name(rep.factor, 1) << ": n=" << rep.n_level1
              << " mean=" << rep.mean_level1
              << " | t=" << rep.ttest.t << " df=" << rep.ttest.df << " p=" << rep.ttest.p
              << "\n";
}

int run_evolve(const std::string& config_path, const std::string& maze_path,
               const std::string& out_path, const std::string& export_prefix,
               std::optional<std::uint64_t> seed, bool quiet) {
    EvolutionConfig cfg = load_evolution_config_file(config_path);
    if (seed) cfg.seed = *seed;
    cfg.validate();
    const Maze maze = load_maze_file(maze_path);

    RunRecord record = run_evolution(cfg, maze);
    // Keep stdout clean when the record itself goes there.
    std::ostream& progress = out_path.empty() ? std::cerr : std::cout;
    if (!quiet) {
        for (const GenerationStats& g : record.history) {
            if (g.generation % 10 == 0 || g.generation == cfg.generations)
                progress << "generation " << g.generation << " best=" << g.best
                         << " mean=" << g.mean << " median=" << g.median << "\n";
        }
        progress << "champion fitness=" << record.champion_fitness
                 << " evaluations=" << record.champion_evals
                 << " oracle=" << oracle_mean_steps(maze) << "\n";
    }
    if (!export_prefix.empty())
        export_champion(record, maze, export_prefix + ".dot", export_prefix + "_steps.csv");
    if (out_path.empty()) {
        write_run_record(record, std::cout);
    } else {
        save_run_record(record, out_path);
        if (!quiet) progress << "record written to " << out_path << "\n";
    }
    return 0;
}

int run_grid_command(const std::string& config_path, const std::string& maze_path,
                     const std::string& out_dir, int runs, const std::string& mutation,
                     const std::string& stack_ops, const std::string& contradiction,
                     const std::string& default_action) {
    EvolutionConfig base = load_evolution_config_file(config_path);
    const Maze maze = load_maze_file(maze_path);

    std::optional<MutationKind> want_mutation;
    if (mutation == "bitflip") want_mutation = MutationKind::BitFlip;
    else if (mutation == "uniform") want_mutation = MutationKind::UniformToken;
    std::optional<bool> want_typed;
    if (stack_ops == "all") want_typed = false;
    else if (stack_ops == "nodelabel") want_typed = true;
    std::optional<bool> want_nocontra;
    if (contradiction == "contradiction") want_nocontra = false;
    else if (contradiction == "nocontradiction") want_nocontra = true;
    std::optional<DefaultAction> want_action;
    if (default_action == "random") want_action = DefaultAction::Random;
    else if (default_action == "finish") want_action = DefaultAction::Finish;

    const std::vector<AblationCell> cells =
        cells_matching(want_mutation, want_typed, want_nocontra, want_action);
    if (cells.empty()) throw std::invalid_argument("the restriction selects no cells");

    fs::create_directories(out_dir);
    const std::vector<RunRecord> records = run_grid(maze, cells, runs, base);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        double total = 0;
        for (int r = 0; r < runs; ++r) {
            const RunRecord& record = records[c * static_cast<std::size_t>(runs) +
                                              static_cast<std::size_t>(r)];
            const fs::path file = fs::path(out_dir) /
                                  (cells[c].name() + "-run" + std::to_string(r) + ".txt");
            save_run_record(record, file.string());
            total += record.champion_fitness;
        }
        std::cout << "cell " << cells[c].name()
                  << " mean champion fitness=" << total / runs << " (" << runs << " runs)\n";
    }
    std::cout << records.size() << " records written to " << out_dir << "\n";
    return 0;
}

int run_stats(const std::vector<std::string>& record_paths, const std::string& factor,
              const std::vector<std::string>& fixes, bool quartiles,
              std::optional<double> target, int start_cells) {
    std::vector<RunRecord> records = load_records(record_paths);
    for (const std::string& fix : fixes) {
        const auto [f, level] = parse_fix(fix);
        records = filter_level(records, f, level);
        std::cout << "fixed " << factor_name(f) << "=" << factor_level_name(f, level) << ", "
                  << records.size() << " records remain\n";
    }
    if (records.empty()) throw std::invalid_argument("no records after filtering");

    if (!factor.empty()) {
        std::vector<Factor> wanted;
        bool skip_degenerate = false;
        if (factor == "all") {
            wanted = {Factor::Mutation, Factor::StackOps, Factor::Contradiction,
                      Factor::DefaultNodeAction};
            skip_degenerate = true;
        } else {
            bool found = false;
            for (const Factor f : {Factor::Mutation, Factor::StackOps, Factor::Contradiction,
                                   Factor::DefaultNodeAction}) {
                if (factor == factor_name(f)) {
                    wanted.push_back(f);
                    found = true;
                }
            }
            if (!found) throw std::invalid_argument("unknown factor '" + factor + "'");
        }
        for (const Factor f : wanted) {
            if (skip_degenerate) {
                std::size_t level0 = filter_level(records, f, 0).size();
                if (level0 < 2 || records.size() - level0 < 2) {
                    std::cout << "factor=" << factor_name(f)
                              << " skipped (needs 2+ records per level)\n";
                    continue;
                }
            }
            print_factor_report(factor_ttest(records, f));
        }
    }

    if (quartiles) {
        const QuartileSummary q = final_fitness_quartiles(records);
        std::cout << "final fitness quartiles: n=" << records.size() << " min=" << q.min
                  << " q1=" << q.q1 << " median=" << q.median << " q3=" << q.q3
                  << " max=" << q.max << "\n";
    }

    if (target) {
        const ConvergenceCost cost = convergence_cost(records, *target, start_cells);
        std::cout << "target=" << *target << " runs=" << cost.runs << " crossed=" << cost.crossed;
        if (cost.attainable)
            std::cout << " PR=" << cost.pr << " NG=" << cost.ng << " NE=" << cost.ne
                      << " NT=" << cost.nt << "\n";
        else
            std::cout << " (never reached)\n";
    }
    return 0;
}

int run_oracle(const std::string& maze_path, bool per_cell) {
    const Maze maze = load_maze_file(maze_path);
    std::cout << "maze=" << maze.name << " start_cells=" << maze.start_cells.size()
              << " oracle_mean_steps=" << oracle_mean_steps(maze) << "\n";
    if (per_cell) {
        const std::vector<int> dist = bfs_distances(maze);
        std::cout << "row,col,steps\n";
        for (const Coord cell : maze.start_cells)
            std::cout << cell.row << ',' << cell.col << ','
                      << dist[static_cast<std::size_t>(cell.row) * maze.width + cell.col] << "\n";
    }
    return 0;
}

int run_build(const std::string& genome_path, const std::string& out_path,
              const std::string& code_path, bool typed, bool no_contradiction, bool tokens,
              bool dump_code) {
    const GeneticCode code = resolve_code(code_path, typed);
    if (dump_code) {
        save_genetic_code(code, std::cout);
        return 0;
    }
    if (genome_path.empty()) throw std::invalid_argument("--genome is required");
    const Genome genome =
        genome_from_codons(read_codon_file(genome_path), Genome::Encoding::Integer);
    if (tokens) {
        for (const Token& t : translate(genome, code)) std::cout << token_mnemonic(t) << "\n";
        return 0;
    }
    const Atn atn = build_controller(genome, code, BuildConfig{no_contradiction, typed});
    const std::string name = fs::path(genome_path).stem().string();
    if (out_path.empty()) {
        write_dot(atn, std::cout, name);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        write_dot(atn, out, name);
        std::cout << "graph written to " << out_path << "\n";
    }
    return 0;
}

int run_eval(const std::string& genome_path, const std::string& maze_path,
             const std::string& code_path, bool typed, bool no_contradiction,
             const std::string& edge_choice, const std::string& default_action, int step_cap,
             std::uint64_t seed, int repeat, bool trace) {
    const GeneticCode code = resolve_code(code_path, typed);
    const Genome genome =
        genome_from_codons(read_codon_file(genome_path), Genome::Encoding::Integer);
    const Atn atn = build_controller(genome, code, BuildConfig{no_contradiction, typed});
    const Maze maze = load_maze_file(maze_path);

    RunPolicy policy;
    policy.edge_choice = parse_edge_choice(edge_choice);
    policy.default_action = parse_default_action(default_action);
    policy.step_cap = step_cap;

    const RngStream root(seed);
    if (trace) {
        for (std::size_t i = 0; i < maze.start_cells.size(); ++i) {
            const Coord cell = maze.start_cells[i];
            std::cout << "trial from (" << cell.row << "," << cell.col << ")\n";
            const TrialResult result =
                run_trial(atn, maze, cell, policy, root.derive(0).derive(i), &std::cout);
            std::cout << "  steps=" << result.steps << " found_food=" << result.found_food
                      << " failed=" << result.failed << "\n";
        }
    }
    double total = 0;
    for (int r = 0; r < repeat; ++r)
        total += evaluate(atn, maze, policy, root.derive(static_cast<std::uint64_t>(r)));
    std::cout << "fitness=" << total / repeat << " (" << repeat
              << " evaluation" << (repeat == 1 ? "" : "s")
              << ") oracle=" << oracle_mean_steps(maze) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolves stack-programmed graph controllers for woods mazes"};
    app.require_subcommand(1);

    // evolve
    std::string config_path, maze_path, out_path, export_prefix;
    std::optional<std::uint64_t> seed_override;
    bool quiet = false;
    CLI::App* evolve = app.add_subcommand("evolve", "Run one evolution from a config file");
    evolve->add_option("--config", config_path, "key=value configuration file")->required();
    evolve->add_option("--maze", maze_path, "maze map file")->required();
    evolve->add_option("--out", out_path, "write the run record here (default stdout)");
    evolve->add_option("--export", export_prefix,
                       "write champion PREFIX.dot and PREFIX_steps.csv");
    evolve->add_option("--seed", seed_override, "override the config seed");
    evolve->add_flag("--quiet", quiet, "suppress progress lines");

    // grid
    std::string grid_config, grid_maze, grid_out = "records";
    int grid_runs = 50;
    std::string grid_mutation, grid_stack_ops, grid_contradiction, grid_default;
    CLI::App* grid = app.add_subcommand("grid", "Run the ablation grid");
    grid->add_option("--config", grid_config, "base configuration file")->required();
    grid->add_option("--maze", grid_maze, "maze map file")->required();
    grid->add_option("--out", grid_out, "directory for run records");
    grid->add_option("--runs", grid_runs, "independent runs per cell")
        ->check(CLI::PositiveNumber);
    grid->add_option("--mutation", grid_mutation, "restrict to bitflip or uniform")
        ->check(CLI::IsMember({"bitflip", "uniform"}));
    grid->add_option("--stack-ops", grid_stack_ops, "restrict to all or nodelabel")
        ->check(CLI::IsMember({"all", "nodelabel"}));
    grid->add_option("--contradiction", grid_contradiction,
                     "restrict to contradiction or nocontradiction")
        ->check(CLI::IsMember({"contradiction", "nocontradiction"}));
    grid->add_option("--default-action", grid_default, "restrict to random or finish")
        ->check(CLI::IsMember({"random", "finish"}));

    // stats
    std::vector<std::string> record_paths, fixes;
    std::string factor;
    bool quartiles = false;
    std::optional<double> target;
    int start_cells = 0;
    CLI::App* stats = app.add_subcommand("stats", "Analyse stored run records");
    stats->add_option("--records", record_paths, "record files or directories")->required();
    stats->add_option("--factor", factor,
                      "mutation | stack-ops | contradiction | default-action | all");
    stats->add_option("--fix", fixes, "condition on FACTOR=LEVEL before testing");
    stats->add_flag("--quartiles", quartiles, "print final-fitness quartiles");
    stats->add_option("--target", target, "convergence-cost fitness target");
    stats->add_option("--start-cells", start_cells, "NS for the convergence cost");

    // oracle
    std::string oracle_maze;
    bool per_cell = false;
    CLI::App* oracle = app.add_subcommand("oracle", "Shortest-path mean steps for a maze");
    oracle->add_option("--maze", oracle_maze, "maze map file")->required();
    oracle->add_flag("--per-cell", per_cell, "also print per-start-cell distances");

    // build
    std::string build_genome, build_out, build_code;
    bool build_typed = false, build_nocontra = false, build_tokens = false;
    bool build_dump = false;
    CLI::App* build = app.add_subcommand("build", "Build a graph from a genome file");
    build->add_option("--genome", build_genome, "whitespace-separated codon integers");
    build->add_option("--out", build_out, "write DOT here (default stdout)");
    build->add_option("--code", build_code, "genetic code table file");
    build->add_flag("--typed-stack-ops", build_typed, "scoped swap/roll/unroll variants");
    build->add_flag("--no-contradiction", build_nocontra, "filter contradictory conditions");
    build->add_flag("--tokens", build_tokens, "print the token sequence instead of DOT");
    build->add_flag("--dump-code", build_dump, "print the active codon table and exit");

    // eval
    std::string eval_genome, eval_maze, eval_code;
    bool eval_typed = false, eval_nocontra = false, eval_trace = false;
    std::string eval_edge = "first", eval_default = "random";
    int eval_cap = 100, eval_repeat = 1;
    std::uint64_t eval_seed = 1;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate a genome on a maze");
    eval->add_option("--genome", eval_genome, "whitespace-separated codon integers")->required();
    eval->add_option("--maze", eval_maze, "maze map file")->required();
    eval->add_option("--code", eval_code, "genetic code table file");
    eval->add_flag("--typed-stack-ops", eval_typed, "scoped swap/roll/unroll variants");
    eval->add_flag("--no-contradiction", eval_nocontra, "filter contradictory conditions");
    eval->add_option("--edge-choice", eval_edge, "first | random")
        ->check(CLI::IsMember({"first", "random"}));
    eval->add_option("--default-action", eval_default, "random | finish")
        ->check(CLI::IsMember({"random", "finish"}));
    eval->add_option("--step-cap", eval_cap, "max steps per trial")->check(CLI::PositiveNumber);
    eval->add_option("--seed", eval_seed, "evaluation seed");
    eval->add_option("--repeat", eval_repeat, "average over this many evaluations")
        ->check(CLI::PositiveNumber);
    eval->add_flag("--trace", eval_trace, "print per-step trial traces first");

    CLI11_PARSE(app, argc, argv);

    try {
        if (evolve->parsed())
            return run_evolve(config_path, maze_path, out_path, export_prefix, seed_override,
                              quiet);
        if (grid->parsed())
            return run_grid_command(grid_config, grid_maze, grid_out, grid_runs, grid_mutation,
                                    grid_stack_ops, grid_contradiction, grid_default);
        if (stats->parsed()) {
            if (target && start_cells <= 0)
                throw std::invalid_argument("--target needs --start-cells");
            return run_stats(record_paths, factor, fixes, quartiles, target, start_cells);
        }
        if (oracle->parsed()) return run_oracle(oracle_maze, per_cell);
        if (build->parsed())
            return run_build(build_genome, build_out, build_code, build_typed, build_nocontra,
                             build_tokens, build_dump);
        if (eval->parsed())
            return run_eval(eval_genome, eval_maze, eval_code, eval_typed, eval_nocontra,
                            eval_edge, eval_default, eval_cap, eval_seed, eval_repeat,
                            eval_trace);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
