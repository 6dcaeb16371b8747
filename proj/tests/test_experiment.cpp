#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <atnevo/experiment.hpp>

#include "test_util.hpp"

using namespace atnevo;

namespace {

const Maze& corridor() {
    static const Maze maze = load_maze("# name=corridor\nTTTTTT\nT...FT\nTTTTTT");
    return maze;
}

EvolutionConfig grid_base() {
    EvolutionConfig cfg;
    cfg.population_size = 8;
    cfg.truncation_size = 2;
    cfg.genome_length = 20;
    cfg.generations = 2;
    cfg.seed = 2024;
    return cfg;
}

// One record per ablation cell with a prescribed final fitness.
std::vector<RunRecord> synthetic_grid(const std::vector<double>& fitness_by_cell) {
    std::vector<RunRecord> records;
    for (int i = 0; i < 16; ++i) {
        RunRecord r;
        r.config = grid_base();
        AblationCell::from_index(i).apply_to(r.config);
        r.champion_fitness = fitness_by_cell[static_cast<std::size_t>(i)];
        r.history = {{0, r.champion_fitness, r.champion_fitness, r.champion_fitness}};
        records.push_back(std::move(r));
    }
    return records;
}

RunRecord record_with_history(std::vector<double> best_by_generation, int population_size) {
    RunRecord r;
    r.config.population_size = population_size;
    for (std::size_t g = 0; g < best_by_generation.size(); ++g)
        r.history.push_back({static_cast<int>(g), best_by_generation[g], 0, 0});
    return r;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("ablation cells index all sixteen factor combinations") {
    const std::vector<AblationCell> cells = all_cells();
    REQUIRE(cells.size() == 16);
    for (int i = 0; i < 16; ++i) {
        CHECK(cells[static_cast<std::size_t>(i)].index() == i);
        CHECK(AblationCell::from_index(i).index() == i);
    }
    CHECK(AblationCell::from_index(0).name() == "bitflip-all-contradiction-random");
    CHECK(AblationCell::from_index(5).name() == "bitflip-nodelabel-contradiction-finish");
    CHECK(AblationCell::from_index(15).name() == "uniform-nodelabel-nocontradiction-finish");
    CHECK_THROWS_AS(AblationCell::from_index(16), std::invalid_argument);
    CHECK_THROWS_AS(AblationCell::from_index(-1), std::invalid_argument);

    EvolutionConfig cfg = grid_base();
    AblationCell::from_index(15).apply_to(cfg);
    CHECK(cfg.mutation.kind == MutationKind::UniformToken);
    CHECK(cfg.encoding == Genome::Encoding::Integer);
    CHECK(cfg.build.typed_stack_ops);
    CHECK(cfg.build.no_contradiction);
    CHECK(cfg.policy.default_action == DefaultAction::Finish);
    AblationCell::from_index(0).apply_to(cfg);
    CHECK(cfg.encoding == Genome::Encoding::Bitstring);
}

TEST_CASE("grid restrictions keep only matching cells") {
    CHECK(cells_matching({}, {}, {}, {}).size() == 16);
    const auto uniform_only = cells_matching(MutationKind::UniformToken, {}, {}, {});
    REQUIRE(uniform_only.size() == 8);
    for (const AblationCell& c : uniform_only) CHECK(c.mutation == MutationKind::UniformToken);
    CHECK(cells_matching(MutationKind::UniformToken, {}, {}, DefaultAction::Finish).size() == 4);
    const auto one = cells_matching(MutationKind::BitFlip, true, false, DefaultAction::Random);
    REQUIRE(one.size() == 1);
    CHECK(one[0].index() == 4);
    // Restricting to level "false" must not be treated as "unrestricted".
    CHECK(cells_matching({}, false, {}, {}).size() == 8);
}

TEST_CASE("grid runs reproduce and expose per-run seeds") {
    const EvolutionConfig base = grid_base();
    const std::vector<AblationCell> cells = {AblationCell::from_index(3),
                                             AblationCell::from_index(12)};
    const std::vector<RunRecord> records = run_grid(corridor(), cells, 2, base);
    REQUIRE(records.size() == 4);

    const std::vector<RunRecord> again = run_grid(corridor(), cells, 2, base);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].champion == again[i].champion);
        CHECK(records[i].champion_fitness == again[i].champion_fitness);
    }

    // Cell-major layout: records[2i + k] is cells[i], run k, and each run
    // replays standalone from its derived seed.
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (int run = 0; run < 2; ++run) {
            EvolutionConfig cfg = base;
            cells[i].apply_to(cfg);
            cfg.seed = derive_run_seed(derive_cell_seed(base.seed, cells[i].index()), run);
            const RunRecord& from_grid = records[2 * i + static_cast<std::size_t>(run)];
            CHECK(from_grid.config == cfg);
            const RunRecord solo = run_evolution(cfg, corridor());
            CHECK(solo.champion == from_grid.champion);
            CHECK(solo.champion_fitness == from_grid.champion_fitness);
        }
    }

    CHECK_THROWS_AS(run_grid(corridor(), cells, 0, base), std::invalid_argument);
}

TEST_CASE("distinct cells and runs get distinct seeds") {
    std::set<std::uint64_t> seeds;
    for (int cell = 0; cell < 16; ++cell)
        for (int run = 0; run < 50; ++run)
            seeds.insert(derive_run_seed(derive_cell_seed(7, cell), run));
    CHECK(seeds.size() == 16 * 50);
}

TEST_CASE("factor reports compare level means with a two-sample test") {
    // Uniform cells (index bit 8) score 10 better than bitflip cells.
    std::vector<double> fitness(16);
    for (int i = 0; i < 16; ++i)
        fitness[static_cast<std::size_t>(i)] = (i & 8 ? 10.0 : 20.0) + 0.01 * i;
    const std::vector<RunRecord> records = synthetic_grid(fitness);

    const FactorReport rep = factor_ttest(records, Factor::Mutation);
    CHECK(rep.n_level0 == 8);
    CHECK(rep.n_level1 == 8);
    CHECK(rep.mean_level0 == Catch::Approx(20.035).margin(1e-12));
    CHECK(rep.mean_level1 == Catch::Approx(10.115).margin(1e-12));
    CHECK(rep.ttest.p < 1e-6);
    CHECK(rep.ttest.t > 0);  // level 0 scored more steps

    // The t statistic flips sign when the factor levels swap roles.
    const FactorReport action = factor_ttest(records, Factor::DefaultNodeAction);
    CHECK(action.n_level0 == 8);
    CHECK(action.mean_level0 < action.mean_level1);
    CHECK(action.ttest.t < 0);
}

TEST_CASE("conditioned comparisons filter before testing") {
    std::vector<double> fitness(16);
    for (int i = 0; i < 16; ++i)
        fitness[static_cast<std::size_t>(i)] = (i & 8 ? 10.0 : 20.0) + 0.01 * i;
    const std::vector<RunRecord> records = synthetic_grid(fitness);

    const std::vector<RunRecord> typed_only = filter_level(records, Factor::StackOps, 1);
    REQUIRE(typed_only.size() == 8);
    for (const RunRecord& r : typed_only) CHECK(r.config.build.typed_stack_ops);

    const FactorReport rep = factor_ttest(typed_only, Factor::Mutation);
    CHECK(rep.n_level0 == 4);
    CHECK(rep.n_level1 == 4);
    CHECK(rep.mean_level0 == Catch::Approx(20.055).margin(1e-12));
    CHECK(rep.mean_level1 == Catch::Approx(10.135).margin(1e-12));
}

TEST_CASE("factor tests require two runs per level") {
    std::vector<double> fitness(16, 1.0);
    std::vector<RunRecord> records = synthetic_grid(fitness);
    records.resize(9);  // one uniform record only
    CHECK_THROWS_AS(factor_ttest(records, Factor::Mutation), std::invalid_argument);
}

TEST_CASE("final fitness quartiles summarize champion scores") {
    std::vector<double> fitness(16);
    for (int i = 0; i < 16; ++i) fitness[static_cast<std::size_t>(i)] = i + 1.0;
    const std::vector<RunRecord> records = synthetic_grid(fitness);
    const QuartileSummary q = final_fitness_quartiles(records);
    CHECK(q.min == 1.0);
    CHECK(q.max == 16.0);
    CHECK(q.median == Catch::Approx(8.5).margin(1e-12));
    CHECK(q.q1 == Catch::Approx(4.75).margin(1e-12));
    CHECK(q.q3 == Catch::Approx(12.25).margin(1e-12));
}

TEST_CASE("convergence cost matches the published formulas") {
    // 50 runs, every one first meets the target at generation 10.
    std::vector<double> best(101, 50.0);
    for (std::size_t g = 10; g < best.size(); ++g) best[g] = 1.0;
    std::vector<RunRecord> records(50, record_with_history(best, 300));

    const ConvergenceCost cost = convergence_cost(records, 1.0, 18);
    CHECK(cost.attainable);
    CHECK(cost.runs == 50);
    CHECK(cost.crossed == 50);
    CHECK(cost.pr == 100.0);
    CHECK(cost.ng == 10.0);
    CHECK(cost.ne == Catch::Approx(3000.0).margin(1e-9));
    CHECK(cost.nt == Catch::Approx(54000.0).margin(1e-9));

    // Half the runs crossing doubles the per-success cost.
    std::vector<RunRecord> half = records;
    for (std::size_t i = 0; i < 25; ++i)
        half[i] = record_with_history(std::vector<double>(101, 50.0), 300);
    const ConvergenceCost partial = convergence_cost(half, 1.0, 18);
    CHECK(partial.pr == 50.0);
    CHECK(partial.crossed == 25);
    CHECK(partial.ne == Catch::Approx(6000.0).margin(1e-9));

    const ConvergenceCost never = convergence_cost(records, 0.5, 18);
    CHECK_FALSE(never.attainable);
    CHECK(never.crossed == 0);
    CHECK(never.nt == 0.0);

    CHECK_THROWS_AS(convergence_cost({}, 1.0, 18), std::invalid_argument);
    CHECK_THROWS_AS(convergence_cost(records, 0.0, 18), std::invalid_argument);
}

TEST_CASE("looser targets never cost more while every run still crosses") {
    // Strictly decreasing best curves, so each run crosses every target and
    // the crossing generation can only move earlier as the target loosens.
    std::vector<RunRecord> records;
    for (int r = 0; r < 20; ++r) {
        std::vector<double> best;
        for (int g = 0; g <= 100; ++g)
            best.push_back(100.0 - g * (0.6 + 0.004 * r));
        records.push_back(record_with_history(best, 300));
    }
    double previous_nt = std::numeric_limits<double>::infinity();
    for (const double target : {45.0, 50.0, 60.0, 75.0, 90.0}) {
        const ConvergenceCost cost = convergence_cost(records, target, 18);
        REQUIRE(cost.pr == 100.0);
        CHECK(cost.nt <= previous_nt);
        previous_nt = cost.nt;
    }
}

TEST_CASE("champion export writes the graph and the per-cell steps table") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto dot_path = dir / "atnevo_test_champion.dot";
    const auto steps_path = dir / "atnevo_test_champion_steps.csv";

    RunRecord record;
    record.config = grid_base();
    record.config.policy.edge_choice = EdgeChoice::FirstEligible;
    record.maze_name = "corridor";
    // Start -> X on goE!, then X -> X on goE!: walks east until the food.
    record.champion = genome_from_codons({16, 35, 27, 35, 24}, Genome::Encoding::Integer);
    const RunRecord before = record;

    export_champion(record, corridor(), dot_path.string(), steps_path.string());
    CHECK(record.graph_path == dot_path.string());
    CHECK(record.champion == before.champion);

    const std::string dot = slurp(dot_path);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("E!") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);

    std::istringstream steps(slurp(steps_path));
    std::string line;
    REQUIRE(std::getline(steps, line));
    CHECK(line == "row,col,steps,found_food,oracle_steps");
    std::size_t rows = 0;
    while (std::getline(steps, line)) {
        if (line.empty()) continue;
        ++rows;
        int row = 0, col = 0, taken = 0, found = 0, oracle = 0;
        char c = 0;
        std::istringstream fields(line);
        fields >> row >> c >> col >> c >> taken >> c >> found >> c >> oracle;
        REQUIRE(fields);
        CHECK(row == 1);
        CHECK(found == 1);
        CHECK(taken == oracle);  // this controller is optimal everywhere
    }
    CHECK(rows == corridor().start_cells.size());

    std::filesystem::remove(dot_path);
    std::filesystem::remove(steps_path);
}

TEST_CASE("edgeless champions export a start and end only graph") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto dot_path = dir / "atnevo_test_empty.dot";
    const auto steps_path = dir / "atnevo_test_empty_steps.csv";

    RunRecord record;
    record.config = grid_base();
    record.champion = genome_from_codons({16}, Genome::Encoding::Integer);
    export_champion(record, corridor(), dot_path.string(), steps_path.string());

    const std::string dot = slurp(dot_path);
    CHECK(dot.find("->") == std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);

    std::filesystem::remove(dot_path);
    std::filesystem::remove(steps_path);
}
