#ifndef ATNEVO_RUNTIME_HPP
#define ATNEVO_RUNTIME_HPP

/*
 * Executes an Atn as a maze controller.
 *
 * Per time step: collect eligible out-edges of the current node (creation
 * order); choose one per policy; perform the LAST action on the chosen edge
 * (a random action if the edge carries none); move to the edge's target
 * node. With no eligible edge, Random performs a random action in place and
 * Finish aborts the trial. A trial ends on food, on entering End, or at the
 * step cap; the latter two score step-cap steps.
 */

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "atn.hpp"
#include "maze.hpp"
#include "rng.hpp"

namespace atnevo {

enum class EdgeChoice : std::uint8_t { FirstEligible, RandomEligible };
enum class DefaultAction : std::uint8_t { Random, Finish };

struct RunPolicy {
    EdgeChoice edge_choice = EdgeChoice::FirstEligible;
    DefaultAction default_action = DefaultAction::Random;
    int step_cap = 100;
    bool operator==(const RunPolicy&) const = default;
};

struct TrialResult {
    int steps = 0;
    bool found_food = false;
    bool failed = false;  // Finish fired with no eligible edge
};

inline bool edge_eligible(const Edge& edge, const Percept& percept) {
    for (const Condition& c : edge.conditions)
        if (percept_at(percept, c.dir) != c.what) return false;
    return true;
}

inline std::vector<int> eligible_edges(const Atn& atn, NodeId node, const Percept& percept) {
    std::vector<int> out;
    for (int idx : atn.out_edges(node))
        if (edge_eligible(atn.edges[static_cast<std::size_t>(idx)], percept)) out.push_back(idx);
    return out;
}

namespace detail {

inline void trace_step(std::ostream* trace, int step, NodeId node, const Percept& percept,
                       int edge_index, const char* action, const Coord& pos, const char* outcome) {
    if (!trace) return;
    *trace << "step=" << step << " node=" << node << " percept=" << percept_string(percept)
           << " edge=";
    if (edge_index < 0) *trace << "DEFAULT";
    else *trace << edge_index;
    *trace << " action=" << action << " pos=(" << pos.row << ',' << pos.col << ") outcome="
           << outcome << '\n';
}

}  // namespace detail

inline TrialResult run_trial(const Atn& atn, const Maze& maze, Coord start_cell,
                             const RunPolicy& policy, RngStream rng,
                             std::ostream* trace = nullptr) {
    if (policy.step_cap < 1) throw std::invalid_argument("step cap must be >= 1");
    AgentState state{start_cell, 0};
    NodeId node = Atn::start;

    while (state.steps_taken < policy.step_cap) {
        const Percept& percept = maze.percept(state.position);
        const std::vector<int> eligible = eligible_edges(atn, node, percept);

        int edge_index = -1;
        Dir action{};
        if (eligible.empty()) {
            if (policy.default_action == DefaultAction::Finish) {
                detail::trace_step(trace, state.steps_taken + 1, node, percept, -1, "FINISH",
                                   state.position, "failed");
                return {policy.step_cap, false, true};
            }
            action = all_dirs[rng.uniform_below(8)];
        } else {
            edge_index = policy.edge_choice == EdgeChoice::FirstEligible
                             ? eligible.front()
                             : eligible[rng.uniform_below(eligible.size())];
            const Edge& edge = atn.edges[static_cast<std::size_t>(edge_index)];
            action = edge.actions.empty() ? all_dirs[rng.uniform_below(8)] : edge.actions.back();
        }

        const StepOutcome outcome = step(maze, state, action);
        const std::string action_name = "go" + std::string(dir_name(action)) + "!";
        detail::trace_step(trace, state.steps_taken, node, percept, edge_index, action_name.c_str(),
                           state.position,
                           outcome == StepOutcome::FoundFood ? "food"
                           : outcome == StepOutcome::Blocked ? "blocked"
                                                             : "moved");
        if (outcome == StepOutcome::FoundFood) return {state.steps_taken, true, false};
        if (edge_index >= 0) {
            node = atn.edges[static_cast<std::size_t>(edge_index)].dst;
            if (node == Atn::end) return {policy.step_cap, false, false};
        }
    }
    return {policy.step_cap, false, false};
}

// One trial per start cell; a trial scores its steps when food is found and
// step-cap otherwise (run_trial already reports cap for those cases).
inline double evaluate(const Atn& atn, const Maze& maze, const RunPolicy& policy,
                       const RngStream& rng) {
    long long total = 0;
    for (std::size_t i = 0; i < maze.start_cells.size(); ++i)
        total += run_trial(atn, maze, maze.start_cells[i], policy, rng.derive(i)).steps;
    return static_cast<double>(total) / static_cast<double>(maze.start_cells.size());
}

}  // namespace atnevo

#endif
