#ifndef ATNEVO_MAZE_HPP
#define ATNEVO_MAZE_HPP

/*
 * Grid worlds. Alphabet: '.' empty, 'T' tree, 'F' food. The border must be
 * all trees, so an agent on any start cell always has eight in-bounds
 * neighbours. Start cells are the empty cells in row-major order; the percept
 * of a cell is its eight neighbours in canonical direction order.
 *
 * The oracle is multi-source BFS from the food cells over the 8-connected
 * empty-cell graph: the minimum number of steps a clairvoyant agent needs.
 * Blocked moves cost a step at run time, so no policy can beat it.
 */

#include <array>
#include <cstdint>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace atnevo {

using Percept = std::array<Cell, 8>;

inline Cell percept_at(const Percept& p, Dir d) { return p[static_cast<std::size_t>(d)]; }

inline std::string percept_string(const Percept& p) {
    std::string s(8, '?');
    for (std::size_t i = 0; i < 8; ++i) s[i] = cell_char(p[i]);
    return s;
}

struct Maze {
    std::string name;
    int width = 0;
    int height = 0;
    std::vector<Cell> cells;            // row-major
    std::vector<Coord> start_cells;     // empty cells, row-major order
    std::vector<Coord> food_cells;

    bool in_bounds(Coord c) const {
        return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
    }
    Cell at(Coord c) const {
        return in_bounds(c) ? cells[static_cast<std::size_t>(c.row) * width + c.col] : Cell::Tree;
    }
    const Percept& percept(Coord c) const {
        return percepts_[static_cast<std::size_t>(c.row) * width + c.col];
    }

    void build_percepts() {
        percepts_.assign(cells.size(), Percept{});
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c) {
                Percept& p = percepts_[static_cast<std::size_t>(r) * width + c];
                for (std::size_t i = 0; i < 8; ++i) {
                    const Coord d = delta(all_dirs[i]);
                    p[i] = at({r + d.row, c + d.col});
                }
            }
    }

  private:
    std::vector<Percept> percepts_;
};

inline Maze load_maze(std::string_view text) {
    Maze maze;
    std::vector<std::string> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == '#') {
            const std::size_t eq = line.find("name=");
            if (eq != std::string::npos) {
                std::string value = line.substr(eq + 5);
                const std::size_t last = value.find_last_not_of(" \t");
                maze.name = value.substr(0, last == std::string::npos ? 0 : last + 1);
            }
            continue;
        }
        if (line.empty()) continue;
        rows.push_back(line);
    }
    if (rows.empty()) throw std::invalid_argument("maze: no grid rows");

    maze.height = static_cast<int>(rows.size());
    maze.width = static_cast<int>(rows.front().size());
    maze.cells.reserve(static_cast<std::size_t>(maze.height) * maze.width);
    for (int r = 0; r < maze.height; ++r) {
        if (static_cast<int>(rows[r].size()) != maze.width)
            throw std::invalid_argument("maze: ragged row " + std::to_string(r));
        for (int c = 0; c < maze.width; ++c) {
            const Cell cell = cell_from_char(rows[r][c]);
            maze.cells.push_back(cell);
            const bool border = r == 0 || c == 0 || r == maze.height - 1 || c == maze.width - 1;
            if (border && cell != Cell::Tree)
                throw std::invalid_argument("maze: border cell is not a tree at row " +
                                            std::to_string(r) + " col " + std::to_string(c));
            if (cell == Cell::Empty) maze.start_cells.push_back({r, c});
            if (cell == Cell::Food) maze.food_cells.push_back({r, c});
        }
    }
    if (maze.food_cells.empty()) throw std::invalid_argument("maze: no food cell");
    if (maze.start_cells.empty()) throw std::invalid_argument("maze: no start cell");
    maze.build_percepts();
    return maze;
}

inline Maze load_maze_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open maze file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Maze maze = load_maze(buf.str());
    if (maze.name.empty()) {
        std::size_t slash = path.find_last_of("/\\");
        std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
        const std::size_t dot = base.find_last_of('.');
        if (dot != std::string::npos && dot > 0) base.erase(dot);
        maze.name = base;
    }
    return maze;
}

enum class StepOutcome : std::uint8_t { Moved, Blocked, FoundFood };

struct AgentState {
    Coord position;
    int steps_taken = 0;
};

// A step into a tree blocks (position unchanged) but still costs the step.
inline StepOutcome step(const Maze& maze, AgentState& state, Dir dir) {
    ++state.steps_taken;
    const Coord d = delta(dir);
    const Coord target{state.position.row + d.row, state.position.col + d.col};
    switch (maze.at(target)) {
        case Cell::Tree: return StepOutcome::Blocked;
        case Cell::Food: state.position = target; return StepOutcome::FoundFood;
        case Cell::Empty: state.position = target; return StepOutcome::Moved;
    }
    return StepOutcome::Blocked;
}

// Steps-to-food for every cell; -1 for trees and unreachable cells, 0 on food.
inline std::vector<int> bfs_distances(const Maze& maze) {
    std::vector<int> dist(maze.cells.size(), -1);
    std::queue<Coord> frontier;
    for (const Coord& f : maze.food_cells) {
        dist[static_cast<std::size_t>(f.row) * maze.width + f.col] = 0;
        frontier.push(f);
    }
    while (!frontier.empty()) {
        const Coord cur = frontier.front();
        frontier.pop();
        const int base = dist[static_cast<std::size_t>(cur.row) * maze.width + cur.col];
        for (Dir d : all_dirs) {
            const Coord dd = delta(d);
            const Coord next{cur.row + dd.row, cur.col + dd.col};
            if (!maze.in_bounds(next) || maze.at(next) != Cell::Empty) continue;
            int& slot = dist[static_cast<std::size_t>(next.row) * maze.width + next.col];
            if (slot != -1) continue;
            slot = base + 1;
            frontier.push(next);
        }
    }
    return dist;
}

inline long long oracle_total_steps(const Maze& maze) {
    const std::vector<int> dist = bfs_distances(maze);
    long long total = 0;
    for (const Coord& s : maze.start_cells) {
        const int d = dist[static_cast<std::size_t>(s.row) * maze.width + s.col];
        if (d < 0)
            throw std::invalid_argument("maze: food unreachable from row " + std::to_string(s.row) +
                                        " col " + std::to_string(s.col));
        total += d;
    }
    return total;
}

inline double oracle_mean_steps(const Maze& maze) {
    return static_cast<double>(oracle_total_steps(maze)) /
           static_cast<double>(maze.start_cells.size());
}

}  // namespace atnevo

#endif
