#ifndef ATNEVO_ATN_HPP
#define ATNEVO_ATN_HPP

/*
 * Augmented transition network produced by the graph builder.
 *
 * Internal node ids: Start = 0, End = 1, interior nodes from 2 upward in
 * creation order. Edges are stored globally in creation order; out_edges
 * preserves that order per source node, which is what the first-eligible
 * rule iterates over.
 */

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tokens.hpp"

namespace atnevo {

using NodeId = int;

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    std::vector<Condition> conditions;  // push order
    std::vector<Dir> actions;           // push order; runtime performs the last
    bool operator==(const Edge&) const = default;
};

struct Atn {
    static constexpr NodeId start = 0;
    static constexpr NodeId end = 1;

    int node_count = 2;
    std::vector<Edge> edges;

    bool operator==(const Atn& other) const {
        return node_count == other.node_count && edges == other.edges;
    }

    NodeId add_node() {
        out_.emplace_back();
        return node_count++;
    }

    void add_edge(Edge e) {
        while (out_.size() < static_cast<std::size_t>(node_count)) out_.emplace_back();
        out_[static_cast<std::size_t>(e.src)].push_back(static_cast<int>(edges.size()));
        edges.push_back(std::move(e));
    }

    // Edge indices leaving `node`, in creation order.
    std::span<const int> out_edges(NodeId node) const {
        if (static_cast<std::size_t>(node) >= out_.size()) return {};
        return out_[static_cast<std::size_t>(node)];
    }

  private:
    std::vector<std::vector<int>> out_ = std::vector<std::vector<int>>(2);
};

// Figure conventions: conditions as f/t/e plus direction, actions with a
// trailing '!', conditions line above actions line.
inline char condition_prefix(Cell what) {
    switch (what) {
        case Cell::Empty: return 'e';
        case Cell::Food: return 'f';
        case Cell::Tree: return 't';
    }
    return '?';
}

inline std::string edge_label(const Edge& e) {
    std::string conds;
    for (const Condition& c : e.conditions) {
        if (!conds.empty()) conds += ' ';
        conds += condition_prefix(c.what);
        conds += dir_name(c.dir);
    }
    std::string acts;
    for (Dir a : e.actions) {
        if (!acts.empty()) acts += ' ';
        acts += dir_name(a);
        acts += '!';
    }
    if (conds.empty()) return acts;
    if (acts.empty()) return conds;
    return conds + "\\n" + acts;
}

// Export numbering: Start stays 0, interior nodes follow in creation order,
// End becomes the largest number.
inline void write_dot(const Atn& atn, std::ostream& out, const std::string& name = "atn") {
    const auto display = [&atn](NodeId id) {
        if (id == Atn::start) return 0;
        if (id == Atn::end) return atn.node_count - 1;
        return id - 1;
    };
    out << "digraph " << name << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    out << "  " << display(Atn::start) << " [penwidth=2];\n";
    out << "  " << display(Atn::end) << " [shape=doublecircle];\n";
    for (NodeId id = 2; id < atn.node_count; ++id) out << "  " << display(id) << ";\n";
    for (const Edge& e : atn.edges)
        out << "  " << display(e.src) << " -> " << display(e.dst) << " [label=\"" << edge_label(e)
            << "\"];\n";
    out << "}\n";
}

}  // namespace atnevo

#endif
