#ifndef ATNEVO_GRAPH_BUILDER_HPP
#define ATNEVO_GRAPH_BUILDER_HPP

/*
 * Stack machine turning a token stream into an Atn.
 *
 * Interpretation is total: a token whose stack requirements are unmet is a
 * no-op, so every one of the 64^L token strings builds some graph. The stack
 * holds NodeRefs (aliases of graph nodes, not the nodes themselves) and
 * Labels (pushed Condition/Action values). Connects consume Labels but never
 * NodeRefs; deleting a NodeRef never deletes the graph node.
 */

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "atn.hpp"
#include "tokens.hpp"

namespace atnevo {

struct NodeRef {
    NodeId id;
    bool operator==(const NodeRef&) const = default;
};

using StackItem = std::variant<NodeRef, Condition, Action>;

inline bool is_node_ref(const StackItem& item) { return std::holds_alternative<NodeRef>(item); }
inline bool is_label(const StackItem& item) { return !is_node_ref(item); }

struct BuildConfig {
    bool no_contradiction = false;
    bool typed_stack_ops = false;
    bool operator==(const BuildConfig&) const = default;
};

// Keeps the first condition per direction, drops later ones on a direction
// that has already been used; order otherwise preserved.
inline std::vector<Condition> filter_contradictions(const std::vector<Condition>& conditions) {
    std::array<bool, 8> used{};
    std::vector<Condition> kept;
    kept.reserve(conditions.size());
    for (const Condition& c : conditions) {
        auto& flag = used[static_cast<std::size_t>(c.dir)];
        if (flag) continue;
        flag = true;
        kept.push_back(c);
    }
    return kept;
}

class GraphBuilder {
  public:
    explicit GraphBuilder(BuildConfig config = {}) : config_(config) {}

    const std::vector<StackItem>& stack() const { return stack_; }
    const Atn& graph() const { return graph_; }

    void apply(const Token& token) {
        std::visit([this](const auto& t) { apply_impl(t); }, token);
    }

    // Finalization: leftover Labels become one edge into End, sourced at the
    // topmost remaining NodeRef or at Start. The builder is reset afterwards.
    Atn finish() {
        NodeId src = Atn::start;
        if (const auto top = top_node()) src = node_at(*top);
        bool any_label = false;
        for (const StackItem& item : stack_)
            if (is_label(item)) any_label = true;
        if (any_label) emit_edge(src, Atn::end, 0);
        stack_.clear();
        Atn out = std::move(graph_);
        graph_ = Atn{};
        return out;
    }

  private:
    void apply_impl(const Condition& c) { stack_.emplace_back(c); }
    void apply_impl(const Action& a) { stack_.emplace_back(a); }

    void apply_impl(const StructureToken& t) {
        switch (t.op) {
            case StructureOp::Node:
                stack_.emplace_back(NodeRef{graph_.add_node()});
                return;
            case StructureOp::Connect: {
                const auto top = top_node();
                if (!top) return;
                const auto below = top_node(*top);
                if (!below) return;
                emit_edge(node_at(*below), node_at(*top), *below + 1);
                return;
            }
            case StructureOp::ConnectSelf:
            case StructureOp::ConnectStart:
            case StructureOp::ConnectEnd: {
                const auto top = top_node();
                if (!top) return;
                // The label scope reaches down to the next NodeRef below T,
                // exactly the region connect would consume above its source.
                const auto below = top_node(*top);
                const std::size_t from = below ? *below + 1 : 0;
                const NodeId id = node_at(*top);
                if (t.op == StructureOp::ConnectSelf) emit_edge(id, id, from);
                else if (t.op == StructureOp::ConnectStart) emit_edge(Atn::start, id, from);
                else emit_edge(id, Atn::end, from);
                return;
            }
        }
    }

    void apply_impl(const StackToken& t) {
        switch (t.op) {
            case StackOp::Swap: {
                if (t.scope == StackScope::All) {
                    if (stack_.size() >= 2) std::swap(stack_[stack_.size() - 1], stack_[stack_.size() - 2]);
                    return;
                }
                const auto p = kind_positions(t.scope == StackScope::Node);
                if (p.size() >= 2) std::swap(stack_[p[p.size() - 1]], stack_[p[p.size() - 2]]);
                return;
            }
            case StackOp::Dup: {
                // dup node aliases the topmost NodeRef on top of the stack;
                // dup label copies the topmost Label in place.
                if (t.scope == StackScope::Node) {
                    if (const auto top = top_node()) stack_.push_back(stack_[*top]);
                } else {
                    if (const auto top = top_label())
                        stack_.insert(stack_.begin() + static_cast<std::ptrdiff_t>(*top) + 1,
                                      stack_[*top]);
                }
                return;
            }
            case StackOp::Del: {
                const auto top = t.scope == StackScope::Node ? top_node() : top_label();
                if (top) stack_.erase(stack_.begin() + static_cast<std::ptrdiff_t>(*top));
                return;
            }
            case StackOp::Roll:
            case StackOp::Unroll: {
                const bool to_bottom = t.op == StackOp::Roll;
                if (t.scope == StackScope::All) {
                    if (stack_.size() < 2) return;
                    if (to_bottom) {
                        StackItem item = std::move(stack_.back());
                        stack_.pop_back();
                        stack_.insert(stack_.begin(), std::move(item));
                    } else {
                        StackItem item = std::move(stack_.front());
                        stack_.erase(stack_.begin());
                        stack_.push_back(std::move(item));
                    }
                    return;
                }
                const auto p = kind_positions(t.scope == StackScope::Node);
                if (p.size() < 2) return;
                if (to_bottom) {
                    StackItem item = std::move(stack_[p.back()]);
                    for (std::size_t i = p.size() - 1; i > 0; --i) stack_[p[i]] = std::move(stack_[p[i - 1]]);
                    stack_[p.front()] = std::move(item);
                } else {
                    StackItem item = std::move(stack_[p.front()]);
                    for (std::size_t i = 0; i + 1 < p.size(); ++i) stack_[p[i]] = std::move(stack_[p[i + 1]]);
                    stack_[p.back()] = std::move(item);
                }
                return;
            }
        }
    }

    // Topmost NodeRef strictly below `below` (stack index), or topmost overall.
    std::optional<std::size_t> top_node(std::size_t below = static_cast<std::size_t>(-1)) const {
        const std::size_t limit = below == static_cast<std::size_t>(-1) ? stack_.size() : below;
        for (std::size_t i = limit; i-- > 0;)
            if (is_node_ref(stack_[i])) return i;
        return std::nullopt;
    }

    std::optional<std::size_t> top_label() const {
        for (std::size_t i = stack_.size(); i-- > 0;)
            if (is_label(stack_[i])) return i;
        return std::nullopt;
    }

    std::vector<std::size_t> kind_positions(bool nodes) const {
        std::vector<std::size_t> p;
        for (std::size_t i = 0; i < stack_.size(); ++i)
            if (is_node_ref(stack_[i]) == nodes) p.push_back(i);
        return p;
    }

    NodeId node_at(std::size_t pos) const { return std::get<NodeRef>(stack_[pos]).id; }

    // Creates src->dst labelled with every Label at stack position >= from
    // (push order) and removes those Labels; NodeRefs stay where they are.
    void emit_edge(NodeId src, NodeId dst, std::size_t from) {
        Edge e;
        e.src = src;
        e.dst = dst;
        std::vector<StackItem> rest;
        rest.reserve(stack_.size());
        for (std::size_t i = 0; i < stack_.size(); ++i) {
            if (i < from || is_node_ref(stack_[i])) {
                rest.push_back(std::move(stack_[i]));
            } else if (const auto* c = std::get_if<Condition>(&stack_[i])) {
                e.conditions.push_back(*c);
            } else {
                e.actions.push_back(std::get<Action>(stack_[i]).dir);
            }
        }
        stack_ = std::move(rest);
        if (config_.no_contradiction) e.conditions = filter_contradictions(e.conditions);
        graph_.add_edge(std::move(e));
    }

    BuildConfig config_;
    std::vector<StackItem> stack_;
    Atn graph_;
};

inline Atn interpret(std::span<const Token> tokens, BuildConfig config = {}) {
    GraphBuilder builder(config);
    for (const Token& t : tokens) builder.apply(t);
    return builder.finish();
}

inline Atn interpret(const std::vector<Token>& tokens, BuildConfig config = {}) {
    return interpret(std::span<const Token>(tokens), config);
}

}  // namespace atnevo

#endif
