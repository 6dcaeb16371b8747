#ifndef ATNEVO_TOKENS_HPP
#define ATNEVO_TOKENS_HPP

/*
 * The four token families of the graph-building language.
 *
 * Condition and Action are plain label payloads; the same structs are reused
 * as stack items and as edge labels, so "push a Label" is a value copy.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "core.hpp"

namespace atnevo {

enum class StackOp : std::uint8_t { Swap, Dup, Del, Roll, Unroll };
enum class StackScope : std::uint8_t { All, Node, Label };

struct StackToken {
    StackOp op;
    StackScope scope;
    bool operator==(const StackToken&) const = default;
};

enum class StructureOp : std::uint8_t { Node, Connect, ConnectSelf, ConnectStart, ConnectEnd };

struct StructureToken {
    StructureOp op;
    bool operator==(const StructureToken&) const = default;
};

// Percept test: true when the cell one step in `dir` holds `what`.
struct Condition {
    Dir dir;
    Cell what;
    bool operator==(const Condition&) const = default;
};

struct Action {
    Dir dir;
    bool operator==(const Action&) const = default;
};

using Token = std::variant<StackToken, StructureToken, Condition, Action>;

enum class TokenKind : std::uint8_t { Stack, Structure, Condition, Action };

inline TokenKind kind_of(const Token& t) { return static_cast<TokenKind>(t.index()); }
inline bool is_label_token(const Token& t) {
    return kind_of(t) == TokenKind::Condition || kind_of(t) == TokenKind::Action;
}

inline std::string_view stack_op_name(StackOp op) {
    switch (op) {
        case StackOp::Swap: return "swap";
        case StackOp::Dup: return "dup";
        case StackOp::Del: return "del";
        case StackOp::Roll: return "roll";
        case StackOp::Unroll: return "unroll";
    }
    return "?";
}

inline std::string_view stack_scope_name(StackScope s) {
    switch (s) {
        case StackScope::All: return "all";
        case StackScope::Node: return "node";
        case StackScope::Label: return "label";
    }
    return "?";
}

inline std::string_view structure_op_name(StructureOp op) {
    switch (op) {
        case StructureOp::Node: return "node";
        case StructureOp::Connect: return "connect";
        case StructureOp::ConnectSelf: return "connect self";
        case StructureOp::ConnectStart: return "connect start";
        case StructureOp::ConnectEnd: return "connect end";
    }
    return "?";
}

inline std::string_view cell_word(Cell c) {
    switch (c) {
        case Cell::Empty: return "empty";
        case Cell::Food: return "food";
        case Cell::Tree: return "tree";
    }
    return "?";
}

// Canonical mnemonic: "swap node", "connect start", "foodNE?", "goSW!".
inline std::string token_mnemonic(const Token& t) {
    switch (kind_of(t)) {
        case TokenKind::Stack: {
            const auto& st = std::get<StackToken>(t);
            return std::string(stack_op_name(st.op)) + " " + std::string(stack_scope_name(st.scope));
        }
        case TokenKind::Structure:
            return std::string(structure_op_name(std::get<StructureToken>(t).op));
        case TokenKind::Condition: {
            const auto& c = std::get<Condition>(t);
            return std::string(cell_word(c.what)) + std::string(dir_name(c.dir)) + "?";
        }
        case TokenKind::Action:
            return "go" + std::string(dir_name(std::get<Action>(t).dir)) + "!";
    }
    throw std::logic_error("token_mnemonic: bad variant");
}

namespace detail {

inline std::optional<StackScope> scope_from_word(std::string_view w) {
    if (w == "all") return StackScope::All;
    if (w == "node") return StackScope::Node;
    if (w == "label") return StackScope::Label;
    return std::nullopt;
}

}  // namespace detail

// Parses canonical mnemonics plus the two-way forms "swap all|node",
// "roll all|label", ... whose reading depends on whether scoped stack
// operations are enabled (typed == true picks the scoped alternative).
inline Token parse_token(std::string_view text, bool typed = false) {
    const auto bad = [&] { return std::invalid_argument("unknown token mnemonic: " + std::string(text)); };

    if (text.size() >= 4 && text.substr(0, 2) == "go" && text.back() == '!')
        return Action{dir_from_name(text.substr(2, text.size() - 3))};

    if (text.size() >= 2 && text.back() == '?') {
        for (Cell what : {Cell::Empty, Cell::Food, Cell::Tree}) {
            const std::string_view word = cell_word(what);
            if (text.size() > word.size() + 1 && text.substr(0, word.size()) == word)
                return Condition{dir_from_name(text.substr(word.size(), text.size() - word.size() - 1)), what};
        }
        throw bad();
    }

    const std::size_t space = text.find(' ');
    const std::string_view head = text.substr(0, space);
    std::string_view rest = space == std::string_view::npos ? std::string_view{} : text.substr(space + 1);

    if (head == "connect") {
        if (rest.empty()) return StructureToken{StructureOp::Connect};
        if (rest == "self") return StructureToken{StructureOp::ConnectSelf};
        if (rest == "start") return StructureToken{StructureOp::ConnectStart};
        if (rest == "end") return StructureToken{StructureOp::ConnectEnd};
        throw bad();
    }
    if (head == "node" && rest.empty()) return StructureToken{StructureOp::Node};

    StackOp op;
    if (head == "swap") op = StackOp::Swap;
    else if (head == "dup") op = StackOp::Dup;
    else if (head == "del") op = StackOp::Del;
    else if (head == "roll") op = StackOp::Roll;
    else if (head == "unroll") op = StackOp::Unroll;
    else throw bad();

    // Two-way scope like "all|node": the typed flag selects the alternative.
    if (const std::size_t bar = rest.find('|'); bar != std::string_view::npos) {
        const auto first = detail::scope_from_word(rest.substr(0, bar));
        const auto second = detail::scope_from_word(rest.substr(bar + 1));
        if (!first || !second || *first != StackScope::All) throw bad();
        return StackToken{op, typed ? *second : *first};
    }
    if (const auto scope = detail::scope_from_word(rest)) return StackToken{op, *scope};
    throw bad();
}

}  // namespace atnevo

#endif
