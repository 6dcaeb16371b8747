#ifndef ATNEVO_GENETIC_CODE_HPP
#define ATNEVO_GENETIC_CODE_HPP

/*
 * Codon -> token table.
 *
 * 64 codons, 6 bits each. Token families are deliberately over-represented
 * relative to their member counts (four codons per structural op, two per
 * stack op) which biases random codons and mutations toward structure and
 * away from rare plumbing. Codons 32..63 all map to labels, so a label codon
 * keeps its leftmost bit under any single flip of the other five bits.
 *
 * Layout:
 *   0..3    swap  (all|node, all|node, all|label, all|label)
 *   4..7    dup   (label, label, node, node)
 *   8..11   del   (label, label, node, node)
 *   12..15  roll all|node, roll all|label, unroll all|node, unroll all|label
 *   16..19  node        20..23  connect
 *   24..26  connect self  27..29  connect start  30..31  connect end
 *   32..39  actions, direction order N S W E NE SE NW SW
 *   40..63  conditions, direction-major, kind order empty food tree
 *
 * The "all|scope" entries read as whole-stack ops normally and as scoped ops
 * when scoped stack operations are enabled.
 */

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tokens.hpp"

namespace atnevo {

struct GeneticCode {
    static constexpr int codon_width = 6;
    static constexpr std::size_t codon_count = 64;

    std::vector<Token> table;  // size codon_count

    const Token& operator[](std::uint32_t codon) const {
        if (codon >= table.size()) throw std::invalid_argument("codon out of range");
        return table[codon];
    }
};

inline GeneticCode default_genetic_code(bool typed_stack_ops = false) {
    const auto pick = [typed_stack_ops](StackScope scoped) {
        return typed_stack_ops ? scoped : StackScope::All;
    };
    GeneticCode code;
    auto& t = code.table;
    t.reserve(GeneticCode::codon_count);

    for (int i = 0; i < 2; ++i) t.push_back(StackToken{StackOp::Swap, pick(StackScope::Node)});
    for (int i = 0; i < 2; ++i) t.push_back(StackToken{StackOp::Swap, pick(StackScope::Label)});
    for (int i = 0; i < 2; ++i) t.push_back(StackToken{StackOp::Dup, StackScope::Label});
    for (int i = 0; i < 2; ++i) t.push_back(StackToken{StackOp::Dup, StackScope::Node});
    for (int i = 0; i < 2; ++i) t.push_back(StackToken{StackOp::Del, StackScope::Label});
    for (int i = 0; i < 2; ++i) t.push_back(StackToken{StackOp::Del, StackScope::Node});
    t.push_back(StackToken{StackOp::Roll, pick(StackScope::Node)});
    t.push_back(StackToken{StackOp::Roll, pick(StackScope::Label)});
    t.push_back(StackToken{StackOp::Unroll, pick(StackScope::Node)});
    t.push_back(StackToken{StackOp::Unroll, pick(StackScope::Label)});

    for (int i = 0; i < 4; ++i) t.push_back(StructureToken{StructureOp::Node});
    for (int i = 0; i < 4; ++i) t.push_back(StructureToken{StructureOp::Connect});
    for (int i = 0; i < 3; ++i) t.push_back(StructureToken{StructureOp::ConnectSelf});
    for (int i = 0; i < 3; ++i) t.push_back(StructureToken{StructureOp::ConnectStart});
    for (int i = 0; i < 2; ++i) t.push_back(StructureToken{StructureOp::ConnectEnd});

    for (Dir d : all_dirs) t.push_back(Action{d});
    for (Dir d : all_dirs)
        for (Cell what : {Cell::Empty, Cell::Food, Cell::Tree}) t.push_back(Condition{d, what});

    return code;
}

// Override file: one "<codon-index> <mnemonic>" per line, index decimal or
// six binary digits; '#' comments and blank lines ignored. Every codon must
// be assigned exactly once.
inline GeneticCode load_genetic_code(std::istream& in, bool typed_stack_ops = false) {
    GeneticCode code;
    code.table.assign(GeneticCode::codon_count, Token{StructureToken{StructureOp::Node}});
    std::vector<bool> seen(GeneticCode::codon_count, false);

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::string index_text;
        if (!(row >> index_text)) continue;

        std::size_t index = 0;
        if (index_text.size() == 6 && index_text.find_first_not_of("01") == std::string::npos) {
            for (char bit : index_text) index = index * 2 + (bit - '0');
        } else {
            try {
                std::size_t used = 0;
                index = std::stoul(index_text, &used);
                if (used != index_text.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw std::invalid_argument("genetic code line " + std::to_string(line_no) +
                                            ": bad codon index '" + index_text + "'");
            }
        }
        if (index >= GeneticCode::codon_count)
            throw std::invalid_argument("genetic code line " + std::to_string(line_no) +
                                        ": codon index out of range");
        if (seen[index])
            throw std::invalid_argument("genetic code line " + std::to_string(line_no) +
                                        ": codon " + std::to_string(index) + " defined twice");

        std::string mnemonic;
        std::getline(row, mnemonic);
        const std::size_t first = mnemonic.find_first_not_of(" \t");
        if (first == std::string::npos)
            throw std::invalid_argument("genetic code line " + std::to_string(line_no) +
                                        ": missing token mnemonic");
        const std::size_t last = mnemonic.find_last_not_of(" \t\r");
        code.table[index] = parse_token(
            std::string_view(mnemonic).substr(first, last - first + 1), typed_stack_ops);
        seen[index] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw std::invalid_argument("genetic code: codon " + std::to_string(i) + " undefined");
    return code;
}

inline void save_genetic_code(const GeneticCode& code, std::ostream& out) {
    for (std::size_t i = 0; i < code.table.size(); ++i)
        out << i << ' ' << token_mnemonic(code.table[i]) << '\n';
}

}  // namespace atnevo

#endif
