#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include <atnevo/genetic_code.hpp>
#include <atnevo/genome.hpp>
#include <atnevo/stats.hpp>

using namespace atnevo;

namespace {

// The full published codon table, by canonical mnemonic. Entries written as
// "a|b" resolve to a when scoped stack ops are off and b when they are on.
constexpr std::array<const char*, 64> kCodonTable = {
    "swap all|swap node",     // 000000
    "swap all|swap node",     // 000001
    "swap all|swap label",    // 000010
    "swap all|swap label",    // 000011
    "dup label",              // 000100
    "dup label",              // 000101
    "dup node",               // 000110
    "dup node",               // 000111
    "del label",              // 001000
    "del label",              // 001001
    "del node",               // 001010
    "del node",               // 001011
    "roll all|roll node",     // 001100
    "roll all|roll label",    // 001101
    "unroll all|unroll node", // 001110
    "unroll all|unroll label",// 001111
    "node", "node", "node", "node",
    "connect", "connect", "connect", "connect",
    "connect self", "connect self", "connect self",
    "connect start", "connect start", "connect start",
    "connect end", "connect end",
    "goN!", "goS!", "goW!", "goE!", "goNE!", "goSE!", "goNW!", "goSW!",
    "emptyN?",  "foodN?",  "treeN?",
    "emptyS?",  "foodS?",  "treeS?",
    "emptyW?",  "foodW?",  "treeW?",
    "emptyE?",  "foodE?",  "treeE?",
    "emptyNE?", "foodNE?", "treeNE?",
    "emptySE?", "foodSE?", "treeSE?",
    "emptyNW?", "foodNW?", "treeNW?",
    "emptySW?", "foodSW?", "treeSW?",
};

std::string expected_mnemonic(std::size_t codon, bool typed) {
    const std::string entry = kCodonTable[codon];
    const std::size_t bar = entry.find('|');
    if (bar == std::string::npos) return entry;
    return typed ? entry.substr(bar + 1) : entry.substr(0, bar);
}

}  // namespace

TEST_CASE("all 64 codons map to the published tokens in both modes") {
    for (const bool typed : {false, true}) {
        const GeneticCode code = default_genetic_code(typed);
        REQUIRE(code.table.size() == 64);
        for (std::size_t codon = 0; codon < 64; ++codon) {
            INFO("codon " << codon << " typed=" << typed);
            CHECK(token_mnemonic(code.table[codon]) == expected_mnemonic(codon, typed));
        }
    }
}

TEST_CASE("selected codons match their published rows") {
    const GeneticCode plain = default_genetic_code(false);
    const GeneticCode typed = default_genetic_code(true);
    CHECK(plain[0b010000] == Token{StructureToken{StructureOp::Node}});
    CHECK(plain[0b100000] == Token{Action{Dir::N}});
    CHECK(typed[0b000010] == Token{StackToken{StackOp::Swap, StackScope::Label}});
    CHECK(plain[0b111111] == Token{Condition{Dir::SW, Cell::Tree}});
    CHECK(typed[0b111111] == Token{Condition{Dir::SW, Cell::Tree}});
}

TEST_CASE("token family counts and the label bit") {
    const GeneticCode code = default_genetic_code(false);
    int stack = 0, structure = 0, condition = 0, action = 0;
    for (std::size_t codon = 0; codon < 64; ++codon) {
        switch (kind_of(code.table[codon])) {
            case TokenKind::Stack: ++stack; break;
            case TokenKind::Structure: ++structure; break;
            case TokenKind::Condition: ++condition; break;
            case TokenKind::Action: ++action; break;
        }
        // Leftmost codon bit set exactly for label (condition/action) tokens.
        CHECK((codon >= 32) == is_label_token(code.table[codon]));
    }
    CHECK(stack == 16);
    CHECK(structure == 16);
    CHECK(action == 8);
    CHECK(condition == 24);
}

TEST_CASE("mnemonics round-trip through the parser") {
    for (const bool typed : {false, true}) {
        const GeneticCode code = default_genetic_code(typed);
        for (const Token& t : code.table) CHECK(parse_token(token_mnemonic(t), typed) == t);
    }
    CHECK(parse_token("swap all|node", false) == Token{StackToken{StackOp::Swap, StackScope::All}});
    CHECK(parse_token("swap all|node", true) == Token{StackToken{StackOp::Swap, StackScope::Node}});
    CHECK_THROWS_AS(parse_token("jump", false), std::invalid_argument);
    CHECK_THROWS_AS(parse_token("goQ!", false), std::invalid_argument);
    CHECK_THROWS_AS(parse_token("swap node|label", false), std::invalid_argument);
}

TEST_CASE("genetic code file round-trips") {
    const GeneticCode code = default_genetic_code(true);
    std::ostringstream out;
    save_genetic_code(code, out);
    std::istringstream in(out.str());
    const GeneticCode loaded = load_genetic_code(in, true);
    CHECK(loaded.table == code.table);
}

TEST_CASE("genetic code file accepts binary indices and comments") {
    std::ostringstream body;
    body << "# custom table\n";
    for (std::size_t codon = 0; codon < 64; ++codon) {
        for (int b = 5; b >= 0; --b) body << ((codon >> b) & 1);
        body << " node  # row " << codon << "\n";
    }
    std::istringstream in(body.str());
    const GeneticCode code = load_genetic_code(in, false);
    for (const Token& t : code.table) CHECK(t == Token{StructureToken{StructureOp::Node}});
}

TEST_CASE("genetic code file rejects malformed tables") {
    const auto load = [](const std::string& text) {
        std::istringstream in(text);
        return load_genetic_code(in, false);
    };
    std::ostringstream full;
    save_genetic_code(default_genetic_code(false), full);

    CHECK_THROWS_AS(load("0 node\n"), std::invalid_argument);                  // missing codons
    CHECK_THROWS_AS(load(full.str() + "63 node\n"), std::invalid_argument);    // duplicate
    CHECK_THROWS_AS(load(full.str() + "64 node\n"), std::invalid_argument);    // out of range
    CHECK_THROWS_AS(load("x node\n"), std::invalid_argument);                  // bad index
    CHECK_THROWS_AS(load("0\n"), std::invalid_argument);                       // no mnemonic
}

TEST_CASE("codons read most significant bit first") {
    Genome g;
    g.encoding = Genome::Encoding::Bitstring;
    g.payload = {1, 0, 0, 0, 0, 0};
    CHECK(g.token_count() == 1);
    CHECK(g.codon_at(0) == 32);
    const GeneticCode code = default_genetic_code(false);
    CHECK(translate(g, code) == std::vector<Token>{Action{Dir::N}});
}

TEST_CASE("bitstring and integer encodings translate identically") {
    RngStream rng(555);
    const GeneticCode code = default_genetic_code(false);
    for (int round = 0; round < 50; ++round) {
        std::vector<std::uint32_t> codons(40);
        for (auto& c : codons) c = static_cast<std::uint32_t>(rng.uniform_below(64));
        const Genome bits = genome_from_codons(codons, Genome::Encoding::Bitstring);
        const Genome ints = genome_from_codons(codons, Genome::Encoding::Integer);
        CHECK(bits.codons() == codons);
        CHECK(ints.codons() == codons);
        CHECK(translate(bits, code) == translate(ints, code));
    }
}

TEST_CASE("malformed genomes are rejected") {
    Genome ragged;
    ragged.encoding = Genome::Encoding::Bitstring;
    ragged.payload.assign(7, 0);
    CHECK_THROWS_AS(ragged.token_count(), std::invalid_argument);

    CHECK_THROWS_AS(genome_from_codons({64}, Genome::Encoding::Integer), std::invalid_argument);

    Genome bad;
    bad.encoding = Genome::Encoding::Integer;
    bad.payload = {200};
    CHECK_THROWS_AS(translate(bad, default_genetic_code(false)), std::invalid_argument);
}

TEST_CASE("random genomes are seed-deterministic and well-formed") {
    RngStream a(31), b(31), c(32);
    const Genome ga = random_genome(Genome::Encoding::Integer, 300, a);
    const Genome gb = random_genome(Genome::Encoding::Integer, 300, b);
    const Genome gc = random_genome(Genome::Encoding::Integer, 300, c);
    CHECK(ga == gb);
    CHECK(ga != gc);
    for (const auto v : ga.payload) CHECK(v < 64);

    RngStream d(33);
    const Genome bits = random_genome(Genome::Encoding::Bitstring, 250, d);
    CHECK(bits.payload.size() == 250 * 6);
    CHECK(bits.token_count() == 250);
    for (const auto v : bits.payload) CHECK(v <= 1);
}

TEST_CASE("random integer genomes draw codons uniformly") {
    RngStream rng(808);
    std::array<std::uint64_t, 64> counts{};
    for (int round = 0; round < 600; ++round) {
        const Genome g = random_genome(Genome::Encoding::Integer, 100, rng);
        for (const auto v : g.payload) ++counts[v];
    }
    std::array<double, 64> probs{};
    probs.fill(1.0 / 64);
    const ChiSquareResult gof = chi_square_gof(counts, probs);
    CHECK(gof.p > 1e-4);
}
