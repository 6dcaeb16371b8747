#ifndef ATNEVO_GENOME_HPP
#define ATNEVO_GENOME_HPP

/*
 * Genotypes. Two encodings of the same codon string:
 *   Bitstring  payload holds 0/1 bits, six per codon, most significant first
 *   Integer    payload holds codon values directly
 * Equal codon strings translate to equal token strings regardless of
 * encoding; the encodings differ only in what mutation can do to them.
 */

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "genetic_code.hpp"
#include "rng.hpp"

namespace atnevo {

struct Genome {
    enum class Encoding : std::uint8_t { Bitstring, Integer };

    Encoding encoding = Encoding::Integer;
    std::vector<std::uint8_t> payload;

    bool operator==(const Genome&) const = default;

    std::size_t token_count() const {
        if (encoding == Encoding::Integer) return payload.size();
        if (payload.size() % GeneticCode::codon_width != 0)
            throw std::invalid_argument("bitstring length is not a whole number of codons");
        return payload.size() / GeneticCode::codon_width;
    }

    std::uint32_t codon_at(std::size_t i) const {
        if (encoding == Encoding::Integer) return payload[i];
        std::uint32_t value = 0;
        const std::size_t base = i * GeneticCode::codon_width;
        for (int b = 0; b < GeneticCode::codon_width; ++b) value = value * 2 + payload[base + b];
        return value;
    }

    std::vector<std::uint32_t> codons() const {
        std::vector<std::uint32_t> out(token_count());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = codon_at(i);
        return out;
    }
};

inline Genome genome_from_codons(const std::vector<std::uint32_t>& codons,
                                 Genome::Encoding encoding) {
    Genome g;
    g.encoding = encoding;
    if (encoding == Genome::Encoding::Integer) {
        g.payload.reserve(codons.size());
        for (std::uint32_t c : codons) {
            if (c >= GeneticCode::codon_count) throw std::invalid_argument("codon value out of range");
            g.payload.push_back(static_cast<std::uint8_t>(c));
        }
    } else {
        g.payload.reserve(codons.size() * GeneticCode::codon_width);
        for (std::uint32_t c : codons) {
            if (c >= GeneticCode::codon_count) throw std::invalid_argument("codon value out of range");
            for (int b = GeneticCode::codon_width - 1; b >= 0; --b)
                g.payload.push_back(static_cast<std::uint8_t>((c >> b) & 1));
        }
    }
    return g;
}

inline std::vector<Token> translate(const Genome& genome, const GeneticCode& code) {
    const std::size_t n = genome.token_count();
    std::vector<Token> tokens;
    tokens.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t codon = genome.codon_at(i);
        if (genome.encoding == Genome::Encoding::Integer && codon >= code.table.size())
            throw std::invalid_argument("codon value out of range");
        tokens.push_back(code[codon]);
    }
    return tokens;
}

// Uniform random genome of token_count codons.
inline Genome random_genome(Genome::Encoding encoding, std::size_t token_count, RngStream& rng) {
    Genome g;
    g.encoding = encoding;
    if (encoding == Genome::Encoding::Integer) {
        g.payload.resize(token_count);
        for (auto& v : g.payload)
            v = static_cast<std::uint8_t>(rng.uniform_below(GeneticCode::codon_count));
    } else {
        g.payload.resize(token_count * GeneticCode::codon_width);
        for (auto& b : g.payload) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    }
    return g;
}

}  // namespace atnevo

#endif
