#ifndef ATNEVO_RNG_HPP
#define ATNEVO_RNG_HPP

/*
 * Deterministic, platform-independent random streams.
 *
 * Every stochastic component takes an explicit RngStream. Streams form a
 * tree: derive(tag) yields a child whose sequence depends only on the
 * parent's seed identity and the tag, never on how much the parent has been
 * consumed. This is what makes per-slot / per-trial results independent of
 * evaluation order and worker count.
 *
 * The generator is xoshiro256** seeded through splitmix64. Sampling helpers
 * are implemented here (rejection for bounded ints, 53-bit mantissa for
 * doubles, CDF walk for discrete weights) so results are identical across
 * standard libraries.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace atnevo {

inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stateless mix of two words; used to build child-stream seeds.
inline constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed ^ (0xA0761D6478BD642FULL + tag * 0xE7037ED1A0B428DBULL);
    return splitmix64_next(s);
}

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : seed_(seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64_next(s);
    }

    std::uint64_t seed() const { return seed_; }

    // Child stream; independent of this stream's consumption state.
    RngStream derive(std::uint64_t tag) const { return RngStream(mix_seed(seed_, tag)); }
    RngStream derive(std::uint64_t tag_a, std::uint64_t tag_b) const {
        return RngStream(mix_seed(mix_seed(seed_, tag_a), tag_b));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased integer in [0, n). Rejection on the low residue band.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_below: empty range");
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Index distributed according to weights (need not be normalised).
    std::size_t sample_discrete(std::span<const double> weights) {
        double total = 0;
        for (double w : weights) {
            if (w < 0 || !std::isfinite(w)) throw std::invalid_argument("sample_discrete: bad weight");
            total += w;
        }
        if (!(total > 0)) throw std::invalid_argument("sample_discrete: weights sum to zero");
        double x = uniform01() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            x -= weights[i];
            if (x < 0) return i;
        }
        return weights.size() - 1;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
};

}  // namespace atnevo

#endif
