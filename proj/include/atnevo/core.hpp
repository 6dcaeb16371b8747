#ifndef ATNEVO_CORE_HPP
#define ATNEVO_CORE_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace atnevo {

// Eight compass directions in canonical order. This order is load-bearing:
// action codons are 32+dir and condition codons are 40+3*dir+kind.
enum class Dir : std::uint8_t { N, S, W, E, NE, SE, NW, SW };

inline constexpr std::array<Dir, 8> all_dirs = {Dir::N,  Dir::S,  Dir::W,  Dir::E,
                                                Dir::NE, Dir::SE, Dir::NW, Dir::SW};

// Cell contents double as percept kinds; the value order matches the
// condition codon layout (empty, food, tree).
enum class Cell : std::uint8_t { Empty, Food, Tree };

struct Coord {
    int row = 0;
    int col = 0;
    bool operator==(const Coord&) const = default;
};

// Row/col deltas, row 0 at the top so N decreases row.
inline constexpr Coord delta(Dir d) {
    constexpr std::array<Coord, 8> deltas = {{
        {-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, 1}, {1, 1}, {-1, -1}, {1, -1},
    }};
    return deltas[static_cast<std::size_t>(d)];
}

inline constexpr std::string_view dir_name(Dir d) {
    constexpr std::array<std::string_view, 8> names = {"N", "S", "W", "E", "NE", "SE", "NW", "SW"};
    return names[static_cast<std::size_t>(d)];
}

inline Dir dir_from_name(std::string_view name) {
    for (Dir d : all_dirs)
        if (dir_name(d) == name) return d;
    throw std::invalid_argument("unknown direction: " + std::string(name));
}

inline constexpr char cell_char(Cell c) {
    switch (c) {
        case Cell::Empty: return '.';
        case Cell::Food: return 'F';
        case Cell::Tree: return 'T';
    }
    return '?';
}

inline constexpr Cell cell_from_char(char ch) {
    switch (ch) {
        case '.': return Cell::Empty;
        case 'F': return Cell::Food;
        case 'T': return Cell::Tree;
        default: throw std::invalid_argument(std::string("unknown map character: ") + ch);
    }
}

}  // namespace atnevo

#endif
