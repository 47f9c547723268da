#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace cubetop {

// Cells of the cubical tessellation of R^3 in Khalimsky coordinates:
// an odd coordinate spans a unit interval, an even one is a single point.
// The cell dimension is the number of odd coordinates.
struct Cell {
    std::array<int, 3> c{0, 0, 0};

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline bool is_odd(int v) { return v & 1; }

inline int dimension(const Cell& s) {
    return (s.c[0] & 1) + (s.c[1] & 1) + (s.c[2] & 1);
}

// The unit cube [x,x+1]x[y,y+1]x[z,z+1] has Khalimsky coordinates (2x+1,2y+1,2z+1).
struct Cube {
    std::array<int, 3> p{0, 0, 0};

    friend bool operator==(const Cube&, const Cube&) = default;
    friend auto operator<=>(const Cube&, const Cube&) = default;
};

inline Cell to_cell(const Cube& q) {
    return Cell{{2 * q.p[0] + 1, 2 * q.p[1] + 1, 2 * q.p[2] + 1}};
}

inline Cube to_cube(const Cell& s) {
    return Cube{{(s.c[0] - 1) / 2, (s.c[1] - 1) / 2, (s.c[2] - 1) / 2}};
}

// Facets: for every odd coordinate, the two cells with it bumped by +-1.
inline std::vector<Cell> boundary_cells(const Cell& s) {
    std::vector<Cell> out;
    out.reserve(2 * dimension(s));
    for (int axis = 0; axis < 3; ++axis) {
        if (!is_odd(s.c[axis])) continue;
        Cell lo = s, hi = s;
        lo.c[axis] -= 1;
        hi.c[axis] += 1;
        out.push_back(lo);
        out.push_back(hi);
    }
    return out;
}

// Candidate cofacets within the full tessellation (unfiltered by any complex).
inline std::vector<Cell> cofacet_candidates(const Cell& s) {
    std::vector<Cell> out;
    out.reserve(2 * (3 - dimension(s)));
    for (int axis = 0; axis < 3; ++axis) {
        if (is_odd(s.c[axis])) continue;
        Cell lo = s, hi = s;
        lo.c[axis] -= 1;
        hi.c[axis] += 1;
        out.push_back(lo);
        out.push_back(hi);
    }
    return out;
}

// Top cubes of the tessellation whose closure contains s: one choice of
// odd coordinate per even axis, 2^(3-dim) cubes total.
inline std::vector<Cell> carrier_cubes(const Cell& s) {
    std::vector<Cell> out{s};
    for (int axis = 0; axis < 3; ++axis) {
        if (is_odd(s.c[axis])) continue;
        std::vector<Cell> next;
        next.reserve(out.size() * 2);
        for (Cell t : out) {
            t.c[axis] = s.c[axis] - 1;
            next.push_back(t);
            t.c[axis] = s.c[axis] + 1;
            next.push_back(t);
        }
        out.swap(next);
    }
    return out;
}

inline uint64_t cell_key(const Cell& s) {
    auto pack = [](int v) { return uint64_t(uint32_t(v + (1 << 20))) & 0x1FFFFF; };
    return (pack(s.c[0]) << 42) | (pack(s.c[1]) << 21) | pack(s.c[2]);
}

inline std::string to_string(const Cell& s) {
    return "(" + std::to_string(s.c[0]) + "," + std::to_string(s.c[1]) + "," +
           std::to_string(s.c[2]) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Cell& s) { return os << to_string(s); }

}  // namespace cubetop

template <>
struct std::hash<cubetop::Cell> {
    size_t operator()(const cubetop::Cell& s) const noexcept {
        uint64_t k = cubetop::cell_key(s);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return size_t(k);
    }
};
