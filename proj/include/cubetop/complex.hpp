#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubetop/khalimsky.hpp"

namespace cubetop {

// The 26 neighbour offsets of a 3-cube, bit i of a NeighborMask corresponds
// to neighbor_offsets[i]. Layout is fixed: lexicographic over (dx,dy,dz) with
// the zero offset skipped. This layout is part of the lookup-table file format.
inline constexpr std::array<std::array<int, 3>, 26> neighbor_offsets = [] {
    std::array<std::array<int, 3>, 26> t{};
    int k = 0;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dz = -1; dz <= 1; ++dz) {
                if (dx == 0 && dy == 0 && dz == 0) continue;
                t[k++] = {dx, dy, dz};
            }
    return t;
}();

inline int neighbor_bit(int dx, int dy, int dz) {
    int raw = (dx + 1) * 9 + (dy + 1) * 3 + (dz + 1);
    return raw > 13 ? raw - 1 : raw;
}

// Offsets reordered by contact size: face neighbours first, then edge, then
// vertex neighbours. Used as the scan order when enqueuing neighbours.
inline const std::array<int, 26>& neighbor_scan_order() {
    static const std::array<int, 26> order = [] {
        std::array<int, 26> o{};
        int k = 0;
        for (int norm = 1; norm <= 3; ++norm)
            for (int i = 0; i < 26; ++i) {
                const auto& d = neighbor_offsets[i];
                if (std::abs(d[0]) + std::abs(d[1]) + std::abs(d[2]) == norm) o[k++] = i;
            }
        return o;
    }();
    return order;
}

using NeighborMask = uint32_t;
inline constexpr NeighborMask full_neighbor_mask = (1u << 26) - 1;

// Set of top-dimensional cubes stored as a bitmap over a bounding box with a
// one-cube empty margin, so neighbour queries never leave the box. The cell
// set of the complex is the closure of the stored cubes.
class CubicalComplex {
public:
    CubicalComplex() = default;

    explicit CubicalComplex(const std::vector<Cube>& cubes) {
        if (cubes.empty()) return;
        std::array<int, 3> lo = cubes[0].p, hi = cubes[0].p;
        for (const Cube& q : cubes)
            for (int a = 0; a < 3; ++a) {
                lo[a] = std::min(lo[a], q.p[a]);
                hi[a] = std::max(hi[a], q.p[a]);
            }
        for (int a = 0; a < 3; ++a) {
            lo_[a] = lo[a] - 1;
            dims_[a] = hi[a] - lo[a] + 3;
        }
        bits_.assign((size_t(dims_[0]) * dims_[1] * dims_[2] + 63) / 64, 0);
        for (const Cube& q : cubes) insert(q);
    }

    static CubicalComplex empty_like(const CubicalComplex& other) {
        CubicalComplex c;
        c.lo_ = other.lo_;
        c.dims_ = other.dims_;
        c.bits_.assign(other.bits_.size(), 0);
        return c;
    }

    bool empty() const { return count_ == 0; }
    size_t size() const { return count_; }

    bool contains(const Cube& q) const {
        size_t idx;
        return index_of(q, idx) && (bits_[idx >> 6] >> (idx & 63)) & 1;
    }

    void insert(const Cube& q) {
        size_t idx;
        if (!index_of(q, idx)) throw std::out_of_range("cube outside complex box");
        uint64_t bit = uint64_t(1) << (idx & 63);
        if (!(bits_[idx >> 6] & bit)) {
            bits_[idx >> 6] |= bit;
            ++count_;
        }
    }

    void erase(const Cube& q) {
        size_t idx;
        if (!index_of(q, idx)) return;
        uint64_t bit = uint64_t(1) << (idx & 63);
        if (bits_[idx >> 6] & bit) {
            bits_[idx >> 6] &= ~bit;
            --count_;
        }
    }

    // Top cubes in lexicographic order.
    std::vector<Cube> cubes() const {
        std::vector<Cube> out;
        out.reserve(count_);
        for (int x = lo_[0]; x < lo_[0] + dims_[0]; ++x)
            for (int y = lo_[1]; y < lo_[1] + dims_[1]; ++y)
                for (int z = lo_[2]; z < lo_[2] + dims_[2]; ++z) {
                    Cube q{{x, y, z}};
                    if (contains(q)) out.push_back(q);
                }
        return out;
    }

    // A cell belongs to the complex iff some cube whose closure contains it
    // is present.
    bool contains_cell(const Cell& s) const {
        if (dimension(s) == 3) return contains(to_cube(s));
        for (const Cell& t : carrier_cubes(s))
            if (contains(to_cube(t))) return true;
        return false;
    }

    // Cells of the complex having s as a facet. Pre: s belongs to the complex.
    std::vector<Cell> coboundary_cells(const Cell& s) const {
        if (!contains_cell(s)) throw std::invalid_argument("coboundary of a cell not in the complex");
        std::vector<Cell> out;
        for (const Cell& t : cofacet_candidates(s))
            if (contains_cell(t)) out.push_back(t);
        return out;
    }

    // All cells of the closure, lexicographic order.
    std::vector<Cell> all_cells() const {
        std::vector<Cell> out;
        if (empty()) return out;
        for (int x = 2 * lo_[0]; x <= 2 * (lo_[0] + dims_[0]); ++x)
            for (int y = 2 * lo_[1]; y <= 2 * (lo_[1] + dims_[1]); ++y)
                for (int z = 2 * lo_[2]; z <= 2 * (lo_[2] + dims_[2]); ++z) {
                    Cell s{{x, y, z}};
                    if (contains_cell(s)) out.push_back(s);
                }
        return out;
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (const Cell& s : all_cells()) chi += (dimension(s) & 1) ? -1 : 1;
        return chi;
    }

    NeighborMask neighbor_mask(const Cube& q) const {
        NeighborMask m = 0;
        for (int i = 0; i < 26; ++i) {
            const auto& d = neighbor_offsets[i];
            Cube n{{q.p[0] + d[0], q.p[1] + d[1], q.p[2] + d[2]}};
            if (contains(n)) m |= NeighborMask(1) << i;
        }
        return m;
    }

    NeighborMask neighbor_mask(const Cell& topcell) const {
        if (dimension(topcell) != 3) throw std::invalid_argument("neighbor_mask requires a 3-cube");
        return neighbor_mask(to_cube(topcell));
    }

    // Connected components of the cube set; adjacency is face sharing when
    // face_only, otherwise any closure contact (the 26-neighbourhood).
    std::vector<std::vector<Cube>> components(bool face_only) const {
        std::vector<Cube> all = cubes();
        std::vector<std::vector<Cube>> comps;
        CubicalComplex seen = empty_like(*this);
        for (const Cube& start : all) {
            if (seen.contains(start)) continue;
            comps.emplace_back();
            std::deque<Cube> queue{start};
            seen.insert(start);
            while (!queue.empty()) {
                Cube q = queue.front();
                queue.pop_front();
                comps.back().push_back(q);
                for (int i = 0; i < 26; ++i) {
                    const auto& d = neighbor_offsets[i];
                    if (face_only && std::abs(d[0]) + std::abs(d[1]) + std::abs(d[2]) != 1) continue;
                    Cube n{{q.p[0] + d[0], q.p[1] + d[1], q.p[2] + d[2]}};
                    if (contains(n) && !seen.contains(n)) {
                        seen.insert(n);
                        queue.push_back(n);
                    }
                }
            }
        }
        return comps;
    }

    bool connected() const { return components(false).size() <= 1; }
    bool face_connected() const { return components(true).size() <= 1; }

    friend bool operator==(const CubicalComplex& a, const CubicalComplex& b) {
        if (a.count_ != b.count_) return false;
        return a.cubes() == b.cubes();
    }

private:
    bool index_of(const Cube& q, size_t& idx) const {
        for (int a = 0; a < 3; ++a)
            if (q.p[a] < lo_[a] || q.p[a] >= lo_[a] + dims_[a]) return false;
        idx = (size_t(q.p[0] - lo_[0]) * dims_[1] + (q.p[1] - lo_[1])) * dims_[2] +
              (q.p[2] - lo_[2]);
        return true;
    }

    std::array<int, 3> lo_{0, 0, 0};
    std::array<int, 3> dims_{0, 0, 0};
    std::vector<uint64_t> bits_;
    size_t count_ = 0;
};

// Pure complexes are handled as their collections of top cubes.
using ToplexSet = CubicalComplex;

inline void dump_complex(const CubicalComplex& k, std::ostream& os) {
    for (const Cube& q : k.cubes())
        os << q.p[0] << ' ' << q.p[1] << ' ' << q.p[2] << '\n';
}

inline CubicalComplex load_complex(std::istream& is) {
    std::vector<Cube> cubes;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Cube q;
        if (!(ls >> q.p[0])) continue;  // blank or comment-only line
        if (!(ls >> q.p[1] >> q.p[2]))
            throw std::runtime_error("complex dump line " + std::to_string(lineno) +
                                     ": expected three integers");
        int extra;
        if (ls >> extra)
            throw std::runtime_error("complex dump line " + std::to_string(lineno) +
                                     ": trailing data");
        cubes.push_back(q);
    }
    return CubicalComplex(cubes);
}

}  // namespace cubetop
