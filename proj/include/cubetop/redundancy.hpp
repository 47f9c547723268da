#pragma once

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cubetop/complex.hpp"

namespace cubetop {

// Combinatorics of the closed unit cube: 27 cells with Khalimsky coordinates
// in {0,1,2}^3, indexed by 9a+3b+c. Index 13 is the open 3-cube itself.
namespace cube27 {

inline constexpr int cell_count = 27;
inline constexpr int center = 13;

inline constexpr int coord(int idx, int axis) {
    return axis == 0 ? idx / 9 : axis == 1 ? (idx / 3) % 3 : idx % 3;
}

inline constexpr int cell_dim(int idx) {
    return (coord(idx, 0) == 1) + (coord(idx, 1) == 1) + (coord(idx, 2) == 1);
}

struct Tables {
    std::array<uint32_t, 27> facet_mask{};
    std::array<uint32_t, 27> cofacet_mask{};
    std::array<uint32_t, 26> contact{};  // cells shared with each neighbour cube
    std::array<std::array<uint8_t, 26>, 48> symmetry{};  // bit permutations

    constexpr Tables() {
        for (int i = 0; i < 27; ++i) {
            int a = coord(i, 0), b = coord(i, 1), c = coord(i, 2);
            for (int j = 0; j < 27; ++j) {
                int da = coord(j, 0) - a, db = coord(j, 1) - b, dc = coord(j, 2) - c;
                int moved = (da != 0) + (db != 0) + (dc != 0);
                bool facet = moved == 1 && cell_dim(j) == cell_dim(i) - 1;
                bool cofacet = moved == 1 && cell_dim(j) == cell_dim(i) + 1;
                if (facet) facet_mask[i] |= uint32_t(1) << j;
                if (cofacet) cofacet_mask[i] |= uint32_t(1) << j;
            }
        }
        for (int n = 0; n < 26; ++n) {
            const auto& d = neighbor_offsets[n];
            uint32_t m = 0;
            for (int i = 0; i < 27; ++i) {
                bool in = true;
                for (int axis = 0; axis < 3; ++axis) {
                    int want = d[axis] == 0 ? -1 : (d[axis] > 0 ? 2 : 0);
                    if (want >= 0 && coord(i, axis) != want) in = false;
                }
                if (in) m |= uint32_t(1) << i;
            }
            contact[n] = m;
        }
        // 48 signed axis permutations acting on the neighbour offsets.
        constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        int g = 0;
        for (int p = 0; p < 6; ++p)
            for (int sgn = 0; sgn < 8; ++sgn, ++g)
                for (int n = 0; n < 26; ++n) {
                    const auto& d = neighbor_offsets[n];
                    int v[3];
                    for (int axis = 0; axis < 3; ++axis) {
                        v[axis] = d[perms[p][axis]];
                        if (sgn >> axis & 1) v[axis] = -v[axis];
                    }
                    int raw = (v[0] + 1) * 9 + (v[1] + 1) * 3 + (v[2] + 1);
                    symmetry[g][n] = uint8_t(raw > 13 ? raw - 1 : raw);
                }
    }
};

inline const Tables& tables() {
    static constexpr Tables t{};
    return t;
}

}  // namespace cube27

inline NeighborMask apply_cube_symmetry(int sym, NeighborMask m) {
    const auto& perm = cube27::tables().symmetry[sym];
    NeighborMask out = 0;
    for (int i = 0; i < 26; ++i)
        if (m >> i & 1) out |= NeighborMask(1) << perm[i];
    return out;
}

inline NeighborMask canonical_mask(NeighborMask m) {
    NeighborMask best = m;
    for (int g = 1; g < 48; ++g) best = std::min(best, apply_cube_symmetry(g, m));
    return best;
}

// Union of the contact complexes of the masked neighbours, as a 27-cell set.
inline uint32_t contact_cells(NeighborMask m) {
    uint32_t cells = 0;
    for (int n = 0; n < 26; ++n)
        if (m >> n & 1) cells |= cube27::tables().contact[n];
    return cells;
}

namespace detail {

// Exhaustive free-face collapse search on a subset of the 27 cube cells.
// A pair (tau, sigma) is removable from the live set S when sigma is the only
// live cofacet of tau and sigma itself has no live cofacet; because S stays
// closed under faces, tau then has no live coface other than sigma.
inline bool collapse_search(uint32_t live, uint32_t target,
                            std::unordered_set<uint32_t>& failed) {
    if (live == target) return true;
    if (failed.contains(live)) return false;
    const auto& t = cube27::tables();
    uint32_t movable = live & ~target;
    for (uint32_t taus = movable; taus;) {
        int tau = std::countr_zero(taus);
        taus &= taus - 1;
        uint32_t cof = t.cofacet_mask[tau] & live;
        if (std::popcount(cof) != 1) continue;
        int sigma = std::countr_zero(cof);
        if (target >> sigma & 1) continue;
        if (t.cofacet_mask[sigma] & live) continue;
        if (collapse_search(live & ~(uint32_t(1) << tau) & ~(uint32_t(1) << sigma),
                            target, failed))
            return true;
    }
    failed.insert(live);
    return false;
}

}  // namespace detail

// Fresh, unmemoized redundancy test: does the closed cube collapse onto the
// contact complex determined by the neighbour mask?
inline bool compute_redundancy(NeighborMask m) {
    if (m == 0) return false;  // nothing to collapse onto
    uint32_t target = contact_cells(m);
    uint32_t live = (uint32_t(1) << 27) - 1;
    if ((std::popcount(live) - std::popcount(target)) & 1) return false;
    std::unordered_set<uint32_t> failed;
    return detail::collapse_search(live, target, failed);
}

// Redundancy tests memoized per mask; safe for concurrent callers. A full
// 2^26-entry table may be attached, in which case lookups are direct.
class RedundancyOracle {
public:
    bool is_redundant(NeighborMask m) const {
        if (!table_.empty()) return table_[m >> 6] >> (m & 63) & 1;
        {
            std::shared_lock lock(mu_);
            auto it = memo_.find(m);
            if (it != memo_.end()) return it->second;
        }
        bool r = compute_redundancy(m);
        std::unique_lock lock(mu_);
        memo_.emplace(m, r);
        return r;
    }

    void attach_table(std::vector<uint64_t> bits) {
        if (bits.size() != table_words) throw std::invalid_argument("bad table size");
        table_ = std::move(bits);
    }

    size_t memo_size() const {
        std::shared_lock lock(mu_);
        return memo_.size();
    }

    static constexpr size_t table_words = (size_t(1) << 26) / 64;

private:
    mutable std::shared_mutex mu_;
    mutable std::unordered_map<NeighborMask, bool> memo_;
    std::vector<uint64_t> table_;
};

inline RedundancyOracle& default_redundancy_oracle() {
    static RedundancyOracle oracle;
    return oracle;
}

inline constexpr const char* redundancy_table_header = "CUBE3-REDUNDANCY v1";

// Materialize the full table: one bit per mask, bit index = mask value.
// Masks are grouped by their canonical representative under the 48 cube
// symmetries, so only ~1/48 of the searches run.
inline std::vector<uint64_t> build_redundancy_table(unsigned jobs = 0) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    const uint32_t total = uint32_t(1) << 26;
    std::vector<uint64_t> bits(RedundancyOracle::table_words, 0);

    std::unordered_map<NeighborMask, bool> canon;
    std::mutex canon_mu;
    std::atomic<uint32_t> next{0};
    const uint32_t chunk = 1 << 16;
    auto worker = [&] {
        std::unordered_map<NeighborMask, bool> local;
        for (;;) {
            uint32_t begin = next.fetch_add(chunk);
            if (begin >= total) break;
            uint32_t end = std::min(total, begin + chunk);
            for (uint32_t m = begin; m < end; ++m)
                if (canonical_mask(m) == m) local.emplace(m, compute_redundancy(m));
        }
        std::lock_guard lock(canon_mu);
        canon.merge(local);
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    next = 0;
    auto filler = [&] {
        for (;;) {
            uint32_t begin = next.fetch_add(chunk);
            if (begin >= total) break;
            uint32_t end = std::min(total, begin + chunk);
            for (uint32_t m = begin; m < end; ++m)
                if (canon.at(canonical_mask(m)))
                    bits[m >> 6] |= uint64_t(1) << (m & 63);
        }
    };
    pool.clear();
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(filler);
    for (auto& t : pool) t.join();
    return bits;
}

inline void save_redundancy_table(const std::vector<uint64_t>& bits, std::ostream& os) {
    if (bits.size() != RedundancyOracle::table_words) throw std::invalid_argument("bad table size");
    os << redundancy_table_header << '\n';
    for (uint64_t w : bits)
        for (int b = 0; b < 8; ++b) os.put(char(w >> (8 * b) & 0xFF));
}

inline std::vector<uint64_t> load_redundancy_table(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header != redundancy_table_header)
        throw std::runtime_error("not a redundancy table file");
    std::vector<uint64_t> bits(RedundancyOracle::table_words, 0);
    for (auto& w : bits)
        for (int b = 0; b < 8; ++b) {
            int c = is.get();
            if (c < 0) throw std::runtime_error("truncated redundancy table");
            w |= uint64_t(uint8_t(c)) << (8 * b);
        }
    return bits;
}

}  // namespace cubetop
