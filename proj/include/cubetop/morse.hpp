#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cubetop/complex.hpp"

namespace cubetop {

// Order in which cells are fed to the coreduction queue seeding. Results are
// deterministic for a fixed policy and seed.
enum class CellOrdering { lex, revlex, random };

struct OrderingOptions {
    CellOrdering policy = CellOrdering::lex;
    uint64_t seed = 0;
};

inline const char* to_string(CellOrdering p) {
    switch (p) {
        case CellOrdering::lex: return "lex";
        case CellOrdering::revlex: return "revlex";
        case CellOrdering::random: return "random";
    }
    return "?";
}

namespace detail {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

template <typename T>
void apply_ordering(std::vector<T>& cells, const OrderingOptions& opts) {
    switch (opts.policy) {
        case CellOrdering::lex: break;
        case CellOrdering::revlex:
            std::reverse(cells.begin(), cells.end());
            break;
        case CellOrdering::random: {
            uint64_t state = opts.seed;
            for (size_t i = cells.size(); i > 1; --i)
                std::swap(cells[i - 1], cells[splitmix64(state) % i]);
            break;
        }
    }
}

}  // namespace detail

// A discrete vector field: an injective partial map on cells given by the
// reduction pairs (tau, sigma), in discovery order, plus the critical cells.
template <typename CellT>
struct DiscreteVectorField {
    std::vector<std::pair<CellT, CellT>> vectors;
    std::vector<CellT> critical;

    std::unordered_map<CellT, CellT> pairing() const {
        std::unordered_map<CellT, CellT> m;
        m.reserve(vectors.size());
        for (const auto& [tau, sigma] : vectors) m.emplace(tau, sigma);
        return m;
    }
};

// Coreduction construction of an acyclic discrete vector field. On a
// non-empty, regular, connected complex the critical set contains exactly one
// cell of dimension zero. A cell sigma is paired with tau only when tau is
// the single remaining boundary cell of sigma, appears with multiplicity one,
// and is a regular facet.
template <typename View>
DiscreteVectorField<typename View::cell_type> coreduction_dvf(
    const View& view, const OrderingOptions& opts = {}) {
    using CellT = typename View::cell_type;
    DiscreteVectorField<CellT> field;

    std::vector<CellT> cells = view.cells();
    detail::apply_ordering(cells, opts);
    const size_t n = cells.size();
    if (n == 0) return field;

    std::unordered_map<CellT, size_t> id;
    id.reserve(n);
    for (size_t i = 0; i < n; ++i) id.emplace(cells[i], i);

    int max_dim = 0;
    std::vector<int> dim(n);
    for (size_t i = 0; i < n; ++i) {
        dim[i] = view.dim(cells[i]);
        max_dim = std::max(max_dim, dim[i]);
    }
    std::vector<std::vector<size_t>> by_dim(max_dim + 1);
    for (size_t i = 0; i < n; ++i) by_dim[dim[i]].push_back(i);
    std::vector<size_t> cursor(max_dim + 1, 0);
    std::vector<size_t> alive_in_dim(max_dim + 1, 0);
    for (int d = 0; d <= max_dim; ++d) alive_in_dim[d] = by_dim[d].size();

    std::vector<char> alive(n, 1), queued(n, 0);
    size_t alive_total = n;
    std::deque<size_t> queue;

    auto remove = [&](size_t i) {
        alive[i] = 0;
        --alive_total;
        --alive_in_dim[dim[i]];
    };
    auto enqueue_coboundary = [&](const CellT& c) {
        for (const CellT& u : view.coboundary(c)) {
            size_t ui = id.at(u);
            if (alive[ui] && !queued[ui]) {
                queued[ui] = 1;
                queue.push_back(ui);
            }
        }
    };

    while (alive_total > 0) {
        if (queue.empty()) {
            int d = 0;
            while (alive_in_dim[d] == 0) ++d;
            size_t& cur = cursor[d];
            while (!alive[by_dim[d][cur]]) ++cur;
            size_t r = by_dim[d][cur];
            remove(r);
            field.critical.push_back(cells[r]);
            enqueue_coboundary(cells[r]);
        } else {
            size_t si = queue.front();
            queue.pop_front();
            queued[si] = 0;
            if (!alive[si]) continue;
            const CellT& sigma = cells[si];
            CellT tau{};
            int distinct = 0, multiplicity = 0;
            for (const CellT& b : view.boundary(sigma)) {
                size_t bi = id.at(b);
                if (!alive[bi]) continue;
                if (distinct == 0 || !(b == tau)) {
                    ++distinct;
                    tau = b;
                    multiplicity = 1;
                } else {
                    ++multiplicity;
                }
                if (distinct > 1) break;
            }
            if (distinct == 1 && multiplicity == 1 && view.regular_facet(tau, sigma)) {
                remove(id.at(tau));
                remove(si);
                field.vectors.emplace_back(tau, sigma);
                enqueue_coboundary(tau);
            } else if (distinct == 0) {
                enqueue_coboundary(sigma);
            }
        }
    }
    return field;
}

// Cycle detection on the modified facet digraph G_V: edges run from each cell
// to each of its facets, reversed on the pairs of the field.
template <typename View>
bool verify_acyclic(const View& view,
                    const DiscreteVectorField<typename View::cell_type>& field) {
    using CellT = typename View::cell_type;
    std::vector<CellT> cells = view.cells();
    const size_t n = cells.size();
    std::unordered_map<CellT, size_t> id;
    id.reserve(n);
    for (size_t i = 0; i < n; ++i) id.emplace(cells[i], i);

    auto pairs = field.pairing();
    std::vector<std::vector<size_t>> adj(n);
    for (size_t i = 0; i < n; ++i) {
        for (const CellT& b : view.boundary(cells[i])) {
            size_t bi = id.at(b);
            auto it = pairs.find(b);
            if (it != pairs.end() && it->second == cells[i])
                adj[bi].push_back(i);  // reversed: tau -> V(tau)
            else
                adj[i].push_back(bi);
        }
    }

    std::vector<uint8_t> color(n, 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<std::pair<size_t, size_t>> stack;
    for (size_t root = 0; root < n; ++root) {
        if (color[root]) continue;
        color[root] = 1;
        stack.push_back({root, 0});
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < adj[v].size()) {
                size_t w = adj[v][next++];
                if (color[w] == 1) return false;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

// The critical cells must carry the full Euler characteristic.
template <typename View>
bool critical_euler_check(const View& view,
                          const DiscreteVectorField<typename View::cell_type>& field) {
    long long chi_all = 0, chi_crit = 0;
    for (const auto& c : view.cells()) chi_all += (view.dim(c) & 1) ? -1 : 1;
    for (const auto& c : field.critical) chi_crit += (view.dim(c) & 1) ? -1 : 1;
    return chi_all == chi_crit;
}

// Exact set algebra: dom V, im V and the critical cells partition the complex.
template <typename View>
bool dvf_partition_valid(const View& view,
                         const DiscreteVectorField<typename View::cell_type>& field) {
    using CellT = typename View::cell_type;
    std::unordered_map<CellT, int> seen;
    for (const auto& [tau, sigma] : field.vectors) {
        if (++seen[tau] > 1) return false;
        if (++seen[sigma] > 1) return false;
    }
    for (const auto& c : field.critical)
        if (++seen[c] > 1) return false;
    std::vector<CellT> cells = view.cells();
    if (seen.size() != cells.size()) return false;
    for (const auto& c : cells)
        if (!seen.contains(c)) return false;
    return true;
}

template <typename View>
void dump_dvf(const View& view,
              const DiscreteVectorField<typename View::cell_type>& field,
              std::ostream& os) {
    auto name = [](const auto& c) {
        std::ostringstream ss;
        ss << c;
        return ss.str();
    };
    for (const auto& [tau, sigma] : field.vectors)
        os << "VEC " << view.dim(tau) << ' ' << name(tau) << ' ' << name(sigma) << '\n';
    for (const auto& c : field.critical)
        os << "CRIT " << view.dim(c) << ' ' << name(c) << '\n';
}

// View of a cubical complex as an abstract cell complex. Facets of cubical
// cells always have multiplicity one and every facet is regular.
class CubicalComplexView {
public:
    using cell_type = Cell;

    explicit CubicalComplexView(const CubicalComplex& k) : k_(&k) {}

    std::vector<Cell> cells() const { return k_->all_cells(); }
    int dim(const Cell& s) const { return dimension(s); }
    std::vector<Cell> boundary(const Cell& s) const { return boundary_cells(s); }
    std::vector<Cell> coboundary(const Cell& s) const { return k_->coboundary_cells(s); }
    bool regular_facet(const Cell&, const Cell&) const { return true; }

private:
    const CubicalComplex* k_;
};

}  // namespace cubetop
