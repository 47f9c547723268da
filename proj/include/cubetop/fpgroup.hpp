#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubetop/word.hpp"

namespace cubetop {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

// Generators are 0..generators-1; relator letters reference them.
struct GroupPresentation {
    int generators = 0;
    std::vector<Word> relators;

    size_t total_length() const {
        size_t n = 0;
        for (const Word& r : relators) n += r.size();
        return n;
    }
};

inline std::string generator_name(int id) { return "g" + std::to_string(id + 1); }

inline std::string to_string(const GroupPresentation& p) {
    std::string s = "< ";
    for (int i = 0; i < p.generators; ++i) {
        if (i) s += ", ";
        s += generator_name(i);
    }
    s += " | ";
    for (size_t i = 0; i < p.relators.size(); ++i) {
        if (i) s += ", ";
        for (size_t j = 0; j < p.relators[i].size(); ++j) {
            if (j) s += ' ';
            Letter l = p.relators[i].letters[j];
            s += generator_name(letter_id(l));
            if (letter_sign(l) < 0) s += "^-1";
        }
    }
    s += " >";
    return s;
}

// Finitely generated abelian group in invariant-factor form.
struct AbelianGroup {
    long long rank = 0;
    std::vector<long long> torsion;  // d1 | d2 | ..., each >= 2

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
    friend auto operator<=>(const AbelianGroup&, const AbelianGroup&) = default;
};

inline std::string to_string(const AbelianGroup& g) {
    std::string s;
    if (g.rank == 1)
        s = "Z";
    else if (g.rank > 1)
        s = "Z^" + std::to_string(g.rank);
    for (long long d : g.torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + std::to_string(d);
    }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

// Diagonalizes an integer matrix by unimodular row/column operations, pivoting
// on entries of minimal absolute value. Returns the nonzero diagonal entries
// d1 | d2 | ... (including any leading 1s).
inline std::vector<BigInt> smith_normal_form(IntMatrix a) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<BigInt> divisors;
    size_t t = 0;
    while (t < rows && t < cols) {
        size_t pi = t, pj = t;
        BigInt best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                BigInt v = abs(a[i][j]);
                if (best == 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        std::swap(a[t], a[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);

        for (bool clean = false; !clean;) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {  // remainder became the smaller pivot
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
            if (clean) {
                // pivot must divide the remaining submatrix for the chain
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                            clean = false;
                        }
            }
        }
        if (a[t][t] < 0) a[t][t] = -a[t][t];
        divisors.push_back(a[t][t]);
        ++t;
    }
    return divisors;
}

inline IntMatrix relator_exponent_matrix(const GroupPresentation& p) {
    IntMatrix m(p.relators.size(), std::vector<BigInt>(p.generators, 0));
    for (size_t i = 0; i < p.relators.size(); ++i)
        for (Letter l : p.relators[i].letters) m[i][letter_id(l)] += letter_sign(l);
    return m;
}

inline AbelianGroup abelianization(const GroupPresentation& p) {
    std::vector<BigInt> divisors = smith_normal_form(relator_exponent_matrix(p));
    AbelianGroup g;
    g.rank = p.generators - (long long)divisors.size();
    for (const BigInt& d : divisors)
        if (d > 1) g.torsion.push_back(d.convert_to<long long>());
    return g;
}

// ---------------------------------------------------------------------------
// Tietze simplification
// ---------------------------------------------------------------------------

struct TietzeOptions {
    size_t max_passes = 1000;
    size_t length_cap_factor = 10;
};

namespace detail {

inline std::string cyclic_canonical_key(const Word& w) {
    auto render = [](const Word& v) {
        std::string s;
        for (Letter l : v.letters) s += std::to_string(l) + ",";
        return s;
    };
    Word best = w;
    std::string best_key = render(w);
    for (Word variant : {w, w.inverse()}) {
        for (size_t r = 0; r < std::max<size_t>(variant.size(), 1); ++r) {
            std::string key = render(variant);
            if (key < best_key) best_key = key;
            if (!variant.empty()) variant.rotate_front_to_back();
        }
    }
    return best_key;
}

// Longest common contiguous subword between the cyclic words r and s (or its
// inverse). Returns (length, start in r, start in s, inverted).
struct CommonSubword {
    size_t len = 0, r_start = 0, s_start = 0;
    bool inverted = false;
};

inline CommonSubword longest_cyclic_common(const Word& r, const Word& s) {
    CommonSubword best;
    const size_t nr = r.size(), ns = s.size();
    if (nr == 0 || ns == 0) return best;
    std::vector<Letter> dr(r.letters.begin(), r.letters.end());
    dr.insert(dr.end(), r.letters.begin(), r.letters.end());
    for (int variant = 0; variant < 2; ++variant) {
        Word sv = variant ? s.inverse() : s;
        std::vector<Letter> ds(sv.letters.begin(), sv.letters.end());
        ds.insert(ds.end(), sv.letters.begin(), sv.letters.end());
        // match[j]: length of match ending at dr[i-1], ds[j-1]
        std::vector<size_t> prev(ds.size() + 1, 0), cur(ds.size() + 1, 0);
        for (size_t i = 1; i <= dr.size(); ++i) {
            for (size_t j = 1; j <= ds.size(); ++j) {
                cur[j] = dr[i - 1] == ds[j - 1] ? prev[j - 1] + 1 : 0;
                size_t len = std::min({cur[j], nr, ns});
                if (len > best.len) {
                    best.len = len;
                    best.r_start = (i - len) % nr;
                    best.s_start = (j - len) % ns;
                    best.inverted = variant;
                }
            }
            std::swap(prev, cur);
        }
    }
    return best;
}

inline Word rotate_word(const Word& w, size_t start) {
    Word out;
    for (size_t i = 0; i < w.size(); ++i) out.push_back(w.letters[(start + i) % w.size()]);
    return out;
}

}  // namespace detail

// Tietze transformations: free/cyclic reduction, removal of empty and
// duplicate relators, elimination of generators that occur exactly once in
// some relator, and shortening long relators against shorter ones. All passes
// preserve the isomorphism class; a total-length cap aborts substitutions
// that would inflate the presentation.
inline GroupPresentation tietze_simplify(GroupPresentation p, const TietzeOptions& opts = {}) {
    const size_t cap = std::max<size_t>(64, opts.length_cap_factor * p.total_length());

    auto normalize = [&]() {
        std::unordered_set<std::string> seen;
        std::vector<Word> kept;
        for (Word& r : p.relators) {
            r.cyclic_reduce();
            if (r.empty()) continue;
            if (seen.insert(detail::cyclic_canonical_key(r)).second) kept.push_back(std::move(r));
        }
        p.relators.swap(kept);
    };

    auto drop_generator = [&](int x) {
        for (Word& r : p.relators)
            for (Letter& l : r.letters)
                if (letter_id(l) > x) l = make_letter(letter_id(l) - 1, letter_sign(l));
        --p.generators;
    };

    normalize();
    for (size_t pass = 0; pass < opts.max_passes; ++pass) {
        bool changed = false;

        // shorten longer relators with subwords of shorter ones
        std::sort(p.relators.begin(), p.relators.end(),
                  [](const Word& a, const Word& b) { return a.size() < b.size(); });
        for (size_t si = 0; si < p.relators.size(); ++si)
            for (size_t ri = si + 1; ri < p.relators.size(); ++ri) {
                const Word& s = p.relators[si];
                Word& r = p.relators[ri];
                if (s.size() > r.size() || s.empty()) continue;
                auto m = detail::longest_cyclic_common(r, s);
                if (2 * m.len <= s.size()) continue;
                Word sv = m.inverted ? s.inverse() : s;
                Word s_rot = detail::rotate_word(sv, m.s_start);
                Word r_rot = detail::rotate_word(r, m.r_start);
                Word replacement;  // s_rot = u v with u the match, so u ~ v^-1
                for (size_t i = m.len; i < s_rot.size(); ++i) replacement.push_back(s_rot.letters[i]);
                Word next = replacement.inverse();
                for (size_t i = m.len; i < r_rot.size(); ++i) next.push_back(r_rot.letters[i]);
                next.cyclic_reduce();
                if (next.size() < r.size()) {
                    r = next;
                    changed = true;
                }
            }
        if (changed) normalize();

        // eliminate a generator with a single occurrence in some relator
        bool eliminated = false;
        std::sort(p.relators.begin(), p.relators.end(),
                  [](const Word& a, const Word& b) { return a.size() < b.size(); });
        for (size_t ri = 0; ri < p.relators.size() && !eliminated; ++ri) {
            const Word& r = p.relators[ri];
            for (size_t pos = 0; pos < r.size() && !eliminated; ++pos) {
                int x = letter_id(r.letters[pos]);
                if (r.count_edge(x) != 1) continue;
                size_t cost = 0;
                for (size_t j = 0; j < p.relators.size(); ++j)
                    if (j != ri) cost += p.relators[j].size() + p.relators[j].count_edge(x) * r.size();
                if (cost > cap) continue;
                Word rot = detail::rotate_word(r, pos);  // x^e tail = 1
                int sign = letter_sign(rot.letters.front());
                Word tail;
                for (size_t i = 1; i < rot.size(); ++i) tail.push_back(rot.letters[i]);
                Word rep = sign > 0 ? tail.inverse() : tail;  // x = (tail^-1)^sign
                std::vector<Word> next;
                for (size_t j = 0; j < p.relators.size(); ++j) {
                    if (j == ri) continue;
                    Word w = substitute(p.relators[j], x, rep);
                    w.cyclic_reduce();
                    next.push_back(std::move(w));
                }
                p.relators.swap(next);
                drop_generator(x);
                eliminated = changed = true;
            }
        }
        if (eliminated) normalize();

        if (!changed) break;
    }
    normalize();
    return p;
}

// ---------------------------------------------------------------------------
// Low-index subgroups
// ---------------------------------------------------------------------------

// Transitive permutation action of the generators on the cosets 0..index-1;
// the represented subgroup is the stabilizer of coset 0.
struct CosetTable {
    int index = 0;
    std::vector<std::vector<int>> action;  // action[gen][coset]

    int image(int gen, int coset, int sign) const {
        if (sign > 0) return action[gen][coset];
        const auto& fwd = action[gen];
        for (int p = 0; p < index; ++p)
            if (fwd[p] == coset) return p;
        return -1;
    }
};

namespace detail {

// Renumbers the cosets of a complete table by first appearance along a
// row-major scan of forward images starting from the given base coset, and
// flattens the result for lexicographic comparison.
inline std::vector<int> canonical_flat(const std::vector<std::vector<int>>& fwd, int k,
                                       int base) {
    const int g = int(fwd.size());
    std::vector<int> newid(k, -1), order;
    newid[base] = 0;
    order.push_back(base);
    for (size_t qi = 0; qi < order.size(); ++qi)
        for (int a = 0; a < g; ++a) {
            int im = fwd[a][order[qi]];
            if (newid[im] < 0) {
                newid[im] = int(order.size());
                order.push_back(im);
            }
        }
    std::vector<int> flat;
    flat.reserve(size_t(k) * g);
    for (int q = 0; q < k; ++q)
        for (int a = 0; a < g; ++a) flat.push_back(newid[fwd[a][order[q]]]);
    return flat;
}

inline bool relators_hold_everywhere(const GroupPresentation& p,
                                     const std::vector<std::vector<int>>& fwd,
                                     const std::vector<std::vector<int>>& inv, int k) {
    for (const Word& r : p.relators)
        for (int start = 0; start < k; ++start) {
            int cur = start;
            for (Letter l : r.letters) {
                cur = letter_sign(l) > 0 ? fwd[letter_id(l)][cur] : inv[letter_id(l)][cur];
                if (cur < 0) break;
            }
            if (cur >= 0 && cur != start) return false;
        }
    return true;
}

}  // namespace detail

// Enumerates the subgroups of index <= n up to conjugacy by backtracking over
// partial permutation images of the generators. Partial assignments are
// pruned on relator traces that already close incorrectly; cosets must be
// introduced in first-appearance order, and a completed table is kept only if
// it is lexicographically minimal among all base-coset renumberings.
inline std::vector<CosetTable> low_index_subgroups(const GroupPresentation& p, int n) {
    if (n < 1) throw std::invalid_argument("subgroup index bound must be positive");
    std::vector<CosetTable> out;
    const int g = p.generators;
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<int>> fwd(g, std::vector<int>(k, -1));
        std::vector<std::vector<int>> inv(g, std::vector<int>(k, -1));
        int used = 1;  // coset 0 exists

        auto relators_consistent = [&]() {
            for (const Word& r : p.relators)
                for (int start = 0; start < used; ++start) {
                    int cur = start;
                    bool complete = true;
                    for (Letter l : r.letters) {
                        int next = letter_sign(l) > 0 ? fwd[letter_id(l)][cur] : inv[letter_id(l)][cur];
                        if (next < 0) {
                            complete = false;
                            break;
                        }
                        cur = next;
                    }
                    if (complete && cur != start) return false;
                }
            return true;
        };

        auto dfs = [&](auto&& self, int slot) -> void {
            if (slot == k * g) {
                if (used != k) return;
                if (!detail::relators_hold_everywhere(p, fwd, inv, k)) return;
                auto flat = detail::canonical_flat(fwd, k, 0);
                for (int b = 1; b < k; ++b)
                    if (detail::canonical_flat(fwd, k, b) < flat) return;
                out.push_back(CosetTable{k, fwd});
                return;
            }
            int coset = slot / g, gen = slot % g;
            if (coset >= used) return;  // unreached coset: table can't be transitive
            for (int q = 0; q <= std::min(used, k - 1); ++q) {
                if (inv[gen][q] >= 0) continue;
                bool fresh = q == used;
                fwd[gen][coset] = q;
                inv[gen][q] = coset;
                if (fresh) ++used;
                if (relators_consistent()) self(self, slot + 1);
                if (fresh) --used;
                fwd[gen][coset] = -1;
                inv[gen][q] = -1;
            }
        };
        dfs(dfs, 0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subgroup presentations (Reidemeister-Schreier)
// ---------------------------------------------------------------------------

// Presentation of the stabilizer of coset 0: Schreier generators come from
// the coset-graph edges outside a BFS spanning tree, relators from rewriting
// every relator of the ambient group at every coset.
inline GroupPresentation subgroup_presentation(const GroupPresentation& p, const CosetTable& t) {
    const int g = p.generators, k = t.index;
    if (int(t.action.size()) != g) throw std::invalid_argument("coset table does not match presentation");
    std::vector<std::vector<int>> inv(g, std::vector<int>(k, -1));
    for (int a = 0; a < g; ++a)
        for (int q = 0; q < k; ++q) {
            int im = t.action[a][q];
            if (im < 0 || im >= k || inv[a][im] != -1)
                throw std::invalid_argument("coset table action is not a permutation");
            inv[a][im] = q;
        }

    std::vector<std::vector<char>> is_tree(g, std::vector<char>(k, 0));
    std::vector<char> visited(k, 0);
    std::vector<int> bfs{0};
    visited[0] = 1;
    for (size_t qi = 0; qi < bfs.size(); ++qi) {
        int q = bfs[qi];
        for (int a = 0; a < g; ++a) {
            int im = t.action[a][q];
            if (!visited[im]) {
                visited[im] = 1;
                is_tree[a][q] = 1;
                bfs.push_back(im);
            }
            int pre = inv[a][q];
            if (!visited[pre]) {
                visited[pre] = 1;
                is_tree[a][pre] = 1;
                bfs.push_back(pre);
            }
        }
    }
    for (int q = 0; q < k; ++q)
        if (!visited[q]) throw std::invalid_argument("coset table action is not transitive");

    std::vector<std::vector<int>> sgen(g, std::vector<int>(k, -1));
    int sgen_count = 0;
    for (int a = 0; a < g; ++a)
        for (int q = 0; q < k; ++q)
            if (!is_tree[a][q]) sgen[a][q] = sgen_count++;

    GroupPresentation sub;
    sub.generators = sgen_count;
    for (const Word& r : p.relators)
        for (int start = 0; start < k; ++start) {
            Word w;
            int cur = start;
            for (Letter l : r.letters) {
                int a = letter_id(l);
                if (letter_sign(l) > 0) {
                    if (sgen[a][cur] >= 0) w.push_back(make_letter(sgen[a][cur], 1));
                    cur = t.action[a][cur];
                } else {
                    int pre = inv[a][cur];
                    if (sgen[a][pre] >= 0) w.push_back(make_letter(sgen[a][pre], -1));
                    cur = pre;
                }
            }
            w.free_reduce();
            sub.relators.push_back(std::move(w));
        }
    return sub;
}

// ---------------------------------------------------------------------------
// The I^n invariant
// ---------------------------------------------------------------------------

using InvariantValue = std::set<AbelianGroup>;

// I^n: the set of abelianizations of all subgroups of index at most n,
// deduplicated by canonical form.
inline InvariantValue invariant_In(const GroupPresentation& p, int n) {
    InvariantValue value;
    for (const CosetTable& t : low_index_subgroups(p, n))
        value.insert(abelianization(subgroup_presentation(p, t)));
    return value;
}

inline std::string to_string(const InvariantValue& v) {
    std::string s = "{";
    bool first = true;
    for (const AbelianGroup& g : v) {
        if (!first) s += ", ";
        first = false;
        s += to_string(g);
    }
    return s + "}";
}

}  // namespace cubetop
