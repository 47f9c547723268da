#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cubetop/complex.hpp"
#include "cubetop/fpgroup.hpp"
#include "cubetop/morse.hpp"
#include "cubetop/redundancy.hpp"
#include "cubetop/word.hpp"

namespace cubetop {

// Cell handle of a C-structure: dimension and id within that dimension.
struct CCell {
    int dim = 0;
    int id = 0;

    friend bool operator==(const CCell&, const CCell&) = default;
    friend auto operator<=>(const CCell&, const CCell&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CCell& c) {
    return os << "vef"[c.dim] << c.id;
}

}  // namespace cubetop

template <>
struct std::hash<cubetop::CCell> {
    size_t operator()(const cubetop::CCell& c) const noexcept {
        uint64_t k = (uint64_t(uint32_t(c.dim)) << 32) | uint32_t(c.id);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return size_t(k);
    }
};

namespace cubetop {

struct ReductionPairC {
    enum class Kind { vertex_edge, edge_face };
    Kind kind;
    int lower = 0;  // alpha_0
    int upper = 0;  // alpha_1
};

// A 2-dimensional combinatorial complex: a directed edge multigraph plus
// 2-cells whose boundaries are cycles in it, written as words.
class CStructure {
public:
    int add_vertex() {
        vertex_alive_.push_back(1);
        vertex_edges_.emplace_back();
        return int(vertex_alive_.size()) - 1;
    }

    int add_edge(int src, int dst) {
        int e = int(edge_alive_.size());
        edge_alive_.push_back(1);
        edge_src_.push_back(src);
        edge_dst_.push_back(dst);
        edge_faces_.emplace_back();
        vertex_edges_.at(src).push_back(e);
        if (dst != src) vertex_edges_.at(dst).push_back(e);
        return e;
    }

    int add_face(Word w) {
        int f = int(face_alive_.size());
        face_alive_.push_back(1);
        for (Letter l : w.letters) edge_faces_.at(letter_id(l)).push_back(f);
        face_word_.push_back(std::move(w));
        return f;
    }

    bool vertex_alive(int v) const { return vertex_alive_.at(v); }
    bool edge_alive(int e) const { return edge_alive_.at(e); }
    bool face_alive(int f) const { return face_alive_.at(f); }
    int edge_source(int e) const { return edge_src_.at(e); }
    int edge_target(int e) const { return edge_dst_.at(e); }
    const Word& face_boundary(int f) const { return face_word_.at(f); }

    std::vector<int> alive_vertices() const { return alive_ids(vertex_alive_); }
    std::vector<int> alive_edges() const { return alive_ids(edge_alive_); }
    std::vector<int> alive_faces() const { return alive_ids(face_alive_); }

    long long euler_characteristic() const {
        return (long long)alive_vertices().size() - (long long)alive_edges().size() +
               (long long)alive_faces().size();
    }

    // Edges currently incident to v, each once, id order.
    std::vector<int> edges_at_vertex(int v) const {
        std::vector<int> out;
        std::unordered_set<int> seen;
        for (int e : vertex_edges_.at(v))
            if (edge_alive_[e] && (edge_src_[e] == v || edge_dst_[e] == v) && seen.insert(e).second)
                out.push_back(e);
        return out;
    }

    // Faces whose boundary word currently mentions e, each once, id order.
    std::vector<int> faces_at_edge(int e) const {
        std::vector<int> out;
        std::unordered_set<int> seen;
        for (int f : edge_faces_.at(e))
            if (face_alive_[f] && face_word_[f].count_edge(e) > 0 && seen.insert(f).second)
                out.push_back(f);
        return out;
    }

    void collapse(const ReductionPairC& pair) {
        if (pair.kind == ReductionPairC::Kind::vertex_edge)
            collapse_vertex_edge(pair.lower, pair.upper);
        else
            collapse_edge_face(pair.lower, pair.upper);
    }

    // Removes the pair (v, e) and remaps every other endpoint equal to v to
    // the opposite endpoint of e.
    void collapse_vertex_edge(int v, int e) {
        if (!vertex_alive_.at(v) || !edge_alive_.at(e)) throw std::invalid_argument("dead cell in reduction pair");
        int s = edge_src_[e], t = edge_dst_[e];
        if (s == t) throw std::invalid_argument("loop edge is not a regular coface of its vertex");
        if (s != v && t != v) throw std::invalid_argument("vertex is not an endpoint of the edge");
        int other = s == v ? t : s;
        vertex_alive_[v] = 0;
        edge_alive_[e] = 0;
        for (int x : vertex_edges_[v]) {
            if (!edge_alive_[x]) continue;
            bool touched = false;
            if (edge_src_[x] == v) { edge_src_[x] = other; touched = true; }
            if (edge_dst_[x] == v) { edge_dst_[x] = other; touched = true; }
            if (touched) vertex_edges_[other].push_back(x);
        }
        vertex_edges_[v].clear();
    }

    // Removes the pair (z, f). The boundary of f, rotated to start at its
    // unique z letter z^e followed by the path w, yields the replacement
    // w^-e, which is substituted for z in every remaining boundary word.
    void collapse_edge_face(int z, int f) {
        if (!edge_alive_.at(z) || !face_alive_.at(f)) throw std::invalid_argument("dead cell in reduction pair");
        const Word& w = face_word_[f];
        if (w.count_edge(z) != 1)
            throw std::invalid_argument("edge does not occur exactly once in the face boundary");
        size_t pos = 0;
        while (letter_id(w.letters[pos]) != z) ++pos;
        Word rot;
        for (size_t i = 0; i < w.size(); ++i) rot.push_back(w.letters[(pos + i) % w.size()]);
        int eps = letter_sign(rot.letters.front());
        Word tail;
        for (size_t i = 1; i < rot.size(); ++i) tail.push_back(rot.letters[i]);
        Word zeta = eps > 0 ? tail.inverse() : tail;

        edge_alive_[z] = 0;
        face_alive_[f] = 0;
        for (int x : faces_at_edge(z)) {
            Word next = substitute(face_word_[x], z, zeta);
            next.cyclic_reduce();
            face_word_[x] = std::move(next);
            for (Letter l : zeta.letters) edge_faces_[letter_id(l)].push_back(x);
        }
        edge_faces_[z].clear();
    }

    // Every boundary word must be a closed path over live cells.
    bool valid(std::string* why = nullptr) const {
        auto fail = [&](const std::string& msg) {
            if (why) *why = msg;
            return false;
        };
        for (size_t e = 0; e < edge_alive_.size(); ++e) {
            if (!edge_alive_[e]) continue;
            if (!vertex_alive_.at(edge_src_[e]) || !vertex_alive_.at(edge_dst_[e]))
                return fail("edge " + std::to_string(e) + " has a dead endpoint");
        }
        for (size_t f = 0; f < face_alive_.size(); ++f) {
            if (!face_alive_[f]) continue;
            const Word& w = face_word_[f];
            if (w.empty()) continue;
            for (Letter l : w.letters)
                if (!edge_alive_.at(letter_id(l)))
                    return fail("face " + std::to_string(f) + " mentions a dead edge");
            int start = initial_vertex(w.letters.front());
            int cur = start;
            for (Letter l : w.letters) {
                if (initial_vertex(l) != cur)
                    return fail("face " + std::to_string(f) + " boundary is not a path");
                cur = terminal_vertex(l);
            }
            if (cur != start) return fail("face " + std::to_string(f) + " boundary is not a cycle");
        }
        return true;
    }

    // Reads off generators and relators. Pre: exactly one vertex remains.
    GroupPresentation presentation() const {
        auto vs = alive_vertices();
        if (vs.size() != 1)
            throw std::logic_error("presentation requires exactly one vertex, have " +
                                   std::to_string(vs.size()));
        std::unordered_map<int, int> gen;
        auto es = alive_edges();
        for (size_t i = 0; i < es.size(); ++i) gen[es[i]] = int(i);
        GroupPresentation p;
        p.generators = int(es.size());
        for (int f : alive_faces()) {
            Word r;
            for (Letter l : face_word_[f].letters)
                r.push_back(make_letter(gen.at(letter_id(l)), letter_sign(l)));
            p.relators.push_back(std::move(r));
        }
        return p;
    }

private:
    static std::vector<int> alive_ids(const std::vector<char>& flags) {
        std::vector<int> out;
        for (size_t i = 0; i < flags.size(); ++i)
            if (flags[i]) out.push_back(int(i));
        return out;
    }

    int initial_vertex(Letter l) const {
        return letter_sign(l) > 0 ? edge_src_[letter_id(l)] : edge_dst_[letter_id(l)];
    }
    int terminal_vertex(Letter l) const {
        return letter_sign(l) > 0 ? edge_dst_[letter_id(l)] : edge_src_[letter_id(l)];
    }

    std::vector<char> vertex_alive_, edge_alive_, face_alive_;
    std::vector<int> edge_src_, edge_dst_;
    std::vector<Word> face_word_;
    std::vector<std::vector<int>> vertex_edges_;  // may hold stale entries
    std::vector<std::vector<int>> edge_faces_;    // may hold stale entries
};

// Abstract-complex view of a C-structure for the coreduction machinery.
// Boundaries carry multiplicity; an edge appearing twice in a boundary word
// or a loop edge never yields a regular facet.
class CStructureView {
public:
    using cell_type = CCell;

    explicit CStructureView(const CStructure& c) : c_(&c) {}

    std::vector<CCell> cells() const {
        std::vector<CCell> out;
        for (int v : c_->alive_vertices()) out.push_back({0, v});
        for (int e : c_->alive_edges()) out.push_back({1, e});
        for (int f : c_->alive_faces()) out.push_back({2, f});
        return out;
    }

    int dim(const CCell& c) const { return c.dim; }

    std::vector<CCell> boundary(const CCell& c) const {
        std::vector<CCell> out;
        if (c.dim == 1) {
            out.push_back({0, c_->edge_source(c.id)});
            out.push_back({0, c_->edge_target(c.id)});
        } else if (c.dim == 2) {
            for (Letter l : c_->face_boundary(c.id).letters) out.push_back({1, letter_id(l)});
        }
        return out;
    }

    std::vector<CCell> coboundary(const CCell& c) const {
        std::vector<CCell> out;
        if (c.dim == 0) {
            for (int e : c_->edges_at_vertex(c.id)) out.push_back({1, e});
        } else if (c.dim == 1) {
            for (int f : c_->faces_at_edge(c.id)) out.push_back({2, f});
        }
        return out;
    }

    bool regular_facet(const CCell& tau, const CCell& sigma) const {
        if (tau.dim == 0 && sigma.dim == 1)
            return c_->edge_source(sigma.id) != c_->edge_target(sigma.id) &&
                   (c_->edge_source(sigma.id) == tau.id || c_->edge_target(sigma.id) == tau.id);
        if (tau.dim == 1 && sigma.dim == 2)
            return c_->face_boundary(sigma.id).count_edge(tau.id) == 1;
        return false;
    }

private:
    const CStructure* c_;
};

inline ReductionPairC to_reduction_pair(const CCell& tau, const CCell& sigma) {
    if (tau.dim == 0 && sigma.dim == 1)
        return {ReductionPairC::Kind::vertex_edge, tau.id, sigma.id};
    if (tau.dim == 1 && sigma.dim == 2)
        return {ReductionPairC::Kind::edge_face, tau.id, sigma.id};
    throw std::invalid_argument("not a C-structure reduction pair");
}

inline CStructure alpha_collapse(CStructure c, const ReductionPairC& pair) {
    c.collapse(pair);
    return c;
}

// C-structure of the quotient K/A: the 2-skeleton of K with the cells of the
// collapsible subcomplex A removed, endpoints inside A remapped to a single
// base vertex, and boundary-word letters inside A omitted. Cubical edges are
// oriented toward the larger Khalimsky coordinate; square boundaries are
// walked counterclockwise in their plane.
inline CStructure from_quotient(const ToplexSet& k, const ToplexSet& a, bool check = true) {
    if (a.empty()) throw std::invalid_argument("quotient subcomplex is empty");
    for (const Cube& q : a.cubes())
        if (!k.contains(q)) throw std::invalid_argument("quotient subcomplex is not contained in the complex");
    if (check) {
        if (a.euler_characteristic() != 1)
            throw std::invalid_argument("quotient subcomplex is not collapsible (Euler characteristic)");
        auto dvf = coreduction_dvf(CubicalComplexView(a));
        if (dvf.critical.size() != 1)
            throw std::invalid_argument("quotient subcomplex failed the collapsibility check");
    }

    CStructure c;
    int base = c.add_vertex();
    std::unordered_map<Cell, int> vid, eid;
    std::vector<Cell> cells = k.all_cells();

    for (const Cell& s : cells)
        if (dimension(s) == 0 && !a.contains_cell(s)) vid.emplace(s, c.add_vertex());
    auto vertex_of = [&](const Cell& v) {
        auto it = vid.find(v);
        return it == vid.end() ? base : it->second;
    };
    for (const Cell& s : cells) {
        if (dimension(s) != 1 || a.contains_cell(s)) continue;
        auto bd = boundary_cells(s);  // lower endpoint first
        eid.emplace(s, c.add_edge(vertex_of(bd[0]), vertex_of(bd[1])));
    }
    for (const Cell& s : cells) {
        if (dimension(s) != 2 || a.contains_cell(s)) continue;
        int u = -1, v = -1;
        for (int axis = 0; axis < 3; ++axis)
            if (is_odd(s.c[axis])) (u < 0 ? u : v) = axis;
        Cell bottom = s, right = s, top = s, left = s;
        bottom.c[v] -= 1;
        right.c[u] += 1;
        top.c[v] += 1;
        left.c[u] -= 1;
        Word w;
        for (auto [cell, sign] : {std::pair{bottom, 1}, {right, 1}, {top, -1}, {left, -1}}) {
            auto it = eid.find(cell);
            if (it != eid.end()) w.push_back(make_letter(it->second, sign));
        }
        c.add_face(std::move(w));
    }

    std::string why;
    if (!c.valid(&why)) throw std::logic_error("quotient C-structure invalid: " + why);
    return c;
}

}  // namespace cubetop
