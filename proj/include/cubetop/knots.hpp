#pragma once

#include <cctype>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubetop/complex.hpp"

namespace cubetop {

struct GridParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arc presentation of a knot on an n x n grid: column i carries two marks,
// in rows pairs[i].first and pairs[i].second. Verticals join the two marks of
// a column, horizontals the two marks of a row; verticals cross over.
struct GridDiagram {
    std::vector<std::pair<int, int>> pairs;  // 1-based rows, one pair per column

    int size() const { return int(pairs.size()); }

    std::string text() const {
        std::string s = "[";
        for (size_t i = 0; i < pairs.size(); ++i) {
            if (i) s += ",";
            s += "[" + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) + "]";
        }
        return s + "]";
    }

    // The two columns marked in a given row.
    std::pair<int, int> row_span(int row) const {
        int a = 0, b = 0;
        for (int i = 0; i < size(); ++i)
            if (pairs[i].first == row || pairs[i].second == row) (a ? b : a) = i + 1;
        return {a, b};
    }
};

inline void validate_grid(const GridDiagram& d) {
    const int n = d.size();
    if (n < 2) throw GridParseError("grid diagram needs at least 2 columns, got " + std::to_string(n));
    std::vector<int> row_uses(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        auto [a, b] = d.pairs[i];
        if (a == b)
            throw GridParseError("column " + std::to_string(i + 1) + " marks coincide (row " +
                                 std::to_string(a) + ")");
        for (int r : {a, b}) {
            if (r < 1 || r > n)
                throw GridParseError("column " + std::to_string(i + 1) + " row index " +
                                     std::to_string(r) + " outside 1.." + std::to_string(n));
            ++row_uses[r];
        }
    }
    for (int r = 1; r <= n; ++r)
        if (row_uses[r] != 2)
            throw GridParseError("row " + std::to_string(r) + " is marked " +
                                 std::to_string(row_uses[r]) + " times, expected 2");
}

// Accepts a bracketed pair list such as [[2,5],[1,3],[2,4],[3,5],[1,4]],
// whitespace-insensitive.
inline GridDiagram parse_grid(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    size_t pos = 0;
    auto expect = [&](char c) {
        if (pos >= s.size() || s[pos] != c)
            throw GridParseError(std::string("malformed grid: expected '") + c + "' at position " +
                                 std::to_string(pos));
        ++pos;
    };
    auto number = [&]() {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw GridParseError("malformed grid: expected a number at position " +
                                               std::to_string(pos));
        return std::stoi(s.substr(start, pos - start));
    };
    GridDiagram d;
    expect('[');
    while (pos < s.size() && s[pos] != ']') {
        expect('[');
        int a = number();
        expect(',');
        int b = number();
        expect(']');
        d.pairs.emplace_back(a, b);
        if (pos < s.size() && s[pos] == ',') ++pos;
    }
    expect(']');
    if (pos != s.size()) throw GridParseError("malformed grid: trailing characters");
    validate_grid(d);
    return d;
}

// Swap the role of rows and columns.
inline GridDiagram transpose_grid(const GridDiagram& d) {
    GridDiagram t;
    t.pairs.resize(d.size());
    std::vector<int> filled(d.size(), 0);
    for (int i = 0; i < d.size(); ++i)
        for (int r : {d.pairs[i].first, d.pairs[i].second}) {
            auto& p = t.pairs[r - 1];
            (filled[r - 1]++ ? p.second : p.first) = i + 1;
        }
    validate_grid(t);
    return t;
}

inline GridDiagram mirror_grid(const GridDiagram& d) {
    GridDiagram m;
    for (auto it = d.pairs.rbegin(); it != d.pairs.rend(); ++it) m.pairs.push_back(*it);
    validate_grid(m);
    return m;
}

// Knot table file: one `name: [[a,b],...]` per line, `#` comments.
inline std::vector<std::pair<std::string, GridDiagram>> parse_knot_table(std::istream& is) {
    std::vector<std::pair<std::string, GridDiagram>> out;
    std::set<std::string> names;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw GridParseError("knot table line " + std::to_string(lineno) + ": missing ':'");
        std::string name = line.substr(begin, colon - begin);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        if (name.empty())
            throw GridParseError("knot table line " + std::to_string(lineno) + ": empty name");
        if (!names.insert(name).second)
            throw GridParseError("knot table line " + std::to_string(lineno) + ": duplicate knot '" +
                                 name + "'");
        try {
            out.emplace_back(name, parse_grid(line.substr(colon + 1)));
        } catch (const GridParseError& e) {
            throw GridParseError("knot '" + name + "': " + e.what());
        }
    }
    return out;
}

// The thickened knot and its complement inside a padded cubical ball.
struct KnotEmbedding {
    ToplexSet knot_cubes;
    ToplexSet box;
    ToplexSet complement;
};

// Embedding scheme: grid coordinates scaled by 2; horizontal arcs run at
// z = 0, vertical arcs at z = 2, joined by three-cube connector stacks at the
// marks, so vertical strands pass over horizontal ones with a one-cube gap.
inline KnotEmbedding embed_complement(const GridDiagram& d, int pad = 2) {
    validate_grid(d);
    if (pad < 2) throw std::invalid_argument("embedding pad must be at least 2");
    std::set<Cube> knot;
    const int n = d.size();
    for (int i = 1; i <= n; ++i) {
        auto [r1, r2] = std::minmax(d.pairs[i - 1].first, d.pairs[i - 1].second);
        for (int y = 2 * r1; y <= 2 * r2; ++y) knot.insert(Cube{{2 * i, y, 2}});
        for (int r : {r1, r2})
            for (int z = 0; z <= 2; ++z) knot.insert(Cube{{2 * i, 2 * r, z}});
    }
    for (int r = 1; r <= n; ++r) {
        auto [c1, c2] = d.row_span(r);
        for (int x = 2 * std::min(c1, c2); x <= 2 * std::max(c1, c2); ++x)
            knot.insert(Cube{{x, 2 * r, 0}});
    }

    KnotEmbedding emb;
    emb.knot_cubes = ToplexSet(std::vector<Cube>(knot.begin(), knot.end()));
    for (const Cube& q : emb.knot_cubes.cubes()) {
        int face_neighbors = 0;
        for (int i = 0; i < 26; ++i) {
            const auto& off = neighbor_offsets[i];
            if (std::abs(off[0]) + std::abs(off[1]) + std::abs(off[2]) != 1) continue;
            if (knot.contains(Cube{{q.p[0] + off[0], q.p[1] + off[1], q.p[2] + off[2]}}))
                ++face_neighbors;
        }
        if (face_neighbors != 2)
            throw std::logic_error("knot embedding is not a closed loop at cube " +
                                   to_string(to_cell(q)));
    }

    std::array<int, 3> lo = knot.begin()->p, hi = lo;
    for (const Cube& q : knot)
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::min(lo[a], q.p[a]);
            hi[a] = std::max(hi[a], q.p[a]);
        }
    std::vector<Cube> box_cubes, complement_cubes;
    for (int x = lo[0] - pad; x <= hi[0] + pad; ++x)
        for (int y = lo[1] - pad; y <= hi[1] + pad; ++y)
            for (int z = lo[2] - pad; z <= hi[2] + pad; ++z) {
                Cube q{{x, y, z}};
                box_cubes.push_back(q);
                if (!knot.contains(q)) complement_cubes.push_back(q);
            }
    emb.box = ToplexSet(box_cubes);
    emb.complement = ToplexSet(complement_cubes);
    if (!emb.complement.face_connected())
        throw std::logic_error("knot complement is not face-connected");
    return emb;
}

}  // namespace cubetop
