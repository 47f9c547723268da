#include "support.hpp"

#include <algorithm>
#include <set>

namespace testsupport {

using namespace cubetop;

ToplexSet random_connected_complex(std::mt19937_64& rng, int cubes) {
    std::set<Cube> blob{Cube{{0, 0, 0}}};
    std::vector<Cube> order{Cube{{0, 0, 0}}};
    while (int(blob.size()) < cubes) {
        const Cube& base = order[rng() % order.size()];
        bool face_step = rng() % 4 != 0;
        const auto& d = neighbor_offsets[rng() % 26];
        if (face_step) {
            int axis = int(rng() % 3);
            Cube q = base;
            q.p[axis] += rng() % 2 ? 1 : -1;
            if (blob.insert(q).second) order.push_back(q);
        } else {
            Cube q{{base.p[0] + d[0], base.p[1] + d[1], base.p[2] + d[2]}};
            if (blob.insert(q).second) order.push_back(q);
        }
    }
    return ToplexSet(std::vector<Cube>(blob.begin(), blob.end()));
}

ToplexSet solid_block(int nx, int ny, int nz) {
    std::vector<Cube> cubes;
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z) cubes.push_back(Cube{{x, y, z}});
    return ToplexSet(cubes);
}

ToplexSet torus_ring() {
    std::vector<Cube> cubes;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (x != 1 || y != 1) cubes.push_back(Cube{{x, y, 0}});
    return ToplexSet(cubes);
}

ToplexSet hollow_shell() {
    std::vector<Cube> cubes;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                if (x != 1 || y != 1 || z != 1) cubes.push_back(Cube{{x, y, z}});
    return ToplexSet(cubes);
}

CStructure random_cstructure(std::mt19937_64& rng, int vertices, int extra_edges, int faces) {
    CStructure c;
    for (int v = 0; v < vertices; ++v) c.add_vertex();
    std::vector<int> tree_parent(vertices, -1), tree_edge(vertices, -1);
    for (int v = 1; v < vertices; ++v) {
        tree_parent[v] = int(rng() % v);
        tree_edge[v] = c.add_edge(tree_parent[v], v);
    }
    for (int e = 0; e < extra_edges; ++e)
        c.add_edge(int(rng() % vertices), int(rng() % vertices));

    // path to the root along tree edges, as a word
    auto up_path = [&](int v) {
        Word w;
        while (tree_parent[v] >= 0) {
            w.push_back(make_letter(tree_edge[v], -1));  // v -> parent
            v = tree_parent[v];
        }
        return w;
    };

    auto edges = c.alive_edges();
    for (int f = 0; f < faces; ++f) {
        int start = int(rng() % vertices);
        Word w = up_path(start).inverse();  // root -> start
        int cur = start;
        int steps = 1 + int(rng() % 5);
        for (int s = 0; s < steps && !edges.empty(); ++s) {
            int e = edges[rng() % edges.size()];
            int a = c.edge_source(e), b = c.edge_target(e);
            if (a == cur) {
                w.push_back(make_letter(e, 1));
                cur = b;
            } else if (b == cur) {
                w.push_back(make_letter(e, -1));
                cur = a;
            }
        }
        w.append(up_path(cur));  // cur -> root, closing the walk at the root
        c.add_face(std::move(w));
    }
    return c;
}

AbelianGroup h1_from_boundary_matrices(const CStructure& c) {
    auto vs = c.alive_vertices();
    auto es = c.alive_edges();
    auto fs = c.alive_faces();
    std::map<int, size_t> vrow, erow;
    for (size_t i = 0; i < vs.size(); ++i) vrow[vs[i]] = i;
    for (size_t i = 0; i < es.size(); ++i) erow[es[i]] = i;

    IntMatrix d1(vs.size(), std::vector<BigInt>(es.size(), 0));
    for (size_t j = 0; j < es.size(); ++j) {
        d1[vrow.at(c.edge_target(es[j]))][j] += 1;
        d1[vrow.at(c.edge_source(es[j]))][j] -= 1;
    }
    IntMatrix d2(es.size(), std::vector<BigInt>(fs.size(), 0));
    for (size_t j = 0; j < fs.size(); ++j)
        for (Letter l : c.face_boundary(fs[j]).letters)
            d2[erow.at(letter_id(l))][j] += letter_sign(l);

    auto rank_of = [](const IntMatrix& m) { return smith_normal_form(m).size(); };
    size_t rank1 = d1.empty() || d1[0].empty() ? 0 : rank_of(d1);
    std::vector<BigInt> div2 = d2.empty() || d2[0].empty() ? std::vector<BigInt>{}
                                                           : smith_normal_form(d2);
    AbelianGroup h1;
    h1.rank = (long long)es.size() - (long long)rank1 - (long long)div2.size();
    for (const BigInt& d : div2)
        if (d > 1) h1.torsion.push_back(d.convert_to<long long>());
    return h1;
}

}  // namespace testsupport
