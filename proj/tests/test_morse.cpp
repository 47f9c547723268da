#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "cubetop/cstructure.hpp"
#include "cubetop/morse.hpp"
#include "support.hpp"

using namespace cubetop;

namespace {

CStructure segment() {
    CStructure c;
    c.add_vertex();
    c.add_vertex();
    c.add_edge(0, 1);
    return c;
}

CStructure square_boundary() {
    CStructure c;
    for (int i = 0; i < 4; ++i) c.add_vertex();
    c.add_edge(0, 1);
    c.add_edge(1, 2);
    c.add_edge(2, 3);
    c.add_edge(3, 0);
    return c;
}

}  // namespace

TEST_CASE("coreduction on a single vertex", "[morse]") {
    CStructure c;
    c.add_vertex();
    auto field = coreduction_dvf(CStructureView(c));
    CHECK(field.vectors.empty());
    CHECK(field.critical == std::vector<CCell>{CCell{0, 0}});
    CHECK(critical_euler_check(CStructureView(c), field));
}

TEST_CASE("coreduction on a segment", "[morse]") {
    CStructure c = segment();
    auto field = coreduction_dvf(CStructureView(c));
    REQUIRE(field.vectors.size() == 1);
    CHECK(field.vectors[0] == std::pair{CCell{0, 1}, CCell{1, 0}});
    CHECK(field.critical == std::vector<CCell>{CCell{0, 0}});
}

TEST_CASE("coreduction on the boundary of a square", "[morse]") {
    CStructure c = square_boundary();
    CStructureView view(c);
    auto field = coreduction_dvf(view);
    REQUIRE(field.vectors.size() == 3);
    CHECK(field.vectors == std::vector<std::pair<CCell, CCell>>{
                               {{0, 1}, {1, 0}}, {{0, 3}, {1, 3}}, {{0, 2}, {1, 1}}});
    REQUIRE(field.critical.size() == 2);
    CHECK(field.critical[0].dim == 0);
    CHECK(field.critical[1].dim == 1);
    CHECK(verify_acyclic(view, field));
    CHECK(critical_euler_check(view, field));  // 1 - 1 = chi = 0
    CHECK(dvf_partition_valid(view, field));
}

TEST_CASE("verify_acyclic rejects a two-square cycle", "[morse]") {
    // two faces glued along two parallel edges; pairing each edge with the
    // face on its other side produces the classic 4-cell cycle in G_V
    CStructure c;
    c.add_vertex();
    c.add_vertex();
    int a = c.add_edge(0, 1);
    int b = c.add_edge(0, 1);
    int f1 = c.add_face(Word{make_letter(a, 1), make_letter(b, -1)});
    int f2 = c.add_face(Word{make_letter(a, 1), make_letter(b, -1)});
    CStructureView view(c);

    DiscreteVectorField<CCell> cyclic;
    cyclic.vectors = {{CCell{1, a}, CCell{2, f1}}, {CCell{1, b}, CCell{2, f2}}};
    cyclic.critical = {CCell{0, 0}, CCell{0, 1}};
    CHECK(view.regular_facet(CCell{1, a}, CCell{2, f1}));
    CHECK(view.regular_facet(CCell{1, b}, CCell{2, f2}));
    CHECK_FALSE(verify_acyclic(view, cyclic));

    DiscreteVectorField<CCell> empty;
    empty.critical = view.cells();
    CHECK(verify_acyclic(view, empty));

    auto built = coreduction_dvf(view);
    CHECK(verify_acyclic(view, built));
}

TEST_CASE("coreduction on a solid cube", "[morse]") {
    ToplexSet one({Cube{{0, 0, 0}}});
    CubicalComplexView view(one);
    auto field = coreduction_dvf(view);
    CHECK(critical_euler_check(view, field));
    long long crit_chi = 0;
    for (const Cell& s : field.critical) crit_chi += (dimension(s) & 1) ? -1 : 1;
    CHECK(crit_chi == 1);
    REQUIRE(field.critical.size() == 1);
    CHECK(dimension(field.critical[0]) == 0);
}

TEST_CASE("coreduction properties on random cubical complexes", "[morse]") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        ToplexSet k = testsupport::random_connected_complex(rng, 4 + int(rng() % 24));
        CubicalComplexView view(k);
        for (CellOrdering policy :
             {CellOrdering::lex, CellOrdering::revlex, CellOrdering::random}) {
            OrderingOptions opts{policy, uint64_t(trial * 3 + 1)};
            auto field = coreduction_dvf(view, opts);
            CAPTURE(trial, to_string(policy));
            CHECK(dvf_partition_valid(view, field));
            CHECK(verify_acyclic(view, field));
            CHECK(critical_euler_check(view, field));
            int critical_vertices = 0;
            for (const Cell& s : field.critical)
                if (dimension(s) == 0) ++critical_vertices;
            CHECK(critical_vertices == 1);
        }
    }
}

TEST_CASE("regular facets with multiplicity on C-structures", "[morse]") {
    CStructure c;
    c.add_vertex();
    int loop = c.add_edge(0, 0);
    int f = c.add_face(Word{make_letter(loop, 1), make_letter(loop, 1)});
    CStructureView view(c);
    CHECK_FALSE(view.regular_facet(CCell{0, 0}, CCell{1, loop}));
    CHECK_FALSE(view.regular_facet(CCell{1, loop}, CCell{2, f}));

    // neither the loop nor the doubled face letter may ever form a vector
    auto field = coreduction_dvf(view);
    CHECK(field.vectors.empty());
    CHECK(field.critical.size() == 3);
}

TEST_CASE("coreduction is deterministic for fixed ordering and seed", "[morse]") {
    std::mt19937_64 rng(202);
    ToplexSet k = testsupport::random_connected_complex(rng, 20);
    CubicalComplexView view(k);
    OrderingOptions opts{CellOrdering::random, 999};
    auto a = coreduction_dvf(view, opts);
    auto b = coreduction_dvf(view, opts);
    CHECK(a.vectors == b.vectors);
    CHECK(a.critical == b.critical);

    auto c = coreduction_dvf(view, OrderingOptions{CellOrdering::random, 1000});
    CHECK(dvf_partition_valid(view, c));
}

TEST_CASE("empty complex yields an empty field", "[morse]") {
    ToplexSet none;
    CubicalComplexView view(none);
    auto field = coreduction_dvf(view);
    CHECK(field.vectors.empty());
    CHECK(field.critical.empty());
}

TEST_CASE("field debug dump format", "[morse]") {
    CStructure c = segment();
    CStructureView view(c);
    auto field = coreduction_dvf(view);
    std::ostringstream os;
    dump_dvf(view, field, os);
    CHECK(os.str() == "VEC 0 v1 e0\nCRIT 0 v0\n");
}
