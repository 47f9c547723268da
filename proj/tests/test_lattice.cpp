#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <sstream>

#include "cubetop/complex.hpp"
#include "cubetop/redundancy.hpp"
#include "support.hpp"

using namespace cubetop;

TEST_CASE("cell dimension counts odd coordinates", "[lattice]") {
    CHECK(dimension(Cell{{0, 0, 0}}) == 0);
    CHECK(dimension(Cell{{1, 0, 2}}) == 1);
    CHECK(dimension(Cell{{1, 1, 1}}) == 3);
    CHECK(dimension(Cell{{3, 1, 0}}) == 2);
}

TEST_CASE("boundary lists the facets", "[lattice]") {
    CHECK(boundary_cells(Cell{{0, 0, 0}}).empty());
    CHECK(boundary_cells(Cell{{1, 0, 0}}) ==
          std::vector<Cell>{Cell{{0, 0, 0}}, Cell{{2, 0, 0}}});
    CHECK(boundary_cells(Cell{{1, 1, 0}}) ==
          std::vector<Cell>{Cell{{0, 1, 0}}, Cell{{2, 1, 0}}, Cell{{1, 0, 0}}, Cell{{1, 2, 0}}});
}

TEST_CASE("coboundary within a complex", "[lattice]") {
    ToplexSet one({Cube{{0, 0, 0}}});
    CHECK(one.coboundary_cells(Cell{{0, 0, 0}}) ==
          std::vector<Cell>{Cell{{1, 0, 0}}, Cell{{0, 1, 0}}, Cell{{0, 0, 1}}});
    CHECK(one.coboundary_cells(Cell{{1, 1, 0}}) == std::vector<Cell>{Cell{{1, 1, 1}}});
    CHECK(one.coboundary_cells(Cell{{1, 1, 1}}).empty());
    CHECK_THROWS_AS(one.coboundary_cells(Cell{{5, 5, 5}}), std::invalid_argument);
}

TEST_CASE("boundary and coboundary are mutually dual", "[lattice]") {
    std::mt19937_64 rng(7);
    ToplexSet k = testsupport::random_connected_complex(rng, 12);
    for (const Cell& s : k.all_cells()) {
        for (const Cell& t : boundary_cells(s)) {
            auto cof = cofacet_candidates(t);
            CHECK(std::find(cof.begin(), cof.end(), s) != cof.end());
        }
        if (dimension(s) < 3)
            for (const Cell& c : k.coboundary_cells(s)) {
                auto bd = boundary_cells(c);
                CHECK(std::find(bd.begin(), bd.end(), s) != bd.end());
            }
    }
}

TEST_CASE("boundary of boundary reaches each face twice", "[lattice]") {
    for (const Cell& s : {Cell{{1, 1, 0}}, Cell{{1, 1, 1}}, Cell{{3, 1, 5}}}) {
        std::map<Cell, int> chains;
        for (const Cell& t : boundary_cells(s))
            for (const Cell& u : boundary_cells(t)) ++chains[u];
        CHECK(!chains.empty());
        for (const auto& [cell, count] : chains) CHECK(count == 2);
    }
}

TEST_CASE("neighbor masks", "[lattice]") {
    ToplexSet one({Cube{{0, 0, 0}}});
    CHECK(one.neighbor_mask(Cube{{0, 0, 0}}) == 0);

    ToplexSet block = testsupport::solid_block(3, 3, 3);
    CHECK(block.neighbor_mask(Cube{{1, 1, 1}}) == full_neighbor_mask);

    ToplexSet two({Cube{{0, 0, 0}}, Cube{{1, 0, 0}}});
    CHECK(std::popcount(two.neighbor_mask(Cube{{0, 0, 0}})) == 1);
    CHECK(std::popcount(two.neighbor_mask(Cube{{1, 0, 0}})) == 1);
    CHECK((two.neighbor_mask(Cube{{0, 0, 0}}) >> neighbor_bit(1, 0, 0) & 1) == 1);

    CHECK_THROWS_AS(one.neighbor_mask(Cell{{1, 1, 0}}), std::invalid_argument);
}

TEST_CASE("euler characteristic", "[lattice]") {
    CHECK(ToplexSet({Cube{{0, 0, 0}}}).euler_characteristic() == 1);
    CHECK(ToplexSet().euler_characteristic() == 0);
    CHECK(testsupport::hollow_shell().euler_characteristic() == 2);
    // closed cube minus its top cell is a 2-sphere
    ToplexSet one({Cube{{0, 0, 0}}});
    CHECK(one.euler_characteristic() - (-1) * 1 == 2);
    CHECK(testsupport::torus_ring().euler_characteristic() == 0);
}

TEST_CASE("redundancy of the basic masks", "[lattice]") {
    CHECK_FALSE(compute_redundancy(0));
    CHECK(compute_redundancy(NeighborMask(1) << neighbor_bit(1, 0, 0)));
    CHECK(compute_redundancy(NeighborMask(1) << neighbor_bit(0, -1, 0)));
    CHECK_FALSE(compute_redundancy(full_neighbor_mask));
    // a single vertex-contact neighbour leaves a collapsible contact complex
    CHECK(compute_redundancy(NeighborMask(1) << neighbor_bit(1, 1, 1)));
}

TEST_CASE("memoized redundancy agrees with a fresh search", "[lattice]") {
    std::mt19937_64 rng(11);
    RedundancyOracle oracle;
    for (int i = 0; i < 300; ++i) {
        NeighborMask m = NeighborMask(rng()) & full_neighbor_mask;
        bool cached = oracle.is_redundant(m);
        CHECK(cached == compute_redundancy(m));
        CHECK(oracle.is_redundant(m) == cached);
    }
    CHECK(oracle.memo_size() <= 300);
}

TEST_CASE("redundancy is equivariant under the 48 cube symmetries", "[lattice]") {
    std::mt19937_64 rng(13);
    RedundancyOracle oracle;
    for (int i = 0; i < 40; ++i) {
        NeighborMask m = NeighborMask(rng()) & full_neighbor_mask;
        bool r = oracle.is_redundant(m);
        for (int g = 0; g < 48; ++g) CHECK(oracle.is_redundant(apply_cube_symmetry(g, m)) == r);
    }
}

TEST_CASE("cube symmetries permute the mask bits", "[lattice]") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        NeighborMask m = NeighborMask(rng()) & full_neighbor_mask;
        for (int g = 0; g < 48; ++g)
            CHECK(std::popcount(apply_cube_symmetry(g, m)) == std::popcount(m));
        CHECK(apply_cube_symmetry(0, m) == m);  // identity comes first
    }
}

TEST_CASE("complex dump round trip", "[lattice]") {
    std::mt19937_64 rng(23);
    ToplexSet k = testsupport::random_connected_complex(rng, 20);
    std::stringstream ss;
    dump_complex(k, ss);
    ToplexSet back = load_complex(ss);
    CHECK(back == k);

    std::stringstream commented("# header\n 0 0 0 # trailing\n\n1 0 0\n");
    CHECK(load_complex(commented).size() == 2);

    std::stringstream bad("1 2\n");
    CHECK_THROWS_AS(load_complex(bad), std::runtime_error);
}

TEST_CASE("redundancy lookup table file format", "[lattice]") {
    std::vector<uint64_t> bits(RedundancyOracle::table_words, 0);
    std::mt19937_64 rng(29);
    std::vector<NeighborMask> probes;
    for (int i = 0; i < 50; ++i) {
        NeighborMask m = NeighborMask(rng()) & full_neighbor_mask;
        probes.push_back(m);
        if (compute_redundancy(m)) bits[m >> 6] |= uint64_t(1) << (m & 63);
    }
    std::stringstream ss;
    save_redundancy_table(bits, ss);
    std::string contents = ss.str();
    CHECK(contents.substr(0, contents.find('\n')) == redundancy_table_header);
    CHECK(contents.size() == std::string(redundancy_table_header).size() + 1 + (size_t(1) << 23));

    std::stringstream in(contents);
    auto loaded = load_redundancy_table(in);
    CHECK(loaded == bits);

    RedundancyOracle oracle;
    oracle.attach_table(std::move(loaded));
    for (NeighborMask m : probes) CHECK(oracle.is_redundant(m) == compute_redundancy(m));

    std::stringstream wrong("NOT-A-TABLE\n");
    CHECK_THROWS_AS(load_redundancy_table(wrong), std::runtime_error);
}
