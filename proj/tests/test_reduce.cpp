#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cubetop/morse.hpp"
#include "cubetop/reduce.hpp"
#include "support.hpp"

using namespace cubetop;

TEST_CASE("a single cube is not shaved", "[reduce]") {
    ToplexSet one({Cube{{0, 0, 0}}});
    CHECK(shave(one) == one);
}

TEST_CASE("shaving a solid block leaves one cube", "[reduce]") {
    ToplexSet block = testsupport::solid_block(2, 2, 2);
    ToplexSet shaved = shave(block);
    CHECK(shaved.size() == 1);
    CHECK(shaved.euler_characteristic() == block.euler_characteristic());
}

TEST_CASE("shaving preserves the Euler characteristic of the shell", "[reduce]") {
    ToplexSet shell = testsupport::hollow_shell();
    ToplexSet shaved = shave(shell);
    CHECK(shell.euler_characteristic() == 2);
    CHECK(shaved.euler_characteristic() == 2);
}

TEST_CASE("shave preserves chi and is idempotent", "[reduce]") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 20; ++trial) {
        ToplexSet k = testsupport::random_connected_complex(rng, 5 + int(rng() % 30));
        ToplexSet shaved = shave(k);
        CAPTURE(trial, k.size(), shaved.size());
        CHECK(shaved.euler_characteristic() == k.euler_characteristic());
        CHECK(shave(shaved) == shaved);
        for (const Cube& q : shaved.cubes())
            CHECK_FALSE(default_redundancy_oracle().is_redundant(shaved.neighbor_mask(q)));
    }
}

TEST_CASE("collapsible subset of a single cube", "[reduce]") {
    ToplexSet one({Cube{{4, 5, 6}}});
    CHECK(collapsible_subset(one) == one);
}

TEST_CASE("collapsible subset absorbs a solid block", "[reduce]") {
    ToplexSet block = testsupport::solid_block(2, 2, 2);
    ToplexSet grown = collapsible_subset(block);
    CHECK(grown.size() == 8);
    CHECK(grown.euler_characteristic() == 1);
}

TEST_CASE("collapsible subset of a solid torus is a strict subset", "[reduce]") {
    ToplexSet ring = testsupport::torus_ring();
    ToplexSet grown = collapsible_subset(ring);
    CHECK(grown.size() < ring.size());
    CHECK(grown.euler_characteristic() == 1);
}

TEST_CASE("collapsible subset outputs admit a single-critical-vertex field", "[reduce]") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 15; ++trial) {
        ToplexSet k = testsupport::random_connected_complex(rng, 4 + int(rng() % 26));
        ToplexSet grown = collapsible_subset(shave(k));
        CAPTURE(trial, grown.size());
        CHECK(grown.euler_characteristic() == 1);
        // every absorbed cube touches the grown set, but the contact may be
        // a single edge or vertex, so only closure-connectivity is guaranteed
        CHECK(grown.connected());
        auto field = coreduction_dvf(CubicalComplexView(grown));
        REQUIRE(field.critical.size() == 1);
        CHECK(dimension(field.critical[0]) == 0);
    }
}

TEST_CASE("collapsible subset of an empty complex is an error", "[reduce]") {
    CHECK_THROWS_AS(collapsible_subset(ToplexSet()), std::invalid_argument);
}
