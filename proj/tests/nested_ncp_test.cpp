// Nested non-crossing permutation codec: degeneration at depth one,
// round trips on random snakes, serialization, and exact layer recovery.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "feuille/permmaps.hpp"
#include "feuille/sampling.hpp"

using namespace feuille;

TEST_CASE("depth one degenerates to the tree permutation") {
    IteratedSnake s = sample_iterated_snake(6, 1, Seed{1, 0});
    NestedNCP ncp = nested_ncp_encode(s);
    CHECK(ncp.depth() == 1);
    CHECK(ncp.corner_count == 12);
    CHECK(validate_nested_ncp(ncp));
    // cycles are the corner cycles of the base tree: one per vertex
    CHECK(permutation_cycles(ncp.sigmas[0].next).size() == 7);
}

TEST_CASE("encode -> decode -> encode is a fixed point") {
    Rng pick = Rng::from(Seed{2, 0});
    for (int rep = 0; rep < 60; ++rep) {
        i64 n = 1 + static_cast<i64>(pick.below(50));
        i64 d = 1 + static_cast<i64>(pick.below(4));
        IteratedSnake s = sample_iterated_snake(n, d, Seed{600 + static_cast<std::uint64_t>(rep), 0});
        NestedNCP ncp = nested_ncp_encode(s);
        REQUIRE(validate_nested_ncp(ncp));
        IteratedSnake back = nested_ncp_decode(ncp);
        NestedNCP again = nested_ncp_encode(back);
        CHECK(nested_ncp_to_string(again) == nested_ncp_to_string(ncp));
    }
}

TEST_CASE("decode recovers every layer below the top exactly") {
    Rng pick = Rng::from(Seed{3, 1});
    for (int rep = 0; rep < 30; ++rep) {
        i64 n = 1 + static_cast<i64>(pick.below(30));
        i64 d = 2 + static_cast<i64>(pick.below(3));
        IteratedSnake s = sample_iterated_snake(n, d, Seed{700 + static_cast<std::uint64_t>(rep), 0});
        IteratedSnake back = nested_ncp_decode(nested_ncp_encode(s));
        REQUIRE(back.depth() == d);
        CHECK(back.n == s.n);
        for (i64 j = 0; j < d; ++j) {
            CHECK(back.layers[j].contour == s.layers[j].contour);
            CHECK(back.layers[j].shift_a == s.layers[j].shift_a);
            if (j + 1 < d) CHECK(back.layers[j].labels == s.layers[j].labels);
        }
        // top-layer labels are not encoded; they come back null
        CHECK(back.layers[d - 1].labels == Walk(s.layers[d - 1].contour.size(), 0));
        CHECK(check_snake(back));
    }
}

TEST_CASE("support sizes follow the level doubling") {
    IteratedSnake s = sample_iterated_snake(5, 3, Seed{8, 0});
    NestedNCP ncp = nested_ncp_encode(s);
    CHECK(ncp.corner_count == 40);  // 2^3 * 5
    CHECK(ncp.sigmas[0].support.size() == 40);
    CHECK(ncp.sigmas[1].support.size() == 20);
    CHECK(ncp.sigmas[2].support.size() == 10);
    // every support contains the shared anchor 0
    for (const auto& sp : ncp.sigmas)
        CHECK(std::find(sp.support.begin(), sp.support.end(), 0) != sp.support.end());
}

TEST_CASE("serialization round trip") {
    IteratedSnake s = sample_iterated_snake(7, 3, Seed{9, 9});
    NestedNCP ncp = nested_ncp_encode(s);
    std::string text = nested_ncp_to_string(ncp);
    NestedNCP parsed = nested_ncp_from_string(text);
    CHECK(nested_ncp_to_string(parsed) == text);
    CHECK(validate_nested_ncp(parsed));
}
