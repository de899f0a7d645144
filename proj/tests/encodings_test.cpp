// Codec round trips, corner arithmetic and the pointed distance.
// Exhaustive checks run over all Dyck paths up to n = 8.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "feuille/encodings.hpp"
#include "feuille/oracles.hpp"

using namespace feuille;

static PlanarTree three_edge_tree() {
    // root with children 1, 2 and grandchild under 1
    PlanarTree t;
    t.n_edges = 3;
    t.parent = {-1, 0, 1, 0};
    t.children = {{1, 3}, {2}, {}, {}};
    return t;
}

TEST_CASE("tree_to_height hand examples") {
    CHECK(tree_to_height(three_edge_tree()) == Walk{0, 1, 2, 1});

    PlanarTree single;
    single.n_edges = 1;
    single.parent = {-1, 0};
    single.children = {{1}, {}};
    CHECK(tree_to_height(single) == Walk{0, 1});

    PlanarTree path2;
    path2.n_edges = 2;
    path2.parent = {-1, 0, 1};
    path2.children = {{1}, {2}, {}};
    CHECK(tree_to_height(path2) == Walk{0, 1, 2});
}

TEST_CASE("height_to_tree hand examples") {
    PlanarTree t = height_to_tree({0, 1, 2, 1});
    CHECK(t.parent == std::vector<i64>{-1, 0, 1, 0});

    CHECK(height_to_tree({0, 1}).n_edges == 1);

    PlanarTree cherry = height_to_tree({0, 1, 1});
    CHECK(cherry.parent == std::vector<i64>{-1, 0, 0});

    CHECK_THROWS_AS(height_to_tree({0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(height_to_tree({0, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(height_to_tree({1, 2}), std::invalid_argument);
}

TEST_CASE("height_to_contour hand examples") {
    CHECK(height_to_contour({0, 1, 1}) == Walk{0, 1, 0, 1, 0});
    CHECK(height_to_contour({0, 1, 2, 1}) == Walk{0, 1, 2, 1, 0, 1, 0});
    CHECK(height_to_contour({0, 1}) == Walk{0, 1, 0});
}

TEST_CASE("conjugate_labels hand examples") {
    Conjugation c1 = conjugate_labels({0, -1, 0, 0});
    CHECK(c1.shift == 1);
    CHECK(c1.height == Walk{0, 1, 2, 2});

    Conjugation c2 = conjugate_labels({0, 0});
    CHECK(c2.shift == 0);
    CHECK(c2.height == Walk{0, 1});

    Conjugation c3 = conjugate_labels({0, 1, 0});
    CHECK(c3.shift == 0);
    CHECK(c3.height == Walk{0, 1, 2});

    CHECK_THROWS_AS(conjugate_labels({0, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(conjugate_labels({0, 1, 1}), std::invalid_argument);
}

TEST_CASE("first_corner identities") {
    Walk h = {0, 1, 2, 1};
    Walk c = height_to_contour(h);
    std::vector<i64> m = {0, 1, 2, 5};
    for (i64 k = 0; k < 4; ++k) {
        CHECK(first_corner(h, k) == m[k]);
        CHECK(c[first_corner(h, k)] == h[k]);
    }
    CHECK(first_corner({0, 1, 2}, 0) == 0);
    CHECK(first_corner({0, 1, 2}, 1) == 1);
    CHECK(first_corner({0, 1, 2}, 2) == 2);
    CHECK_THROWS_AS(first_corner(h, 4), std::out_of_range);
}

TEST_CASE("tree_distance hand examples") {
    Walk c = {0, 1, 2, 1, 0, 1, 0};
    CHECK(tree_distance(c, 2, 5) == 3);
    CHECK(tree_distance(c, 3, 3) == 0);
    CHECK(tree_distance(c, 0, 2) == 2);
    CHECK(tree_distance(c, 5, 2) == 3);
    CHECK_THROWS_AS(tree_distance(c, 0, 7), std::out_of_range);
}

TEST_CASE("reroot_tree hand examples") {
    Walk c = {0, 1, 2, 1, 0, 1, 0};
    CHECK(reroot_tree(c, 4) == Walk{0, 1, 0, 1, 2, 1, 0});
    CHECK(reroot_tree(c, 0) == c);
    CHECK(reroot_tree({0, 1, 0, 1, 0}, 2) == Walk{0, 1, 0, 1, 0});
    CHECK_THROWS_AS(reroot_tree(c, 1), std::invalid_argument);
}

TEST_CASE("pointed_distance") {
    SnakeTour a{{0, 1, 0, 1, 0}, {0, 0, 0, 0, 0}};
    CHECK(pointed_distance(a, a) == 0.0);

    SnakeTour b{{0, 1, 2, 1, 0}, {0, 0, 0, 0, 0}};
    CHECK(pointed_distance(a, b) == 2.0);

    // a tour against its rerooting at a root corner is at distance zero
    SnakeTour t{{0, 1, 0, 1, 1, 0, 0}, {}};
    t.contour = Walk{0, 1, 0, 1, 2, 1, 0};
    t.labels = Walk{0, 1, 0, -1, -1, -1, 0};
    SnakeTour r;
    r.contour = reroot_tree(t.contour, 2);
    r.labels.resize(t.labels.size());
    for (std::size_t k = 0; k < t.labels.size(); ++k) r.labels[k] = t.labels[(2 + k) % 6];
    CHECK(pointed_distance(t, r) == 0.0);

    SnakeTour bad{{0, 1, 0}, {0, 0, 0}};
    CHECK_THROWS_AS(pointed_distance(a, bad), std::invalid_argument);
}

TEST_CASE("exhaustive round trips n <= 8") {
    for (i64 n = 1; n <= 8; ++n) {
        std::set<Walk> contours;
        for (const Walk& c : enumerate_dyck(n)) {
            Walk h = contour_to_height(c);
            CHECK(is_height_seq(h));
            CHECK(height_to_contour(h) == c);
            PlanarTree t = height_to_tree(h);
            CHECK(tree_to_height(t) == h);
            contours.insert(c);
        }
        // the codec is a bijection onto Dyck paths: all distinct, Catalan many
        CHECK(static_cast<i64>(contours.size()) == catalan_number(n));
    }
}

TEST_CASE("eq ree2 comparison bounds on every enumerated tree, n <= 7") {
    for (i64 n = 1; n <= 7; ++n) {
        for (const Walk& c : enumerate_dyck(n)) {
            Walk h = contour_to_height(c);
            for (i64 p = 0; p < n; ++p) {
                i64 lo = first_corner(h, p), hi = first_corner(h, p + 1);
                for (i64 j = lo; j < hi; ++j) {
                    CHECK(h[p + 1] - 1 <= c[j]);
                    CHECK(c[j] <= h[p]);
                }
            }
        }
    }
}

TEST_CASE("tree_distance zero iff same node") {
    for (const Walk& c : enumerate_dyck(4)) {
        std::vector<i64> owner = corner_nodes(c);
        for (i64 k = 0; k < static_cast<i64>(c.size()); ++k)
            for (i64 k2 = 0; k2 < static_cast<i64>(c.size()); ++k2)
                CHECK((tree_distance(c, k, k2) == 0) == (owner[k] == owner[k2]));
    }
}

TEST_CASE("reroot preserves degree multiset and unrooted distances") {
    Walk c = {0, 1, 2, 1, 2, 1, 0, 1, 0};
    for (i64 a = 0; a < static_cast<i64>(c.size()) - 1; ++a) {
        if (c[a] != 0) continue;
        Walk r = reroot_tree(c, a);
        CHECK(is_dyck_path(r));
        auto degrees = [](const Walk& w) {
            PlanarTree t = contour_to_tree(w);
            std::multiset<i64> d;
            for (i64 v = 0; v < t.n_nodes(); ++v)
                d.insert(static_cast<i64>(t.children[v].size()) + (v == 0 ? 0 : 1));
            return d;
        };
        CHECK(degrees(c) == degrees(r));
        // distance multiset over corner pairs restricted to first corners
        auto dist_multiset = [](const Walk& w) {
            Walk h = contour_to_height(w);
            std::multiset<i64> out;
            for (i64 u = 0; u < static_cast<i64>(h.size()); ++u)
                for (i64 v = u + 1; v < static_cast<i64>(h.size()); ++v)
                    out.insert(tree_distance(w, first_corner(h, u), first_corner(h, v)));
            return out;
        };
        CHECK(dist_multiset(c) == dist_multiset(r));
    }
}
