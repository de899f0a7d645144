// Feuilletage construction: corner <-> node maps, class and edge counts,
// the quadrangulation cross-check at depth two, and the export format.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "feuille/feuilletage.hpp"
#include "feuille/metrics.hpp"
#include "feuille/oracles.hpp"

using namespace feuille;

static IteratedSnake snake_from_labels(const Walk& contour, const std::vector<Walk>& labels) {
    return snake_from_processes(contour, labels);
}

TEST_CASE("corner_node_map hand example") {
    // first minimum at corner 1: non-root node i of the next level sits at
    // corner (1 + i - 1) mod 4 of this one
    Walk contour = {0, 1, 2, 1, 0};
    Walk labels = {0, -1, 0, -1, 0};
    IteratedSnake s = snake_from_labels(contour, {labels, Walk(9, 0)});
    CHECK(s.layers[1].shift_a == 1);
    CornerNodeMap m = corner_node_map(s, 2);
    CHECK(m.corner_of[0] == -1);
    for (i64 i = 1; i <= 4; ++i) CHECK(m.corner_of[i] == (1 + i - 1) % 4);
    CHECK_THROWS_AS(corner_node_map(s, 3), std::out_of_range);

    // the map hits every corner exactly once
    Rng pick = Rng::from(Seed{4, 0});
    for (int rep = 0; rep < 20; ++rep) {
        i64 n = 1 + static_cast<i64>(pick.below(100));
        IteratedSnake r = sample_iterated_snake(n, 3, Seed{800 + static_cast<std::uint64_t>(rep), 0});
        for (i64 level = 2; level <= 3; ++level) {
            CornerNodeMap cm = corner_node_map(r, level);
            std::set<i64> hit(cm.corner_of.begin() + 1, cm.corner_of.end());
            CHECK(static_cast<i64>(hit.size()) == static_cast<i64>(cm.corner_of.size()) - 1);
        }
    }
}

TEST_CASE("depth one is the tree itself") {
    IteratedSnake s = sample_iterated_snake(9, 1, Seed{5, 5});
    Feuilletage f = build_feuilletage(s);
    CHECK(f.n_classes == 10);
    CHECK(f.edges.size() == 9);
    CHECK(f.root_class == 0);
}

TEST_CASE("n=1 D=2 has 3 classes and 2 edges") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        IteratedSnake s = sample_iterated_snake(1, 2, Seed{seed, 0});
        Feuilletage f = build_feuilletage(s);
        CHECK(f.n_classes == 3);
        CHECK(f.edges.size() == 2);
    }
}

TEST_CASE("random snakes: class count, edge count, connectivity") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        IteratedSnake s = sample_iterated_snake(50, 4, Seed{seed, 1});
        Feuilletage f = build_feuilletage(s);
        CHECK(f.n_classes == 54);
        CHECK(f.edges.size() == 400);
        Graph g = graph_from_feuilletage(f);
        CHECK(bfs_distances(g, 0).unreachable.empty());
    }
}

TEST_CASE("depth two quotient equals the image quadrangulation graph") {
    for (i64 n = 1; n <= 4; ++n) {
        for_each_labeled_tree(n, [&](const LabeledTree& lt) {
            Walk contour = tree_to_contour(lt.tree);
            Walk corner_labels = node_labels_to_corner_labels(contour, lt.node_labels);
            IteratedSnake s = snake_from_labels(
                contour, {corner_labels, Walk(4 * n + 1, 0)});
            Feuilletage f = build_feuilletage(s);
            Quadrangulation q = cvs_forward(lt);
            REQUIRE(f.n_classes == q.n_vertices);
            // identify classes with Q's vertices: tree nodes carry their
            // ids, the root class is the pointed vertex
            auto to_vertex = [&](i64 cls) { return cls == f.root_class ? q.pointed_vertex : cls; };
            std::multiset<std::pair<i64, i64>> quotient_edges, q_edges;
            for (auto [u, v] : f.edges) {
                i64 a = to_vertex(u), b = to_vertex(v);
                quotient_edges.emplace(std::min(a, b), std::max(a, b));
            }
            for (i64 d = 0; d < q.map.n_darts(); d += 1) {
                i64 e = q.map.alpha[d];
                if (d < e) {
                    i64 a = q.vertex_of[d], b = q.vertex_of[e];
                    q_edges.emplace(std::min(a, b), std::max(a, b));
                }
            }
            CHECK(quotient_edges == q_edges);
        });
    }
}

TEST_CASE("layer quadrangulation face counts") {
    IteratedSnake s = sample_iterated_snake(5, 3, Seed{31, 0});
    for (i64 level = 1; level <= 2; ++level) {
        Quadrangulation q = build_layer_quadrangulation(s, level);
        CHECK(is_quadrangulation(q));
        FacesAndGenus fg = map_faces_and_genus(q.map);
        CHECK(static_cast<i64>(fg.faces.size()) == (i64{1} << (level - 1)) * 5);
    }
    CHECK_THROWS_AS(build_layer_quadrangulation(s, 3), std::out_of_range);

    // structural counts of the level-2 image: 2n faces, 4n edges, 2(n+1)
    // vertices
    Quadrangulation q2 = build_layer_quadrangulation(s, 2);
    CHECK(map_faces_and_genus(q2.map).faces.size() == 10);
    CHECK(q2.map.n_darts() == 40);
    CHECK(q2.n_vertices == 12);
}

TEST_CASE("export and edge list format") {
    IteratedSnake s = sample_iterated_snake(1, 1, Seed{0, 0});
    Feuilletage f = build_feuilletage(s);
    auto edges = export_quotient_graph(f, false);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0] == std::pair<i64, i64>(0, 1));

    // a loop disappears under simplify, vertex ids stay dense
    IteratedSnake s2 = sample_iterated_snake(50, 3, Seed{3, 1});
    Feuilletage f2 = build_feuilletage(s2);
    auto raw = export_quotient_graph(f2, false);
    auto simple = export_quotient_graph(f2, true);
    CHECK(simple.size() < raw.size());
    for (auto [u, v] : simple) CHECK(u < v);

    std::ostringstream os;
    write_edge_list(os, f2, Seed{3, 1}, false);
    CHECK(os.str().rfind("# feuilletage n=50 D=3 seed=3:1\n", 0) == 0);

    // reimported simplified graph has the same BFS profile
    Graph g_raw = graph_from_edges(f2.n_classes, raw);
    Graph g_simple = graph_from_edges(f2.n_classes, simple);
    Profile p1 = profile(g_raw, 0);
    Profile p2 = profile(g_simple, 0);
    CHECK(p1.counts == p2.counts);
}

TEST_CASE("exhaustive counts at small sizes") {
    for (i64 n = 1; n <= 2; ++n)
        for (i64 d = 1; d <= 3; ++d) {
            EnumerationReport rep = verify_feuilletage_counts(n, d);
            CHECK(rep.ok());
        }
}
