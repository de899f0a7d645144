// Forward and backward correspondence between labeled trees and rooted
// pointed quadrangulations, with the distance identity and the second
// tree extraction cross-checked against the conjugation codec.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "feuille/cvs.hpp"
#include "feuille/oracles.hpp"
#include "feuille/sampling.hpp"

using namespace feuille;

static LabeledTree single_edge(i64 child_label, int eta) {
    LabeledTree lt;
    lt.tree.n_edges = 1;
    lt.tree.parent = {-1, 0};
    lt.tree.children = {{1}, {}};
    lt.node_labels = {0, child_label};
    lt.eta = eta;
    return lt;
}

static std::vector<i64> distances_to_pointed(const Quadrangulation& q) {
    std::vector<std::vector<i64>> adj(q.n_vertices);
    for (i64 d = 0; d < q.map.n_darts(); ++d)
        adj[q.vertex_of[d]].push_back(q.vertex_of[q.map.alpha[d]]);
    std::vector<i64> dist(q.n_vertices, -1);
    std::vector<i64> queue = {q.pointed_vertex};
    dist[q.pointed_vertex] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (i64 w : adj[queue[h]])
            if (dist[w] == -1) {
                dist[w] = dist[queue[h]] + 1;
                queue.push_back(w);
            }
    return dist;
}

TEST_CASE("one-edge trees map to paths") {
    // child label +1: path nu - root - child
    Quadrangulation q = cvs_forward(single_edge(1, 0));
    CHECK(is_quadrangulation(q));
    std::vector<i64> d = distances_to_pointed(q);
    CHECK(d[0] == 1);  // root
    CHECK(d[1] == 2);  // child

    // child label -1: path nu - child - root
    q = cvs_forward(single_edge(-1, 0));
    d = distances_to_pointed(q);
    CHECK(d[0] == 2);
    CHECK(d[1] == 1);

    // the six rooted pointed quadrangulations at n = 1 are distinct
    std::set<std::vector<i64>> images;
    for (i64 lab : {-1, 0, 1})
        for (int eta : {0, 1}) images.insert(canonical_form(cvs_forward(single_edge(lab, eta))));
    CHECK(images.size() == 6);

    LabeledTree bad = single_edge(2, 0);
    CHECK_THROWS_AS(cvs_forward(bad), std::invalid_argument);
}

TEST_CASE("backward recovers the six labeled trees at n=1") {
    for (i64 lab : {-1, 0, 1})
        for (int eta : {0, 1}) {
            LabeledTree lt = single_edge(lab, eta);
            Quadrangulation q = cvs_forward(lt);
            LabeledTree back = cvs_backward(q);
            CHECK(back == lt);
            // labels are distances shifted by d0
            std::vector<i64> d = distances_to_pointed(q);
            for (i64 v = 0; v < 2; ++v) CHECK(back.node_labels[v] == d[v] - d[0]);
        }
}

TEST_CASE("exhaustive bijection and round trip n <= 3") {
    for (i64 n = 1; n <= 3; ++n) {
        EnumerationReport rep = verify_cvs_exhaustive(n);
        CHECK(rep.ok());
        CHECK(rep.exact_count == rep.formula_count);
    }
}

TEST_CASE("images are bipartite by distance parity") {
    Rng rng = Rng::from(Seed{15, 0});
    for (int rep = 0; rep < 20; ++rep) {
        i64 n = 1 + static_cast<i64>(rng.below(40));
        Walk c = sample_dyck_uniform(n, rng);
        Walk l = sample_branching_labels(c, rng);
        LabeledTree lt{contour_to_tree(c), corner_labels_to_node_labels(c, l), 0};
        Quadrangulation q = cvs_forward(lt);
        REQUIRE(is_quadrangulation(q));
        std::vector<i64> d = distances_to_pointed(q);
        for (i64 dart = 0; dart < q.map.n_darts(); ++dart) {
            i64 u = q.vertex_of[dart], w = q.vertex_of[q.map.alpha[dart]];
            CHECK((d[u] + d[w]) % 2 == 1);
        }
    }
}

TEST_CASE("second tree: 2n edges and the n=1 shape") {
    LabeledTree lt = single_edge(-1, 0);
    PlanarTree t2 = extract_second_tree(lt);
    CHECK(t2.n_edges == 2);

    for (i64 n = 1; n <= 4; ++n) {
        for_each_labeled_tree(n, [&](const LabeledTree& t) {
            CHECK(extract_second_tree(t).n_edges == 2 * n);
        });
    }
}

TEST_CASE("second tree matches the conjugation tree up to rerooting") {
    for (i64 n = 1; n <= 4; ++n) {
        for_each_labeled_tree(n, [&](const LabeledTree& lt) {
            PlanarTree tau2 = extract_second_tree(lt);
            Walk contour = tree_to_contour(lt.tree);
            Walk cl = node_labels_to_corner_labels(contour, lt.node_labels);
            Walk c2 = height_to_contour(conjugate_labels(cl).height);
            Walk ctau = tree_to_contour(tau2);
            bool match = false;
            for (i64 a = 0; a < static_cast<i64>(ctau.size()) - 1 && !match; ++a)
                if (reroot_at_corner(ctau, a) == c2) match = true;
            CHECK(match);
        });
    }
}

TEST_CASE("dual corners advance monotonically") {
    // walking the base tree's corners, the dual corners advance strictly
    // around the second tree's corner cycle
    Rng rng = Rng::from(Seed{21, 1});
    for (int rep = 0; rep < 30; ++rep) {
        i64 n = 1 + static_cast<i64>(rng.below(30));
        Walk c = sample_dyck_uniform(n, rng);
        Walk l = sample_branching_labels(c, rng);
        Extraction ext = extract_with_duals(contour_to_tree(c), corner_labels_to_node_labels(c, l));
        CHECK(ext.dual_corner[0] == 0);
        i64 prev = 0;
        for (i64 r = 1; r < 2 * n; ++r) {
            CHECK(ext.dual_corner[r] > prev);
            prev = ext.dual_corner[r];
        }
    }
}

TEST_CASE("canonical form distinguishes rooting and pointing") {
    LabeledTree lt = single_edge(1, 0);
    Quadrangulation q0 = cvs_forward(lt);
    lt.eta = 1;
    Quadrangulation q1 = cvs_forward(lt);
    CHECK(canonical_form(q0) != canonical_form(q1));
    CHECK(canonical_form(q0) == canonical_form(q0));
    // serialization carries the header
    std::string s = quadrangulation_to_string(q0);
    CHECK(s.rfind("pointed=", 0) == 0);
}

TEST_CASE("backward rejects non-quadrangulations") {
    // the single-edge tree map has one face of degree 2
    Quadrangulation q;
    q.map = CombMap{{0, 1}, {1, 0}, 0};
    q.vertex_of = {0, 1};
    q.n_vertices = 2;
    q.pointed_vertex = 0;
    q.root_dart = 0;
    CHECK(!is_quadrangulation(q));
    CHECK_THROWS_AS(cvs_backward(q), std::invalid_argument);
}
