// Sampler correctness: exact uniformity over Dyck paths, branching walk
// label laws, snake invariants, determinism, normalization constants.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "feuille/oracles.hpp"
#include "feuille/sampling.hpp"

using namespace feuille;

TEST_CASE("n=1 is deterministic") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        CHECK(sample_dyck_uniform(1, Seed{s, 0}) == Walk{0, 1, 0});
    }
    Rng r = Rng::from(Seed{1, 2});
    CHECK_THROWS_AS(sample_dyck_uniform(0, r), std::invalid_argument);
}

TEST_CASE("uniformity by chi-square at 1%") {
    // critical values for C_n - 1 degrees of freedom
    struct Grid {
        i64 n;
        i64 draws;
        double critical;
    };
    for (Grid g : {Grid{2, 100000, 6.635}, Grid{3, 100000, 13.277}, Grid{4, 200000, 27.688}}) {
        std::map<Walk, i64> freq;
        Rng rng = Rng::from(Seed{987, static_cast<std::uint64_t>(g.n)});
        for (i64 i = 0; i < g.draws; ++i) ++freq[sample_dyck_uniform(g.n, rng)];
        i64 classes = catalan_number(g.n);
        CHECK(static_cast<i64>(freq.size()) == classes);
        double expect = static_cast<double>(g.draws) / classes;
        double chi2 = 0;
        for (auto& [path, count] : freq) chi2 += (count - expect) * (count - expect) / expect;
        INFO("n=", g.n, " chi2=", chi2);
        CHECK(chi2 < g.critical);
    }
    // n=2: the two paths each with frequency 0.5 +- 0.01
    std::map<Walk, i64> freq;
    Rng rng = Rng::from(Seed{42, 0});
    for (i64 i = 0; i < 100000; ++i) ++freq[sample_dyck_uniform(2, rng)];
    for (auto& [path, count] : freq) CHECK(std::abs(count / 100000.0 - 0.5) < 0.01);
}

TEST_CASE("branching labels: root zero, increment law, corner consistency") {
    Rng rng = Rng::from(Seed{7, 7});
    i64 counts[3] = {0, 0, 0};
    i64 total_nodes = 0;
    for (int rep = 0; rep < 40; ++rep) {
        Walk c = sample_dyck_uniform(30000, rng);
        Walk l = sample_branching_labels(c, rng);
        REQUIRE(l.front() == 0);
        REQUIRE(l.back() == 0);
        // per-node increments via first visits
        Walk nodes = corner_labels_to_node_labels(c, l);  // throws if corner-inconsistent
        PlanarTree t = contour_to_tree(c);
        for (i64 v = 1; v < t.n_nodes(); ++v) {
            ++counts[nodes[v] - nodes[t.parent[v]] + 1];
            ++total_nodes;
        }
    }
    CHECK(total_nodes >= 1000000);
    for (i64 k : counts) CHECK(std::abs(static_cast<double>(k) / total_nodes - 1.0 / 3) < 0.01);
}

TEST_CASE("iterated snake: layer sizes and invariants") {
    IteratedSnake s = sample_iterated_snake(10, 4, Seed{5, 1});
    for (i64 j = 0; j < 4; ++j)
        CHECK(static_cast<i64>(s.layers[j].contour.size()) == (i64{1} << (j + 1)) * 10 + 1);
    CHECK(check_snake(s));

    // D=1 reduces exactly to the two base samplers
    IteratedSnake s1 = sample_iterated_snake(17, 1, Seed{9, 4});
    Rng stream = Rng::from(Seed{9, 4});
    Rng r0 = stream.fork(0);
    CHECK(s1.layers[0].contour == sample_dyck_uniform(17, r0));
    Rng r1 = stream.fork(1);
    CHECK(s1.layers[0].labels == sample_branching_labels(s1.layers[0].contour, r1));

    // invariant checker over random draws
    Rng pick = Rng::from(Seed{3, 3});
    for (int rep = 0; rep < 100; ++rep) {
        i64 n = 1 + static_cast<i64>(pick.below(100));
        i64 d = 1 + static_cast<i64>(pick.below(5));
        CHECK(check_snake(sample_iterated_snake(n, d, Seed{100 + static_cast<std::uint64_t>(rep), 0})));
    }
}

TEST_CASE("determinism: identical seed gives bit-identical snakes") {
    IteratedSnake a = sample_iterated_snake(200, 3, Seed{11, 22});
    IteratedSnake b = sample_iterated_snake(200, 3, Seed{11, 22});
    for (i64 j = 0; j < 3; ++j) {
        CHECK(a.layers[j].contour == b.layers[j].contour);
        CHECK(a.layers[j].labels == b.layers[j].labels);
        CHECK(a.layers[j].shift_a == b.layers[j].shift_a);
    }
    IteratedSnake c = sample_iterated_snake(200, 3, Seed{11, 23});
    CHECK(a.layers[0].contour != c.layers[0].contour);

    // trees-only variant agrees below the top level
    IteratedSnake t = sample_iterated_snake_trees(200, 3, Seed{11, 22});
    for (i64 j = 0; j < 3; ++j) CHECK(t.layers[j].contour == a.layers[j].contour);
    CHECK(t.layers[2].labels.empty());
}

TEST_CASE("normalization constants") {
    CHECK(normalization_constants(2, 1).alpha == doctest::Approx(2.0));
    for (i64 n : {i64{10}, i64{1000}, i64{1000000}}) {
        CHECK(normalization_constants(n, 1).alpha ==
              doctest::Approx(std::sqrt(2.0 * n)).epsilon(1e-12));
        for (i64 j = 1; j <= 10; ++j) {
            NormConstants a = normalization_constants(n, j);
            NormConstants b = normalization_constants(n, j + 1);
            CHECK(std::abs(b.alpha - a.beta) / a.beta < 1e-12);
            CHECK(a.beta == doctest::Approx(std::sqrt(2.0 / 3.0 * a.alpha)).epsilon(1e-12));
        }
    }
}

TEST_CASE("max label scale stays near n^(1/4)") {
    // medians of max|L|/n^(1/4) across sizes; band frozen from a pilot
    // run of this generator, drift above 20 percent fails
    std::vector<double> medians;
    for (i64 p = 10; p <= 18; p += 2) {
        i64 n = i64{1} << p;
        std::vector<double> ratios;
        for (int rep = 0; rep < 21; ++rep) {
            IteratedSnake s =
                sample_iterated_snake(n, 1, Seed{500 + static_cast<std::uint64_t>(p),
                                                 static_cast<std::uint64_t>(rep)});
            i64 mx = 0;
            for (i64 x : s.layers[0].labels) mx = std::max(mx, std::abs(x));
            ratios.push_back(mx / std::pow(static_cast<double>(n), 0.25));
        }
        std::sort(ratios.begin(), ratios.end());
        medians.push_back(ratios[ratios.size() / 2]);
    }
    double lo = *std::min_element(medians.begin(), medians.end());
    double hi = *std::max_element(medians.begin(), medians.end());
    INFO("median band [", lo, ", ", hi, "]");
    CHECK(hi / lo < 1.2);
    CHECK(lo > 1.0);
    CHECK(hi < 1.8);
}
