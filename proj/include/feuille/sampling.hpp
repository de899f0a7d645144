#pragma once
// Seeded random generation of uniform Dyck paths, branching random walk
// labelings (increments uniform on {-1,0,+1}) and the D-th iterated
// discrete snake, plus the per-level normalization constants.

#include "feuille/encodings.hpp"
#include "feuille/rng.hpp"

namespace feuille {

// Uniform element of Dyck_{2n}: shuffle n up-steps and n+1 down-steps,
// rotate at the first minimum of the partial sums (cycle lemma), drop the
// final down-step. Exact uniformity, O(n).
Walk sample_dyck_uniform(i64 n, Rng& rng);
Walk sample_dyck_uniform(i64 n, Seed seed);

// Independent increment per non-root node, drawn in lexicographic node
// order; node label = sum of increments on the ancestral path; returned
// corner-indexed.
Walk sample_branching_labels(const Walk& contour, Rng& rng);

struct SnakeLayer {
    Walk contour;   // length 2^j n + 1 at level j
    Walk labels;    // corner-indexed, same length (empty if not sampled)
    i64 shift_a;    // conjugation shift used to build this layer; 0 at level 1
};

struct IteratedSnake {
    i64 n = 0;
    std::vector<SnakeLayer> layers;  // levels 1..D

    i64 depth() const { return static_cast<i64>(layers.size()); }
};

// Level 1: uniform contour + labels; level j >= 2: height sequence by
// conjugation of the previous labels, then fresh labels. Each level draws
// from its own forked substream, so truncating the label set does not
// perturb the rest.
IteratedSnake sample_iterated_snake(i64 n, i64 depth, Seed seed);

// Same chain but labels only where a further level consumes them
// (levels 1..D-1). Used by the ensemble statistics.
IteratedSnake sample_iterated_snake_trees(i64 n, i64 depth, Seed seed);

// Deterministic snake from explicit corner label processes (level j gets
// labels[j-1]); contour chain derived by conjugation. Enumeration oracles
// use this to walk every realization.
IteratedSnake snake_from_processes(const Walk& base_contour, const std::vector<Walk>& labels);

// Consistency of a snake: layer sizes, label membership and corner
// consistency, and the conjugation relation between consecutive layers.
bool check_snake(const IteratedSnake& s);

struct NormConstants {
    double alpha;  // contour normalization at level j
    double beta;   // label normalization at level j
};

// alpha_j = (2n)^(1/2^j) (2/3)^(1 - 1/2^(j-1)),
// beta_j  = (2n)^(1/2^(j+1)) (2/3)^(1 - 1/2^j); beta_j = alpha_{j+1}.
NormConstants normalization_constants(i64 n, i64 level);

}  // namespace feuille
