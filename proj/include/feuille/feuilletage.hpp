#pragma once
// The D-th discrete feuilletage: corner <-> node correspondence across
// snake levels, iterated identification of the top tree's nodes, and the
// quotient multigraph, plus each intermediate quadrangulation.

#include "feuille/cvs.hpp"
#include "feuille/sampling.hpp"

namespace feuille {

struct CornerNodeMap {
    i64 level = 0;                // j >= 2
    std::vector<i64> corner_of;   // node i of layer j (i >= 1) -> corner of layer j-1; [0] unused (-1)
};

// Node i >= 1 of layer j sits at corner (a + i - 1) mod N of layer j-1,
// with a the recorded conjugation shift and N = 2^(j-1) n corners.
CornerNodeMap corner_node_map(const IteratedSnake& snake, i64 level);

struct Feuilletage {
    i64 n = 0;
    i64 depth = 0;
    i64 n_classes = 0;                       // always n + depth
    std::vector<i64> class_of_node;          // layer-D node -> class id
    std::vector<std::pair<i64, i64>> edges;  // one per layer-D tree edge
    i64 root_class = -1;                     // class of the layer-D root
};

// Level-by-level identification: a non-root node of layer j joins the
// class of the layer-(j-1) node owning its corner; each root starts a new
// class. Classes come out dense in [0, n + D).
Feuilletage build_feuilletage(const IteratedSnake& snake);

// Q^(j, j+1) = cvs_forward of layer j's labeled tree (eta = 0).
Quadrangulation build_layer_quadrangulation(const IteratedSnake& snake, i64 level);

// Class-pair edge list, vertex ids dense 0-based with the root class
// mapped to 0. simplify drops loops and collapses parallel edges.
std::vector<std::pair<i64, i64>> export_quotient_graph(const Feuilletage& f, bool simplify);

// Edge-list text: "# feuilletage n=<n> D=<D> seed=<master>:<replicate>",
// then "u v" per line.
void write_edge_list(std::ostream& os, const Feuilletage& f, Seed seed, bool simplify);

}  // namespace feuille
