#pragma once
// Lossless codecs among the four encodings of a rooted planar tree:
// the tree itself, its height sequence, its contour (Dyck) sequence and
// corner label sequences, plus corner arithmetic, rerooting and the
// pointed distance on finite tours.
//
// Conventions used throughout:
//   - nodes are numbered in lexicographic first-visit order, node 0 = root;
//   - contour/label processes are indexed by corners of the clockwise
//     depth-first walk, k in [0, 2N], with corner 2N identified with 0;
//   - all integer sequences are std::vector<std::int64_t>.

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace feuille {

using i64 = std::int64_t;
using Walk = std::vector<i64>;

struct PlanarTree {
    i64 n_edges = 0;
    std::vector<i64> parent;                 // parent[0] = -1 (root sentinel)
    std::vector<std::vector<i64>> children;  // ordered child lists

    i64 n_nodes() const { return n_edges + 1; }
};

// Membership tests for the three sequence families.
// Height sequences H_N: H(0)=0, H(i)>0 and H(i)-H(i-1) <= 1 for i >= 1.
bool is_height_seq(const Walk& h);
// Dyck paths of length 2N: +-1 increments, nonnegative, 0 at both ends.
bool is_dyck_path(const Walk& c);
// Label sequences L_N: increments in {-1,0,1}, 0 at both ends.
bool is_label_seq(const Walk& l);

// Structural validity of a PlanarTree (parent/children consistency,
// lexicographic node order).
bool is_valid_tree(const PlanarTree& t);

// Codecs. All reject invalid input with std::invalid_argument.
Walk tree_to_height(const PlanarTree& t);
PlanarTree height_to_tree(const Walk& h);
Walk height_to_contour(const Walk& h);
Walk contour_to_height(const Walk& c);

inline PlanarTree contour_to_tree(const Walk& c) { return height_to_tree(contour_to_height(c)); }
inline Walk tree_to_contour(const PlanarTree& t) { return height_to_contour(tree_to_height(t)); }

struct Conjugation {
    Walk height;  // element of H_N
    i64 shift;    // A = min argmin of the label sequence
};

// Discrete conjugation: rotate a label sequence at its first minimum and
// shift up by one, producing the height sequence of a new tree.
Conjugation conjugate_labels(const Walk& labels);

// Node owning each corner: result[k] = node visited at contour step k,
// k in [0, 2N] (result[2N] = 0).
std::vector<i64> corner_nodes(const Walk& contour);

struct WalkTree {
    PlanarTree tree;
    std::vector<i64> node_of_corner;  // walk position -> node id (first-visit order)
};

// Rebuild the ordered tree from a closed tree walk: vertex_at_corner[t],
// t in [0, 2N), lists the vertices met at successive corners; consecutive
// positions must be adjacent in the tree. Vertex ids are arbitrary.
WalkTree tree_from_corner_visits(const std::vector<i64>& vertex_at_corner);

// Expand per-node labels to the corner-indexed sequence and back.
Walk node_labels_to_corner_labels(const Walk& contour, const Walk& node_labels);
Walk corner_labels_to_node_labels(const Walk& contour, const Walk& corner_labels);

// Index of the first corner visiting node k: m(k) = 2k - H(k).
i64 first_corner(const Walk& height, i64 k);

// Graph distance in the tree between the nodes under corners k and k2:
// C(k) + C(k2) - 2 min C over [min(k,k2), max(k,k2)].
i64 tree_distance(const Walk& contour, i64 k, i64 k2);

// Cyclic rotation of the increment sequence by a root corner a (C(a) = 0).
Walk reroot_tree(const Walk& contour, i64 a);

// Rerooting at an arbitrary corner (the root vertex may change): the new
// contour is k -> d_T(c(a+k mod 2N), c(a)).
Walk reroot_at_corner(const Walk& contour, i64 a);

struct SnakeTour {
    Walk contour;
    Walk labels;
};

// Pointed distance between two equal-length tours: minimum over root
// corners a of tour2 of the sup-norm distance, contour part plus label
// part, after rotating tour2 by a. Zero iff the tours are the same
// pointed snake.
double pointed_distance(const SnakeTour& tour1, const SnakeTour& tour2);

// Process dump, one layer per file: "# layer=<j> n=<n>" then rows idx,C,L.
void write_process_csv(std::ostream& os, i64 layer, i64 n, const Walk& contour, const Walk& labels);

}  // namespace feuille
