#pragma once
// The Cori-Vauquelin-Schaeffer correspondence between labeled rooted
// trees and rooted pointed planar quadrangulations, in both directions,
// plus the extraction of the second tree by ungluing a quadrangulation
// along the corners of the labeled tree.
//
// Corner processing follows the counterclockwise corner sequence of the
// tree (index reversal of the clockwise contour used by the process
// codecs): corner k links either to the nearest cyclically preceding
// corner labeled L(k)-1 or to the pointed vertex when L(k) is minimal.

#include "feuille/encodings.hpp"
#include "feuille/permmaps.hpp"

namespace feuille {

struct LabeledTree {
    PlanarTree tree;
    Walk node_labels;  // root label 0, adjacent labels differ by <= 1
    int eta = 0;       // orients the root edge of the image

    bool operator==(const LabeledTree& o) const {
        return tree.parent == o.tree.parent && node_labels == o.node_labels && eta == o.eta;
    }
};

bool is_valid_labeling(const PlanarTree& t, const Walk& node_labels);

struct Quadrangulation {
    CombMap map;
    std::vector<i64> vertex_of;  // dart -> vertex id
    i64 n_vertices = 0;
    i64 pointed_vertex = -1;
    i64 root_dart = -1;
};

// Degree of every face and Euler genus; used by the validators.
bool is_quadrangulation(const Quadrangulation& q);

Quadrangulation cvs_forward(const LabeledTree& lt);

// Inverse construction: BFS labels from the pointed vertex, one tree edge
// per face following the two face patterns, rooting and label shift by
// d0. cvs_forward(cvs_backward(q)) == q.
LabeledTree cvs_backward(const Quadrangulation& q);

// The 2n-edge tree obtained by cutting the image quadrangulation along
// the corners of the input tree, rooted at the corner dual to the input
// root corner.
PlanarTree extract_second_tree(const LabeledTree& lt);

// Full extraction data for one level of the iterated construction. All
// corner indices follow each tree's own clockwise walk.
struct Extraction {
    Quadrangulation quad;               // image of (tree, labels)
    PlanarTree tau_next;                // second tree, 2n edges
    std::vector<i64> dual_corner;       // corner of tree -> corner of tau_next
    std::vector<i64> node_origin;       // node of tau_next -> corner of tree, -1 at the pointed vertex
    std::vector<i64> corner_node_next;  // corner of tau_next -> node of tau_next
};

// Labels are used only through differences, so any constant shift of
// node_labels yields the same extraction.
Extraction extract_with_duals(const PlanarTree& tree, const Walk& node_labels);

// Rooted-pointed canonical form: breadth-first dart relabeling anchored
// at the root dart. Two maps are equal as rooted pointed objects iff
// their canonical forms are equal.
std::vector<i64> canonical_form(const Quadrangulation& q);

// Serialization: cycle notation for sigma and alpha plus a
// "pointed=<v> root=<dart>" header.
std::string quadrangulation_to_string(const Quadrangulation& q);

}  // namespace feuille
