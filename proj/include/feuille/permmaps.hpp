#pragma once
// Permutation-encoded combinatorial maps, Euler/genus computation,
// non-crossing partitions with Kreweras complements, the genus of a
// permutation on an ordered support, and the nested non-crossing
// permutation codec for D-general feuilletages.

#include <string>

#include "feuille/encodings.hpp"

namespace feuille {

struct IteratedSnake;  // sampling.hpp

// A connected map with n edges: sigma on [0, 2n) (vertex rotations),
// alpha a fixed-point-free involution (edges). Faces are the cycles of
// sigma o alpha.
struct CombMap {
    std::vector<i64> sigma;
    std::vector<i64> alpha;
    i64 root_dart = -1;

    i64 n_darts() const { return static_cast<i64>(sigma.size()); }
};

// Checks involution, permutation validity and transitivity.
bool is_valid_comb_map(const CombMap& m);

std::vector<std::vector<i64>> permutation_cycles(const std::vector<i64>& perm);

struct FacesAndGenus {
    std::vector<std::vector<i64>> faces;  // cycles of sigma o alpha
    i64 genus;
};

// V - n + F = 2 - 2g; throws on invalid maps or non-integral genus.
FacesAndGenus map_faces_and_genus(const CombMap& m);

// Non-crossing partition on a totally ordered ground set. Blocks hold
// ground VALUES; crossing is judged by position in `ground`.
struct NCPartition {
    std::vector<i64> ground;               // values in display order
    std::vector<std::vector<i64>> blocks;  // disjoint cover of ground
};

bool is_noncrossing_partition(const NCPartition& p);

// Kreweras complement on the interleaved barred copy of the ground set;
// block element i stands for the barred copy sitting right after ground
// position i.
NCPartition kreweras_complement(const NCPartition& p);

// A permutation given on an ordered support: next[i] = support position
// of the image of support[i].
struct SupportedPerm {
    std::vector<i64> support;  // values in display order
    std::vector<i64> next;     // permutation in position space
};

SupportedPerm perm_from_cycles(const std::vector<i64>& support,
                               const std::vector<std::vector<i64>>& cycles_by_value);

// Each cycle visits its elements in increasing position order and the
// induced partition is non-crossing.
bool is_noncrossing_permutation(const SupportedPerm& p);

// 2g = 1 + |support| - #cycles(sigma) - #cycles(f0 o sigma), with f0 the
// full cycle in support order. Throws if 2g comes out odd or negative.
i64 permutation_genus(const SupportedPerm& p);

// Cycle notation "(a,b,c)(d)" with 0-based indices; singletons printed so
// the support stays explicit.
std::string cycles_to_string(const SupportedPerm& p);
// Unlisted elements of `support` are read as fixed points.
SupportedPerm perm_from_string(const std::string& text, const std::vector<i64>& support);

// Nested non-crossing permutations on the corner set of the top tree.
// sigmas[0] = sigma^(D) (support = all of C_D), ..., sigmas[D-1] =
// sigma^(1). sigma^(j) is non-crossing on C_j taken in the orientation of
// C_D when j == D (mod 2) and reversed otherwise.
struct NestedNCP {
    i64 corner_count = 0;  // |C_D| = 2^D n
    std::vector<SupportedPerm> sigmas;

    i64 depth() const { return static_cast<i64>(sigmas.size()); }
};

bool validate_nested_ncp(const NestedNCP& ncp);

NestedNCP nested_ncp_encode(const IteratedSnake& snake);

// Rebuilds the snake (contours, labels, shifts) from the nested encoding.
// Top-layer labels are not part of the encoding and come back as zeros.
IteratedSnake nested_ncp_decode(const NestedNCP& ncp);

// File format: one permutation per line, level D first.
std::string nested_ncp_to_string(const NestedNCP& ncp);
NestedNCP nested_ncp_from_string(const std::string& text);

}  // namespace feuille
