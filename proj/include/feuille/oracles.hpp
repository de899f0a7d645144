#pragma once
// Exhaustive small-n enumerators and counting validators. Guards are hard
// limits with explicit errors; every enumerator's output size must match
// its closed-form count.

#include <functional>
#include <string>

#include "feuille/cvs.hpp"

namespace feuille {

i64 catalan_number(i64 n);

// All C_n Dyck paths of length 2n in lexicographic order. Guard n <= 12.
std::vector<Walk> enumerate_dyck(i64 n);

// Streaming form used by the heavier validators.
void for_each_dyck(i64 n, const std::function<void(const Walk&)>& fn);

// All labeled trees with n edges (eta excluded): 3^n C_n items.
// Guard n <= 7.
std::vector<LabeledTree> enumerate_labeled_trees(i64 n);
void for_each_labeled_tree(i64 n, const std::function<void(const LabeledTree&)>& fn);

struct EnumerationReport {
    i64 n = 0;
    std::string family;
    i64 exact_count = 0;
    i64 formula_count = 0;
    std::vector<std::string> mismatches;

    bool ok() const { return exact_count == formula_count && mismatches.empty(); }
};

// Maps all of LT_n x {0,1} forward, asserts image size 2 * 3^n * C_n with
// no collisions, and checks backward o forward = id plus the distance
// identity on every image. Guard n <= 5.
EnumerationReport verify_cvs_exhaustive(i64 n);

// Walks every snake realization (base tree x labelings per level up to
// depth-1) and checks class count n + D, edge count 2^(D-1) n and
// connectivity. Guards n <= 3, D <= 3.
EnumerationReport verify_feuilletage_counts(i64 n, i64 depth);

// Plumbing for the CLI fault-injection hook: when set, the formula table
// used by the validators is corrupted so a FAIL path is exercised.
void inject_catalan_fault(bool enabled);

}  // namespace feuille
