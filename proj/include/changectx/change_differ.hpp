#pragma once

#include <set>
#include <utility>
#include <vector>

#include "changectx/code_model.hpp"

namespace changectx {

/// Alignment of a commit's two versions into added / removed / unchanged
/// statements. `matched` is an order-preserving partial bijection over
/// normalized statement texts (a longest common subsequence, per file).
struct ChangeSet {
    std::set<int> added;    // after-version ids
    std::set<int> removed;  // before-version ids
    std::set<std::pair<int, int>> matched;  // (before id, after id)
};

ChangeSet align_versions(const SourceVersion& before, const SourceVersion& after);

/// LCS pairing of two interned sequences (exposed for the differ's oracle
/// tests). Pairs are strictly increasing in both components and maximal in
/// count.
std::vector<std::pair<int, int>> lcs_pairs(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace changectx
