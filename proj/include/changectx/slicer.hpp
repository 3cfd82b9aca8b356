#pragma once

#include <map>
#include <set>
#include <vector>

#include "changectx/pdg.hpp"

namespace changectx {

enum class SliceDirection { Backward, Forward };

/// Bounded dependence-hop slicing configuration. Defaults: depth 3, both
/// directions, both edge kinds, inter-procedural traversal on.
struct SliceConfig {
    int depth = 3;
    std::set<SliceDirection> directions{SliceDirection::Backward, SliceDirection::Forward};
    std::set<DepKind> edge_kinds{DepKind::Control, DepKind::Data};
    bool interprocedural = true;

    bool valid() const { return depth >= 1 && !directions.empty() && !edge_kinds.empty(); }
};

/// Statements within `config.depth` dependence hops of the seeds: outgoing
/// edges when Forward is enabled (dependents), incoming when Backward
/// (dependees). Call edges are traversed in both directions when
/// interprocedural is on; every traversal counts one hop. Seeds missing
/// from the graph are reported and skipped.
std::set<int> slice(const ProgramDependenceGraph& pdg, const std::set<int>& seeds,
                    const SliceConfig& config, std::vector<int>* missing_seeds = nullptr);

/// Same traversal, also reporting each reached statement's hop distance
/// (seeds are at 0).
std::map<int, int> slice_with_depths(const ProgramDependenceGraph& pdg,
                                     const std::set<int>& seeds, const SliceConfig& config,
                                     std::vector<int>* missing_seeds = nullptr);

}  // namespace changectx
