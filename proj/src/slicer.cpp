#include "changectx/slicer.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace changectx {

std::map<int, int> slice_with_depths(const ProgramDependenceGraph& pdg,
                                     const std::set<int>& seeds, const SliceConfig& config,
                                     std::vector<int>* missing_seeds) {
    std::unordered_set<int> nodes(pdg.nodes.begin(), pdg.nodes.end());
    std::unordered_map<int, std::vector<int>> step;  // one-hop neighborhoods
    bool fwd = config.directions.count(SliceDirection::Forward) > 0;
    bool bwd = config.directions.count(SliceDirection::Backward) > 0;
    for (const auto& [from, to, kind] : pdg.edges) {
        if (!config.edge_kinds.count(kind)) continue;
        if (fwd) step[from].push_back(to);
        if (bwd) step[to].push_back(from);
    }
    if (config.interprocedural) {
        for (const auto& [site, entry] : pdg.call_edges) {
            step[site].push_back(entry);
            step[entry].push_back(site);
        }
    }

    std::map<int, int> dist;
    std::deque<int> frontier;
    for (int s : seeds) {
        if (!nodes.count(s)) {
            if (missing_seeds) missing_seeds->push_back(s);
            continue;
        }
        dist[s] = 0;
        frontier.push_back(s);
    }
    while (!frontier.empty()) {
        int n = frontier.front();
        frontier.pop_front();
        int d = dist[n];
        if (d >= config.depth) continue;
        auto it = step.find(n);
        if (it == step.end()) continue;
        for (int next : it->second) {
            if (dist.count(next)) continue;
            dist[next] = d + 1;
            frontier.push_back(next);
        }
    }
    return dist;
}

std::set<int> slice(const ProgramDependenceGraph& pdg, const std::set<int>& seeds,
                    const SliceConfig& config, std::vector<int>* missing_seeds) {
    std::set<int> result;
    for (const auto& [id, hop] : slice_with_depths(pdg, seeds, config, missing_seeds))
        result.insert(id);
    return result;
}

}  // namespace changectx
