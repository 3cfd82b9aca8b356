#include "support/pdg_oracle.hpp"

#include <functional>
#include <map>
#include <string>

namespace changectx::testing {

namespace {

std::map<int, std::vector<int>> successor_map(const ControlFlowGraph& cfg) {
    std::map<int, std::vector<int>> succ;
    for (const auto& [from, to] : cfg.edges) succ[from].push_back(to);
    return succ;
}

// Can `to` be reached from `from` without stepping on `avoid`?
bool reachable_avoiding(const std::map<int, std::vector<int>>& succ, int from, int to, int avoid) {
    if (from == avoid) return from == to;
    std::set<int> seen{from};
    std::vector<int> work{from};
    while (!work.empty()) {
        int n = work.back();
        work.pop_back();
        if (n == to) return true;
        if (n == avoid) continue;
        auto it = succ.find(n);
        if (it == succ.end()) continue;
        for (int next : it->second)
            if (seen.insert(next).second) work.push_back(next);
    }
    return false;
}

// s post-dominates n: every path n -> EXIT passes through s.
bool pdoms(const std::map<int, std::vector<int>>& succ, int s, int n) {
    if (s == n) return true;
    const int exit_node = ControlFlowGraph::kExit;
    if (!reachable_avoiding(succ, n, exit_node, /*avoid=*/ControlFlowGraph::kEntry - 100))
        return true;  // vacuous: no path to EXIT at all
    return !reachable_avoiding(succ, n, exit_node, s);
}

bool is_branch_header(StmtKind kind) {
    return kind == StmtKind::IfHeader || kind == StmtKind::LoopHeader ||
           kind == StmtKind::SwitchHeader || kind == StmtKind::CaseLabel;
}

}  // namespace

std::set<std::pair<int, int>> oracle_control_deps(const ControlFlowGraph& cfg,
                                                  const std::vector<Statement>& statements) {
    std::set<std::pair<int, int>> deps;
    auto succ = successor_map(cfg);
    for (const auto& h : statements) {
        if (!is_branch_header(h.kind)) continue;
        auto it = succ.find(h.id);
        if (it == succ.end() || it->second.size() < 2) continue;
        for (const auto& s : statements) {
            if (s.id == h.id) continue;
            int yes = 0, no = 0;
            for (int x : it->second)
                (pdoms(succ, s.id, x) ? yes : no)++;
            if (yes > 0 && no > 0) deps.insert({h.id, s.id});
        }
    }
    return deps;
}

std::set<std::pair<int, int>> oracle_data_deps(const ControlFlowGraph& cfg,
                                               const std::vector<Statement>& statements) {
    std::set<std::pair<int, int>> deps;
    auto succ = successor_map(cfg);
    std::map<int, const Statement*> by_id;
    for (const auto& s : statements) by_id[s.id] = &s;

    size_t max_len = statements.size() + 2;

    for (const auto& d : statements) {
        for (const auto& var : d.defs) {
            // enumerate simple paths from d; a path may end at any node
            // that uses var, and dies at any node that redefines it
            std::vector<int> path{d.id};
            std::set<int> on_path{d.id};
            std::function<void(int)> walk = [&](int node) {
                if (path.size() > max_len) return;
                auto it = succ.find(node);
                if (it == succ.end()) return;
                for (int next : it->second) {
                    if (next < 0) continue;  // ENTRY/EXIT
                    auto sit = by_id.find(next);
                    if (sit == by_id.end()) continue;
                    const Statement& stmt = *sit->second;
                    if (stmt.uses.count(var)) deps.insert({d.id, stmt.id});
                    if (stmt.defs.count(var)) continue;  // killed past this node
                    if (on_path.count(next)) continue;   // simple paths only
                    path.push_back(next);
                    on_path.insert(next);
                    walk(next);
                    on_path.erase(next);
                    path.pop_back();
                }
            };
            walk(d.id);
        }
    }
    return deps;
}

}  // namespace changectx::testing
