#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "changectx/code_model.hpp"
#include "changectx/stmt_parser.hpp"

namespace changectx {

enum class DepKind { Control, Data };

const char* to_string(DepKind kind);

/// Program dependence graph of one SourceVersion. Nodes are statement ids;
/// edges point from the governing statement to the dependent one: a control
/// edge (h, s) means h's outcome can prevent s, a data edge (d, u) means a
/// definition at d reaches a use at u.
struct ProgramDependenceGraph {
    VersionLabel version_label = VersionLabel::Before;
    std::vector<int> nodes;
    std::set<std::tuple<int, int, DepKind>> edges;
    std::set<std::pair<int, int>> call_edges;  // (call site, callee signature stmt)

    bool has_edge(int from, int to, DepKind kind) const {
        return edges.count({from, to, kind}) > 0;
    }
};

/// Control dependences of one method, by the post-dominance criterion:
/// s depends on branching header h iff s post-dominates some but not all
/// successors of h. Self-edges are excluded.
std::set<std::pair<int, int>> control_dependences(const ControlFlowGraph& cfg,
                                                  const std::vector<Statement>& statements);

/// Flow (def-use) dependences of one method via the iterative
/// reaching-definitions fixpoint: edge (d, u) when some v defined at d
/// reaches a use of v at u along a CFG path with no intervening
/// redefinition.
std::set<std::pair<int, int>> data_dependences(const ControlFlowGraph& cfg,
                                               const std::vector<Statement>& statements);

/// Whole-version PDG: union of per-method control and data dependences,
/// plus commit-local name-based call edges and parameter-passing data
/// edges into callee signatures.
ProgramDependenceGraph build_pdg(const SourceVersion& version, Diagnostics* diags = nullptr);

/// Plain-text dump for golden tests and debugging: one `from kind to`
/// triple per line (kind is control/data/call), sorted.
std::string dump_pdg(const ProgramDependenceGraph& pdg);

}  // namespace changectx
