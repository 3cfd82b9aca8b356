#pragma once

// Brute-force dependence oracles for cross-checking the PDG builder.
// Deliberately naive: post-dominance by path reachability, data
// dependences by enumerating CFG paths and checking kill sets. Keep this
// file free of the fixpoint machinery it is meant to verify.

#include <set>
#include <utility>
#include <vector>

#include "changectx/stmt_parser.hpp"

namespace changectx::testing {

std::set<std::pair<int, int>> oracle_control_deps(const ControlFlowGraph& cfg,
                                                  const std::vector<Statement>& statements);

std::set<std::pair<int, int>> oracle_data_deps(const ControlFlowGraph& cfg,
                                               const std::vector<Statement>& statements);

}  // namespace changectx::testing
