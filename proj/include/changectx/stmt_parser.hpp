#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "changectx/code_model.hpp"

namespace changectx {

/// Collector for non-fatal parse/analysis notes. Callers that do not care
/// pass nullptr.
using Diagnostics = std::vector<std::string>;

inline void diag(Diagnostics* diags, std::string message) {
    if (diags) diags->push_back(std::move(message));
}

/// Per-method control-flow graph over statement ids, with synthetic
/// ENTRY/EXIT nodes.
struct ControlFlowGraph {
    static constexpr int kEntry = -1;
    static constexpr int kExit = -2;

    std::string method;
    std::vector<int> nodes;                     // non-synthetic, ascending
    std::set<std::pair<int, int>> edges;        // directed (from, to)

    std::vector<int> successors(int node) const;
    std::vector<int> predecessors(int node) const;
};

/// Splits a Java-subset source text into statements.
///
/// Statement granularity: one statement per semicolon-terminated simple
/// statement, per control-construct header, per case/default label, per
/// annotation line, and per method signature. Braces and the bare
/// else/do/try/finally keywords are structural and produce no statement.
///
/// Returns nullopt (and a diagnostic) when braces or parentheses do not
/// balance after comment stripping; the file is meant to be skipped.
std::optional<std::vector<Statement>> segment_statements(std::string_view source_text,
                                                         std::string_view path,
                                                         Diagnostics* diags = nullptr);

struct DefUse {
    std::set<std::string> defs;
    std::set<std::string> uses;
    std::set<std::string> callees;
    bool lexical_warning = false;
};

/// Best-effort lexical def/use/callee extraction for a single statement.
/// Never fails; out-of-subset syntax yields empty sets plus a warning flag.
DefUse extract_def_use(std::string_view stmt_text);

/// Builds the CFG of one method from its statements (in id order).
/// `statements` must be exactly the method's statements.
ControlFlowGraph build_cfg(const MethodUnit& method, const std::vector<Statement>& statements,
                           Diagnostics* diags = nullptr);

/// Parses every file of one version: segmentation, def/use extraction and
/// method discovery, with dense statement ids across files in order.
/// Unbalanced files are skipped with a diagnostic.
SourceVersion parse_version(VersionLabel label,
                            const std::vector<std::pair<std::string, std::string>>& files,
                            Diagnostics* diags = nullptr);

/// Statements belonging to `method`, copied in id order.
std::vector<Statement> method_statements(const SourceVersion& version, const MethodUnit& method);

}  // namespace changectx
