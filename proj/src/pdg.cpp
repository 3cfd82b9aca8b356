#include "changectx/pdg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace changectx {

namespace {

// Dense node indexing for the dataflow passes: statements first, EXIT last,
// ENTRY excluded (it defines nothing and post-dominance never needs it).
struct NodeIndex {
    std::vector<int> ids;  // position -> statement id (plus EXIT)
    std::unordered_map<int, size_t> pos;

    explicit NodeIndex(const ControlFlowGraph& cfg) {
        for (int id : cfg.nodes) ids.push_back(id);
        ids.push_back(ControlFlowGraph::kExit);
        for (size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = i;
    }
    size_t size() const { return ids.size(); }
};

using BitRow = std::vector<uint64_t>;

BitRow make_row(size_t n, bool ones) {
    BitRow row((n + 63) / 64, ones ? ~uint64_t{0} : 0);
    if (ones && n % 64) row.back() = (uint64_t{1} << (n % 64)) - 1;
    return row;
}
void set_bit(BitRow& row, size_t i) { row[i / 64] |= uint64_t{1} << (i % 64); }
bool get_bit(const BitRow& row, size_t i) { return (row[i / 64] >> (i % 64)) & 1; }
bool and_into(BitRow& dst, const BitRow& src) {  // dst &= src, returns changed
    bool changed = false;
    for (size_t i = 0; i < dst.size(); ++i) {
        uint64_t v = dst[i] & src[i];
        if (v != dst[i]) changed = true;
        dst[i] = v;
    }
    return changed;
}
bool or_into(BitRow& dst, const BitRow& src) {
    bool changed = false;
    for (size_t i = 0; i < dst.size(); ++i) {
        uint64_t v = dst[i] | src[i];
        if (v != dst[i]) changed = true;
        dst[i] = v;
    }
    return changed;
}

// pdom[n] = {n} ∪ ⋂ pdom(succ(n)), to fixpoint. Rows indexed by NodeIndex.
std::vector<BitRow> post_dominators(const ControlFlowGraph& cfg, const NodeIndex& idx) {
    size_t n = idx.size();
    std::vector<std::vector<size_t>> succ(n);
    for (const auto& [from, to] : cfg.edges) {
        if (from == ControlFlowGraph::kEntry) continue;
        succ[idx.pos.at(from)].push_back(idx.pos.at(to));
    }
    size_t exit_pos = idx.pos.at(ControlFlowGraph::kExit);
    std::vector<BitRow> pdom(n, make_row(n, true));
    pdom[exit_pos] = make_row(n, false);
    set_bit(pdom[exit_pos], exit_pos);

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t u = 0; u < n; ++u) {
            if (u == exit_pos) continue;
            BitRow next = succ[u].empty() ? make_row(n, false) : make_row(n, true);
            for (size_t s : succ[u]) and_into(next, pdom[s]);
            set_bit(next, u);
            if (next != pdom[u]) {
                pdom[u] = std::move(next);
                changed = true;
            }
        }
    }
    return pdom;
}

bool is_branch_header(StmtKind kind) {
    return kind == StmtKind::IfHeader || kind == StmtKind::LoopHeader ||
           kind == StmtKind::SwitchHeader || kind == StmtKind::CaseLabel;
}

}  // namespace

const char* to_string(DepKind kind) { return kind == DepKind::Control ? "control" : "data"; }

std::set<std::pair<int, int>> control_dependences(const ControlFlowGraph& cfg,
                                                  const std::vector<Statement>& statements) {
    std::set<std::pair<int, int>> deps;
    if (cfg.nodes.empty()) return deps;
    NodeIndex idx(cfg);
    auto pdom = post_dominators(cfg, idx);

    std::unordered_map<int, const Statement*> by_id;
    for (const auto& s : statements) by_id[s.id] = &s;

    for (int h : cfg.nodes) {
        auto it = by_id.find(h);
        if (it == by_id.end() || !is_branch_header(it->second->kind)) continue;
        std::vector<int> succs = cfg.successors(h);
        if (succs.size() < 2) continue;
        for (int s : cfg.nodes) {
            if (s == h) continue;  // no control self-edges
            size_t sp = idx.pos.at(s);
            int count = 0;
            for (int x : succs)
                if (get_bit(pdom[idx.pos.at(x)], sp)) ++count;
            if (count > 0 && count < static_cast<int>(succs.size())) deps.insert({h, s});
        }
    }
    return deps;
}

std::set<std::pair<int, int>> data_dependences(const ControlFlowGraph& cfg,
                                               const std::vector<Statement>& statements) {
    std::set<std::pair<int, int>> deps;
    if (cfg.nodes.empty()) return deps;

    std::unordered_map<int, const Statement*> by_id;
    for (const auto& s : statements) by_id[s.id] = &s;

    // enumerate definitions
    struct Def {
        int stmt;
        std::string var;
    };
    std::vector<Def> defs;
    std::map<std::string, std::vector<size_t>> defs_of_var;
    for (const auto& s : statements)
        for (const auto& v : s.defs) {
            defs_of_var[v].push_back(defs.size());
            defs.push_back({s.id, v});
        }
    if (defs.empty()) return deps;
    size_t nd = defs.size();

    NodeIndex idx(cfg);
    size_t nn = idx.size();
    std::vector<std::vector<size_t>> pred(nn);
    for (const auto& [from, to] : cfg.edges) {
        if (from == ControlFlowGraph::kEntry) continue;
        pred[idx.pos.at(to)].push_back(idx.pos.at(from));
    }

    auto zero = [&] { return BitRow((nd + 63) / 64, 0); };
    std::vector<BitRow> gen(nn, zero()), kill(nn, zero()), in(nn, zero()), out(nn, zero());
    for (size_t p = 0; p < nn; ++p) {
        int id = idx.ids[p];
        auto it = by_id.find(id);
        if (it == by_id.end()) continue;
        for (const auto& v : it->second->defs)
            for (size_t d : defs_of_var[v]) {
                if (defs[d].stmt == id) set_bit(gen[p], d);
                else set_bit(kill[p], d);
            }
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t p = 0; p < nn; ++p) {
            BitRow next_in = zero();
            for (size_t q : pred[p]) or_into(next_in, out[q]);
            if (next_in != in[p]) {
                in[p] = next_in;
                changed = true;
            }
            BitRow next_out = in[p];
            for (size_t w = 0; w < next_out.size(); ++w)
                next_out[w] = (next_out[w] & ~kill[p][w]) | gen[p][w];
            if (next_out != out[p]) {
                out[p] = std::move(next_out);
                changed = true;
            }
        }
    }

    for (const auto& s : statements) {
        size_t p = idx.pos.at(s.id);
        for (const auto& v : s.uses) {
            auto it = defs_of_var.find(v);
            if (it == defs_of_var.end()) continue;
            for (size_t d : it->second)
                if (get_bit(in[p], d)) deps.insert({defs[d].stmt, s.id});
        }
    }
    return deps;
}

ProgramDependenceGraph build_pdg(const SourceVersion& version, Diagnostics* diags) {
    ProgramDependenceGraph pdg;
    pdg.version_label = version.label;
    for (const auto& s : version.statements) pdg.nodes.push_back(s.id);

    for (const auto& method : version.methods) {
        if (method.first_stmt > method.last_stmt) continue;
        std::vector<Statement> stmts = method_statements(version, method);
        ControlFlowGraph cfg = build_cfg(method, stmts, diags);
        for (const auto& [h, s] : control_dependences(cfg, stmts))
            pdg.edges.insert({h, s, DepKind::Control});
        for (const auto& [d, u] : data_dependences(cfg, stmts))
            pdg.edges.insert({d, u, DepKind::Data});
    }

    // commit-local, name-based call resolution
    std::map<std::string, std::vector<const MethodUnit*>> by_name;
    for (const auto& m : version.methods)
        if (!m.synthetic) by_name[m.name].push_back(&m);
    for (const auto& s : version.statements) {
        for (const auto& callee : s.callees) {
            auto it = by_name.find(callee);
            if (it == by_name.end()) continue;
            for (const MethodUnit* target : it->second) {
                if (target->first_stmt == s.id) continue;  // a signature "calling" itself
                pdg.call_edges.insert({s.id, target->first_stmt});
                if (!target->params.empty())
                    pdg.edges.insert({s.id, target->first_stmt, DepKind::Data});
            }
        }
    }
    return pdg;
}

std::string dump_pdg(const ProgramDependenceGraph& pdg) {
    // rows sorted as (from, to, kind name)
    std::vector<std::tuple<int, int, std::string>> rows;
    for (const auto& [from, to, kind] : pdg.edges) rows.emplace_back(from, to, to_string(kind));
    for (const auto& [from, to] : pdg.call_edges) rows.emplace_back(from, to, "call");
    std::sort(rows.begin(), rows.end());
    std::ostringstream os;
    for (const auto& [from, to, kind] : rows) os << from << ' ' << kind << ' ' << to << '\n';
    return os.str();
}

}  // namespace changectx
