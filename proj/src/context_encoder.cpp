#include "changectx/context_encoder.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace changectx {

namespace {

int lexemes(const std::string& text) {
    int count = 0;
    bool in_word = false;
    for (char c : text) {
        bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!space && !in_word) ++count;
        in_word = !space;
    }
    return count;
}

int entry_tokens(const RepEntry& e) { return (e.marker != ' ' ? 1 : 0) + lexemes(e.text); }

}  // namespace

int count_tokens(const ContextEncodedRepresentation& rep) {
    int total = 0;
    for (const auto& e : rep.entries) total += entry_tokens(e);
    return total;
}

std::string render(const ContextEncodedRepresentation& rep) {
    std::string out;
    for (const auto& e : rep.entries) {
        out.push_back(e.marker);
        out.push_back(' ');
        out += e.text;
        out.push_back('\n');
    }
    return out;
}

ContextEncodedRepresentation truncate(ContextEncodedRepresentation rep, int budget) {
    rep.token_count = count_tokens(rep);
    if (rep.token_count <= budget) return rep;

    bool dropped = false;
    while (rep.token_count > budget) {
        // farthest context entry, later source position breaking ties
        int victim = -1;
        for (int i = 0; i < static_cast<int>(rep.entries.size()); ++i) {
            const RepEntry& e = rep.entries[i];
            if (e.marker != ' ') continue;
            if (victim < 0 || e.hop > rep.entries[victim].hop ||
                (e.hop == rep.entries[victim].hop && i > victim))
                victim = i;
        }
        if (victim < 0) {
            if (rep.entries.size() <= 1) break;  // a lone marked entry stays
            victim = static_cast<int>(rep.entries.size()) - 1;
        }
        rep.token_count -= entry_tokens(rep.entries[victim]);
        rep.entries.erase(rep.entries.begin() + victim);
        dropped = true;
    }
    rep.truncated = dropped || rep.token_count > budget;
    return rep;
}

ContextEncodedRepresentation encode_change(const SourceVersion& before,
                                           const ProgramDependenceGraph& before_pdg,
                                           const SourceVersion& after,
                                           const ProgramDependenceGraph& after_pdg,
                                           const ChangeSet& changeset,
                                           const EncodeOptions& options, Diagnostics* diags) {
    ContextEncodedRepresentation rep;
    if (changeset.added.empty() && changeset.removed.empty()) {
        diag(diags, "empty change: no added or removed statements");
        return rep;
    }

    std::map<int, int> before_hops, after_hops;
    if (options.include_context) {
        before_hops = slice_with_depths(before_pdg, changeset.removed, options.slice);
        after_hops = slice_with_depths(after_pdg, changeset.added, options.slice);
    } else {
        for (int id : changeset.removed) before_hops[id] = 0;
        for (int id : changeset.added) after_hops[id] = 0;
    }

    std::map<int, int> before_to_after, after_to_before;
    for (const auto& [b, a] : changeset.matched) {
        before_to_after[b] = a;
        after_to_before[a] = b;
    }

    // anchor each removed statement at the after-position of its nearest
    // matched predecessor within the same file; -1 anchors at file start
    std::map<std::string, const FileRange*> before_files;
    for (const auto& r : before.file_ranges) before_files[r.path] = &r;
    std::map<std::string, std::vector<int>> removed_at_file_start;  // keyed by before path
    std::map<int, std::vector<int>> removed_after_anchor;           // keyed by after id
    for (int r : changeset.removed) {
        const FileRange* range = nullptr;
        for (const auto& fr : before.file_ranges)
            if (r >= fr.first_stmt && r <= fr.last_stmt) {
                range = &fr;
                break;
            }
        int anchor = -1;
        if (range) {
            for (int b = r - 1; b >= range->first_stmt; --b) {
                auto it = before_to_after.find(b);
                if (it != before_to_after.end()) {
                    anchor = it->second;
                    break;
                }
            }
        }
        if (anchor >= 0)
            removed_after_anchor[anchor].push_back(r);
        else
            removed_at_file_start[range ? range->path : std::string()].push_back(r);
    }
    for (auto& [path, ids] : removed_at_file_start) std::sort(ids.begin(), ids.end());
    for (auto& [a, ids] : removed_after_anchor) std::sort(ids.begin(), ids.end());

    auto emit_removed = [&](int id) {
        auto it = before_hops.find(id);
        if (it == before_hops.end()) return;  // removed seeds are always sliced
        rep.entries.push_back({'-', before.statements[id].normalized, it->second});
    };

    std::set<std::string> after_paths;
    for (const auto& ar : after.file_ranges) {
        after_paths.insert(ar.path);
        auto start = removed_at_file_start.find(ar.path);
        if (start != removed_at_file_start.end())
            for (int r : start->second) emit_removed(r);
        for (int a = ar.first_stmt; a <= ar.last_stmt; ++a) {
            if (changeset.added.count(a)) {
                auto it = after_hops.find(a);
                if (it != after_hops.end())
                    rep.entries.push_back({'+', after.statements[a].normalized, it->second});
            } else {
                auto m = after_to_before.find(a);
                if (m != after_to_before.end()) {
                    auto ah = after_hops.find(a);
                    auto bh = before_hops.find(m->second);
                    if (ah != after_hops.end() || bh != before_hops.end()) {
                        int hop = ah != after_hops.end() ? ah->second : bh->second;
                        if (bh != before_hops.end()) hop = std::min(hop, bh->second);
                        rep.entries.push_back({' ', after.statements[a].normalized, hop});
                    }
                }
            }
            auto anchored = removed_after_anchor.find(a);
            if (anchored != removed_after_anchor.end())
                for (int r : anchored->second) emit_removed(r);
        }
    }
    // files deleted by the commit
    for (const auto& br : before.file_ranges) {
        if (after_paths.count(br.path)) continue;
        auto start = removed_at_file_start.find(br.path);
        if (start != removed_at_file_start.end())
            for (int r : start->second) emit_removed(r);
    }

    return truncate(std::move(rep), options.token_budget);
}

}  // namespace changectx
