#include "changectx/change_differ.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace changectx {

namespace {

// One row of LCS lengths for a[lo..hi) against b[blo..bhi), left to right.
std::vector<int> lcs_row(const std::vector<int>& a, int alo, int ahi, const std::vector<int>& b,
                         int blo, int bhi, bool reversed) {
    int m = bhi - blo;
    std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
    for (int i = 0; i < ahi - alo; ++i) {
        int av = reversed ? a[ahi - 1 - i] : a[alo + i];
        for (int j = 0; j < m; ++j) {
            int bv = reversed ? b[bhi - 1 - j] : b[blo + j];
            cur[j + 1] = av == bv ? prev[j] + 1 : std::max(cur[j], prev[j + 1]);
        }
        std::swap(prev, cur);
    }
    return prev;
}

// Hirschberg's linear-space LCS reconstruction.
void lcs_rec(const std::vector<int>& a, int alo, int ahi, const std::vector<int>& b, int blo,
             int bhi, std::vector<std::pair<int, int>>& out) {
    if (alo >= ahi || blo >= bhi) return;
    if (ahi - alo == 1) {
        for (int j = blo; j < bhi; ++j)
            if (b[j] == a[alo]) {
                out.emplace_back(alo, j);
                return;
            }
        return;
    }
    int mid = (alo + ahi) / 2;
    std::vector<int> left = lcs_row(a, alo, mid, b, blo, bhi, false);
    std::vector<int> right = lcs_row(a, mid, ahi, b, blo, bhi, true);
    int best = -1, split = blo;
    for (int j = 0; j <= bhi - blo; ++j) {
        int total = left[j] + right[bhi - blo - j];
        if (total > best) {
            best = total;
            split = blo + j;
        }
    }
    lcs_rec(a, alo, mid, b, blo, split, out);
    lcs_rec(a, mid, ahi, b, split, bhi, out);
}

}  // namespace

std::vector<std::pair<int, int>> lcs_pairs(const std::vector<int>& a, const std::vector<int>& b) {
    // common prefix/suffix first; commits usually touch a small region
    int n = static_cast<int>(a.size()), m = static_cast<int>(b.size());
    int lo = 0;
    while (lo < n && lo < m && a[lo] == b[lo]) ++lo;
    int suffix = 0;
    while (suffix < n - lo && suffix < m - lo && a[n - 1 - suffix] == b[m - 1 - suffix]) ++suffix;

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < lo; ++i) pairs.emplace_back(i, i);
    lcs_rec(a, lo, n - suffix, b, lo, m - suffix, pairs);
    for (int i = suffix; i > 0; --i) pairs.emplace_back(n - i, m - i);
    return pairs;
}

ChangeSet align_versions(const SourceVersion& before, const SourceVersion& after) {
    ChangeSet cs;
    std::map<std::string, const FileRange*> after_files;
    for (const auto& r : after.file_ranges) after_files[r.path] = &r;

    std::set<std::string> seen;
    std::map<std::string, int> intern;
    auto key = [&](const std::string& text) {
        auto [it, inserted] = intern.emplace(text, static_cast<int>(intern.size()));
        return it->second;
    };

    for (const auto& br : before.file_ranges) {
        seen.insert(br.path);
        auto it = after_files.find(br.path);
        if (it == after_files.end()) {
            for (int id = br.first_stmt; id <= br.last_stmt; ++id) cs.removed.insert(id);
            continue;
        }
        const FileRange& ar = *it->second;
        std::vector<int> a, b;
        for (int id = br.first_stmt; id <= br.last_stmt; ++id)
            a.push_back(key(before.statements[id].normalized));
        for (int id = ar.first_stmt; id <= ar.last_stmt; ++id)
            b.push_back(key(after.statements[id].normalized));
        auto pairs = lcs_pairs(a, b);
        std::set<int> before_matched, after_matched;
        for (const auto& [i, j] : pairs) {
            cs.matched.insert({br.first_stmt + i, ar.first_stmt + j});
            before_matched.insert(i);
            after_matched.insert(j);
        }
        for (int i = 0; i < static_cast<int>(a.size()); ++i)
            if (!before_matched.count(i)) cs.removed.insert(br.first_stmt + i);
        for (int j = 0; j < static_cast<int>(b.size()); ++j)
            if (!after_matched.count(j)) cs.added.insert(ar.first_stmt + j);
    }
    for (const auto& ar : after.file_ranges) {
        if (seen.count(ar.path)) continue;
        for (int id = ar.first_stmt; id <= ar.last_stmt; ++id) cs.added.insert(id);
    }
    return cs;
}

}  // namespace changectx
