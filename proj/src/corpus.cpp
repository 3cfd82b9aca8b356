#include "changectx/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace changectx {

namespace {

using nlohmann::json;

const std::regex& url_re() {
    static const std::regex re(R"(https?://\S+)");
    return re;
}
const std::regex& issue_re() {
    static const std::regex re(R"(#\d+)");
    return re;
}
const std::regex& hash_re() {
    // standalone hex blobs of 7..40 chars (commit ids)
    static const std::regex re(R"(\b[0-9a-f]{7,40}\b)");
    return re;
}

std::string collapse_ws(const std::string& text) {
    std::string out;
    bool in_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string clean_message(const std::string& raw) {
    // URLs first, so their dots do not end the sentence early
    std::string text = std::regex_replace(raw, url_re(), " ");
    size_t cut = text.find_first_of(".!?\n");
    if (cut != std::string::npos) text.resize(cut);
    text = std::regex_replace(text, issue_re(), " ");
    text = std::regex_replace(text, hash_re(), " ");
    return collapse_ws(text);
}

int word_count(const std::string& text) {
    int count = 0;
    bool in_word = false;
    for (char c : text) {
        bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!space && !in_word) ++count;
        in_word = !space;
    }
    return count;
}

bool is_commit_verb(const std::string& token) {
    static const std::unordered_set<std::string> verbs = {
        "add",      "adjust",   "allow",    "apply",     "avoid",     "bump",
        "change",   "check",    "clarify",  "clean",     "cleanup",   "clear",
        "convert",  "correct",  "create",   "deprecate", "disable",   "document",
        "downgrade", "drop",    "enable",   "enforce",   "enhance",   "ensure",
        "expose",   "extend",   "extract",  "fix",       "guard",     "handle",
        "hide",     "ignore",   "implement", "improve",  "include",   "increase",
        "inline",   "introduce", "log",     "make",      "mark",      "merge",
        "migrate",  "move",     "optimize", "prevent",   "reduce",    "refactor",
        "register", "remove",   "rename",   "reorder",   "replace",   "report",
        "require",  "resolve",  "restore",  "rework",    "rewrite",   "set",
        "simplify", "skip",     "sort",     "split",     "stop",      "support",
        "suppress", "switch",   "throw",    "tighten",   "track",     "treat",
        "tweak",    "unify",    "update",   "upgrade",   "use",       "validate",
        "verify",   "wrap",
    };
    std::string t;
    for (char c : token) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (verbs.count(t)) return true;
    // 3rd-person forms
    if (t.size() > 2 && t.back() == 's') {
        std::string base = t.substr(0, t.size() - 1);
        if (verbs.count(base)) return true;
        if (t.size() > 3 && t.compare(t.size() - 2, 2, "es") == 0 &&
            verbs.count(t.substr(0, t.size() - 2)))
            return true;
    }
    return false;
}

Verdict filter_commit(const CommitRecord& record, const FilterLimits& limits) {
    if (record.is_merge) return Verdict::drop("merge");
    std::string first_token;
    {
        std::istringstream is(record.message_clean);
        is >> first_token;
        std::transform(first_token.begin(), first_token.end(), first_token.begin(),
                       [](unsigned char c) { return std::tolower(c); });
    }
    if (first_token == "revert" || first_token == "rollback") return Verdict::drop("rollback");
    if (record.changed_statement_count == 0) return Verdict::drop("empty-change");
    if (record.changed_statement_count > limits.max_changed_statements)
        return Verdict::drop("too-many-changes");
    int words = word_count(record.message_clean);
    if (words < limits.min_words) return Verdict::drop("too-short");
    if (words > limits.max_words) return Verdict::drop("too-long");
    if (!is_commit_verb(first_token)) return Verdict::drop("non-verb-first");
    return Verdict::keep();
}

std::string record_to_json_line(const CommitRecord& record) {
    json j;
    j["repo"] = record.repo;
    j["commit_id"] = record.commit_id;
    j["message_raw"] = record.message_raw;
    j["message_clean"] = record.message_clean;
    json files = json::array();
    for (const auto& f : record.files)
        files.push_back({{"path", f.path}, {"before", f.before}, {"after", f.after}});
    j["files"] = std::move(files);
    j["changed_statement_count"] = record.changed_statement_count;
    j["is_merge"] = record.is_merge;
    j["verdict"] = record.verdict.kept ? "kept" : "dropped:" + record.verdict.drop_reason;
    if (record.representation) j["representation"] = *record.representation;
    return j.dump();
}

std::optional<CommitRecord> record_from_json_line(const std::string& line) {
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    try {
        CommitRecord r;
        r.repo = j.at("repo").get<std::string>();
        r.commit_id = j.at("commit_id").get<std::string>();
        r.message_raw = j.at("message_raw").get<std::string>();
        r.message_clean = j.at("message_clean").get<std::string>();
        for (const auto& f : j.at("files")) {
            r.files.push_back({f.at("path").get<std::string>(), f.at("before").get<std::string>(),
                               f.at("after").get<std::string>()});
        }
        r.changed_statement_count = j.at("changed_statement_count").get<int>();
        r.is_merge = j.value("is_merge", false);
        std::string verdict = j.at("verdict").get<std::string>();
        if (verdict == "kept") {
            r.verdict = Verdict::keep();
        } else if (verdict.rfind("dropped:", 0) == 0) {
            r.verdict = Verdict::drop(verdict.substr(8));
        } else {
            return std::nullopt;
        }
        if (j.contains("representation"))
            r.representation = j.at("representation").get<std::string>();
        return r;
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

bool write_corpus(const std::string& path, const std::vector<CommitRecord>& records,
                  std::string* error) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        if (error) *error = "cannot open " + path + " for writing";
        return false;
    }
    for (const auto& r : records) out << record_to_json_line(r) << '\n';
    out.flush();
    if (!out) {
        if (error) *error = "write failed: " + path;
        return false;
    }
    return true;
}

std::vector<CommitRecord> read_corpus(const std::string& path, ReadStats* stats,
                                      std::string* error) {
    std::vector<CommitRecord> records;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (error) *error = "cannot open " + path;
        return records;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto rec = record_from_json_line(line);
        if (rec) {
            records.push_back(std::move(*rec));
            if (stats) ++stats->records;
        } else if (stats) {
            ++stats->skipped_lines;
        }
    }
    return records;
}

CorpusStats corpus_stats(const std::vector<CommitRecord>& records) {
    CorpusStats stats;
    for (const auto& r : records) {
        if (!r.verdict.kept) continue;
        auto& row = stats.per_repo[r.repo];
        ++row.commits;
        row.changed_statements += r.changed_statement_count;
        ++stats.total_commits;
        stats.total_changed += r.changed_statement_count;
    }
    return stats;
}

std::string format_stats_table(const CorpusStats& stats) {
    std::ostringstream os;
    os << "repo\tcommits\tchanged\tchanged/commit\n";
    for (const auto& [repo, row] : stats.per_repo) {
        double mean = row.commits ? static_cast<double>(row.changed_statements) / row.commits : 0;
        os << repo << '\t' << row.commits << '\t' << row.changed_statements << '\t';
        os.precision(2);
        os << std::fixed << mean << '\n';
        os.unsetf(std::ios::fixed);
        os.precision(6);
    }
    os << "total\t" << stats.total_commits << '\t' << stats.total_changed << '\t';
    os.precision(2);
    os << std::fixed << stats.mean_changes_per_commit() << '\n';
    return os.str();
}

}  // namespace changectx
