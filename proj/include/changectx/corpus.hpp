#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace changectx {

struct FileChange {
    std::string path;
    std::string before;  // empty when the file was added
    std::string after;   // empty when the file was deleted
};

struct Verdict {
    bool kept = true;
    std::string drop_reason;  // set when !kept

    static Verdict keep() { return {true, {}}; }
    static Verdict drop(std::string reason) { return {false, std::move(reason)}; }
};

/// One mined commit, persisted as a single JSON line.
struct CommitRecord {
    std::string repo;
    std::string commit_id;
    std::string message_raw;
    std::string message_clean;
    std::vector<FileChange> files;
    int changed_statement_count = 0;
    bool is_merge = false;
    Verdict verdict = Verdict::keep();
    std::optional<std::string> representation;
};

/// First sentence of the raw message with issue ids, commit hashes and
/// URLs removed and whitespace collapsed.
std::string clean_message(const std::string& raw);

int word_count(const std::string& text);

/// Message/size quality filters. Drop reasons, in check order: "merge",
/// "rollback", "empty-change", "too-many-changes", "too-short",
/// "too-long", "non-verb-first".
struct FilterLimits {
    int min_words = 5;
    int max_words = 150;
    int max_changed_statements = 20;
};

Verdict filter_commit(const CommitRecord& record, const FilterLimits& limits = {});

/// True when `token` is an imperative or 3rd-person form of a bundled
/// commit verb.
bool is_commit_verb(const std::string& token);

// --- persistence (line-delimited JSON, UTF-8) ---

struct ReadStats {
    size_t records = 0;
    size_t skipped_lines = 0;
};

bool write_corpus(const std::string& path, const std::vector<CommitRecord>& records,
                  std::string* error = nullptr);
std::vector<CommitRecord> read_corpus(const std::string& path, ReadStats* stats = nullptr,
                                      std::string* error = nullptr);

std::string record_to_json_line(const CommitRecord& record);
std::optional<CommitRecord> record_from_json_line(const std::string& line);

/// Per-repo corpus statistics over kept records.
struct RepoStats {
    int commits = 0;
    long changed_statements = 0;
};

struct CorpusStats {
    std::map<std::string, RepoStats> per_repo;
    int total_commits = 0;
    long total_changed = 0;

    double mean_changes_per_commit() const {
        return total_commits ? static_cast<double>(total_changed) / total_commits : 0.0;
    }
};

CorpusStats corpus_stats(const std::vector<CommitRecord>& records);
std::string format_stats_table(const CorpusStats& stats);

}  // namespace changectx
