#include "changectx/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace changectx {

AnalyzedCommit analyze_commit(const std::vector<FileChange>& files, Diagnostics* diags) {
    AnalyzedCommit out;
    std::vector<std::pair<std::string, std::string>> before_files, after_files;
    for (const auto& f : files) {
        before_files.emplace_back(f.path, f.before);
        after_files.emplace_back(f.path, f.after);
    }
    out.before = parse_version(VersionLabel::Before, before_files, diags);
    out.after = parse_version(VersionLabel::After, after_files, diags);
    out.before_pdg = build_pdg(out.before, diags);
    out.after_pdg = build_pdg(out.after, diags);
    out.changes = align_versions(out.before, out.after);
    return out;
}

int changed_statement_count(const AnalyzedCommit& commit) {
    return static_cast<int>(commit.changes.added.size() + commit.changes.removed.size());
}

std::optional<ContextEncodedRepresentation> encode_record(const CommitRecord& record,
                                                          const EncodeOptions& options,
                                                          Diagnostics* diags) {
    AnalyzedCommit commit = analyze_commit(record.files, diags);
    if (commit.changes.added.empty() && commit.changes.removed.empty()) {
        diag(diags, "empty change: " + record.commit_id);
        return std::nullopt;
    }
    return encode_change(commit.before, commit.before_pdg, commit.after, commit.after_pdg,
                         commit.changes, options, diags);
}

CommitRecord build_record(const std::string& repo, const RawCommit& raw,
                          const FilterLimits& limits, Diagnostics* diags) {
    CommitRecord record;
    record.repo = repo;
    record.commit_id = raw.id;
    record.message_raw = raw.message;
    record.message_clean = clean_message(raw.message);
    record.files = raw.files;
    AnalyzedCommit commit = analyze_commit(raw.files, diags);
    record.changed_statement_count = changed_statement_count(commit);
    record.verdict = filter_commit(record, limits);
    return record;
}

std::vector<CommitRecord> mine_corpus(const std::vector<std::string>& repo_paths,
                                      const FilterLimits& limits, Diagnostics* diags) {
    std::vector<CommitRecord> records;
    for (const auto& path : repo_paths) {
        auto commits = mine_repo(path, diags);
        if (!commits) continue;  // not a repository; already diagnosed
        std::string name = repo_name(path);
        for (const auto& raw : *commits) records.push_back(build_record(name, raw, limits, diags));
    }
    return records;
}

std::vector<EvalExample> encode_examples(const std::vector<CommitRecord>& records,
                                         const std::vector<size_t>& indices,
                                         const EncodeOptions& options, Diagnostics* diags) {
    std::vector<EvalExample> examples;
    for (size_t i : indices) {
        const CommitRecord& r = records[i];
        if (!r.verdict.kept) continue;
        auto rep = encode_record(r, options, diags);
        if (!rep) continue;
        EvalExample e;
        e.representation = render(*rep);
        e.reference = r.message_clean;
        e.changed_statements = r.changed_statement_count;
        examples.push_back(std::move(e));
    }
    return examples;
}

bool atomic_write(const std::string& path, const std::string& contents, std::string* error) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            if (error) *error = "cannot open " + tmp.string();
            return false;
        }
        out << contents;
        out.flush();
        if (!out) {
            if (error) *error = "write failed: " + tmp.string();
            return false;
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        if (error) *error = "rename failed: " + ec.message();
        std::remove(tmp.string().c_str());
        return false;
    }
    return true;
}

}  // namespace changectx
