#pragma once

#include <optional>
#include <string>
#include <vector>

#include "changectx/change_differ.hpp"
#include "changectx/context_encoder.hpp"
#include "changectx/corpus.hpp"
#include "changectx/miner.hpp"
#include "changectx/pdg.hpp"
#include "changectx/run_config.hpp"

namespace changectx {

/// Everything the encoder needs for one commit: both parsed versions,
/// their PDGs and the statement alignment.
struct AnalyzedCommit {
    SourceVersion before;
    SourceVersion after;
    ProgramDependenceGraph before_pdg;
    ProgramDependenceGraph after_pdg;
    ChangeSet changes;
};

AnalyzedCommit analyze_commit(const std::vector<FileChange>& files, Diagnostics* diags = nullptr);

/// |added| + |removed| of the alignment.
int changed_statement_count(const AnalyzedCommit& commit);

/// Parses, aligns, slices and renders one record's representation.
/// Returns nullopt (with a diagnostic) for empty changes.
std::optional<ContextEncodedRepresentation> encode_record(const CommitRecord& record,
                                                          const EncodeOptions& options,
                                                          Diagnostics* diags = nullptr);

/// Record assembly used by the mine command: cleans the message, counts
/// changed statements and applies the quality filters.
CommitRecord build_record(const std::string& repo, const RawCommit& raw,
                          const FilterLimits& limits, Diagnostics* diags = nullptr);

/// Mines every repository in the list. All records (kept and dropped) are
/// returned, in repo-list order then history order.
std::vector<CommitRecord> mine_corpus(const std::vector<std::string>& repo_paths,
                                      const FilterLimits& limits, Diagnostics* diags = nullptr);

/// Kept records turned into evaluation examples under `options`; records
/// whose change encodes empty are skipped with a diagnostic.
std::vector<EvalExample> encode_examples(const std::vector<CommitRecord>& records,
                                         const std::vector<size_t>& indices,
                                         const EncodeOptions& options,
                                         Diagnostics* diags = nullptr);

/// Writes a file atomically (temp file + rename).
bool atomic_write(const std::string& path, const std::string& contents,
                  std::string* error = nullptr);

}  // namespace changectx
