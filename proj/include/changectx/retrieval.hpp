#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "changectx/corpus.hpp"
#include "changectx/metrics.hpp"

namespace changectx {

/// Sparse bag-of-words term counts over representation tokens ('+'/'-'
/// markers included).
struct BowVector {
    std::map<std::string, int> counts;

    double norm() const;
};

/// Whitespace tokenization with term counting.
BowVector vectorize(const std::string& representation_text);

/// Query-time variant: terms outside the training vocabulary are ignored.
BowVector vectorize_query(const std::string& representation_text,
                          const std::set<std::string>& vocabulary);

double cosine(const BowVector& a, const BowVector& b);

struct RetrievalEntry {
    BowVector vec;
    std::string message;
};

struct RetrievalIndex {
    std::vector<RetrievalEntry> entries;
    std::set<std::string> vocabulary;  // built from the training split only
};

RetrievalIndex build_index(const std::vector<std::pair<std::string, std::string>>&
                               representation_message_pairs);

/// Message of the entry with maximal cosine similarity; ties break to the
/// lowest index. Empty corpus yields nullopt.
std::optional<std::string> nearest(const BowVector& query, const RetrievalIndex& index);

// --- evaluation -----------------------------------------------------------

struct EvalExample {
    std::string representation;
    std::string reference;
    int changed_statements = 0;
};

struct EvalRow {
    std::string label;
    int examples = 0;
    MetricScores mean;
};

struct EvalReport {
    MetricReport overall;
    std::vector<EvalRow> buckets;  // changed-statement buckets [1,5], (5,10], (10,15], (15,inf)
};

/// Retrieves the nearest training message for every test example and
/// scores it against the reference with all three metrics.
EvalReport evaluate_retrieval(const std::vector<EvalExample>& train,
                              const std::vector<EvalExample>& test);

/// Chronological per-repo split: first 80% train, next 10% validation,
/// rest test (ratios configurable). Indices refer to `records`.
struct SplitRatios {
    double train = 0.8;
    double valid = 0.1;
};

struct CorpusSplit {
    std::vector<size_t> train, valid, test;
};

CorpusSplit split_chronological(const std::vector<CommitRecord>& records,
                                const SplitRatios& ratios = {});

const char* bucket_label(int changed_statements);

}  // namespace changectx
