#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace changectx {

/// Lowercased word tokens; punctuation split into separate tokens.
struct MessageTokens {
    std::vector<std::string> tokens;
};

MessageTokens tokenize_message(std::string_view text);

/// Sentence-level BLEU-4, percent scale. Uniform 1/4 weights over n=1..4,
/// clipped n-gram precision with add-one smoothing for n >= 2, brevity
/// penalty exp(1 - |ref|/|cand|) for short candidates.
double bleu4(const MessageTokens& candidate, const MessageTokens& reference);

/// ROUGE-L F-measure, percent scale, with recall-weighted beta = 1.2.
double rouge_l(const MessageTokens& candidate, const MessageTokens& reference);

/// METEOR, percent scale: exact then stemmed unigram alignment,
/// Fmean = 10PR/(R+9P), fragmentation penalty 0.5*(chunks/matches)^3.
/// A perfect contiguous total alignment carries no penalty.
double meteor(const MessageTokens& candidate, const MessageTokens& reference);

/// Light suffix-stripping stemmer used by the METEOR stage.
std::string stem(const std::string& word);

struct MetricScores {
    double bleu4 = 0.0;
    double rouge_l = 0.0;
    double meteor = 0.0;
};

MetricScores score_pair(const MessageTokens& candidate, const MessageTokens& reference);

/// Per-example scores plus their arithmetic means.
struct MetricReport {
    std::vector<MetricScores> per_example;
    MetricScores mean;

    void finalize();  // recomputes mean from per_example
};

}  // namespace changectx
