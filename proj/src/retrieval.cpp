#include "changectx/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace changectx {

double BowVector::norm() const {
    double sum = 0.0;
    for (const auto& [term, count] : counts) sum += static_cast<double>(count) * count;
    return std::sqrt(sum);
}

BowVector vectorize(const std::string& representation_text) {
    BowVector v;
    std::istringstream is(representation_text);
    std::string tok;
    while (is >> tok) ++v.counts[tok];
    return v;
}

BowVector vectorize_query(const std::string& representation_text,
                          const std::set<std::string>& vocabulary) {
    BowVector v;
    std::istringstream is(representation_text);
    std::string tok;
    while (is >> tok)
        if (vocabulary.count(tok)) ++v.counts[tok];
    return v;
}

double cosine(const BowVector& a, const BowVector& b) {
    double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    const BowVector& small = a.counts.size() <= b.counts.size() ? a : b;
    const BowVector& large = a.counts.size() <= b.counts.size() ? b : a;
    double dot = 0.0;
    for (const auto& [term, count] : small.counts) {
        auto it = large.counts.find(term);
        if (it != large.counts.end()) dot += static_cast<double>(count) * it->second;
    }
    return dot / (na * nb);
}

RetrievalIndex build_index(
    const std::vector<std::pair<std::string, std::string>>& representation_message_pairs) {
    RetrievalIndex index;
    for (const auto& [rep, message] : representation_message_pairs) {
        RetrievalEntry e;
        e.vec = vectorize(rep);
        e.message = message;
        for (const auto& [term, count] : e.vec.counts) index.vocabulary.insert(term);
        index.entries.push_back(std::move(e));
    }
    return index;
}

std::optional<std::string> nearest(const BowVector& query, const RetrievalIndex& index) {
    if (index.entries.empty()) return std::nullopt;
    size_t best = 0;
    double best_sim = -1.0;
    for (size_t i = 0; i < index.entries.size(); ++i) {
        double sim = cosine(query, index.entries[i].vec);
        if (sim > best_sim) {  // ties keep the lowest index
            best_sim = sim;
            best = i;
        }
    }
    return index.entries[best].message;
}

const char* bucket_label(int changed_statements) {
    if (changed_statements <= 5) return "From 1 to 5";
    if (changed_statements <= 10) return "From 5 to 10";
    if (changed_statements <= 15) return "From 10 to 15";
    return "Over 15";
}

EvalReport evaluate_retrieval(const std::vector<EvalExample>& train,
                              const std::vector<EvalExample>& test) {
    EvalReport report;
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(train.size());
    for (const auto& e : train) pairs.emplace_back(e.representation, e.reference);
    RetrievalIndex index = build_index(pairs);

    static const char* kLabels[] = {"From 1 to 5", "From 5 to 10", "From 10 to 15", "Over 15"};
    std::map<std::string, std::pair<int, MetricScores>> bucket_acc;
    for (const char* l : kLabels) bucket_acc[l] = {0, {}};

    for (const auto& e : test) {
        BowVector q = vectorize_query(e.representation, index.vocabulary);
        auto generated = nearest(q, index);
        MetricScores s;
        if (generated) {
            MessageTokens cand = tokenize_message(*generated);
            MessageTokens ref = tokenize_message(e.reference);
            s = score_pair(cand, ref);
        }
        report.overall.per_example.push_back(s);
        auto& [n, acc] = bucket_acc[bucket_label(e.changed_statements)];
        ++n;
        acc.bleu4 += s.bleu4;
        acc.rouge_l += s.rouge_l;
        acc.meteor += s.meteor;
    }
    report.overall.finalize();
    for (const char* l : kLabels) {
        auto& [n, acc] = bucket_acc[l];
        EvalRow row;
        row.label = l;
        row.examples = n;
        if (n > 0) {
            row.mean.bleu4 = acc.bleu4 / n;
            row.mean.rouge_l = acc.rouge_l / n;
            row.mean.meteor = acc.meteor / n;
        }
        report.buckets.push_back(std::move(row));
    }
    return report;
}

CorpusSplit split_chronological(const std::vector<CommitRecord>& records,
                                const SplitRatios& ratios) {
    CorpusSplit split;
    std::map<std::string, std::vector<size_t>> by_repo;
    std::vector<std::string> repo_order;
    for (size_t i = 0; i < records.size(); ++i) {
        auto [it, inserted] = by_repo.try_emplace(records[i].repo);
        if (inserted) repo_order.push_back(records[i].repo);
        it->second.push_back(i);
    }
    for (const auto& repo : repo_order) {
        const auto& ids = by_repo[repo];
        size_t n = ids.size();
        size_t n_train = static_cast<size_t>(ratios.train * n);
        size_t n_valid = static_cast<size_t>(ratios.valid * n);
        for (size_t k = 0; k < n; ++k) {
            if (k < n_train) split.train.push_back(ids[k]);
            else if (k < n_train + n_valid) split.valid.push_back(ids[k]);
            else split.test.push_back(ids[k]);
        }
    }
    return split;
}

}  // namespace changectx
