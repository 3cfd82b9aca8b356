#include "changectx/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace changectx {

MessageTokens tokenize_message(std::string_view text) {
    MessageTokens out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.tokens.push_back(cur);
            cur.clear();
        }
    };
    for (char raw : text) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (std::isspace(c)) {
            flush();
        } else if (std::isalnum(c) || raw == '_' || c >= 0x80) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
            out.tokens.push_back(std::string(1, raw));
        }
    }
    flush();
    return out;
}

double bleu4(const MessageTokens& candidate, const MessageTokens& reference) {
    const auto& cand = candidate.tokens;
    const auto& ref = reference.tokens;
    if (cand.empty() || ref.empty()) return 0.0;

    double log_sum = 0.0;
    for (int n = 1; n <= 4; ++n) {
        std::map<std::vector<std::string>, int> ref_counts;
        for (size_t i = 0; n <= static_cast<int>(ref.size()) && i + n <= ref.size(); ++i)
            ++ref_counts[std::vector<std::string>(ref.begin() + i, ref.begin() + i + n)];
        long total = 0, matched = 0;
        for (size_t i = 0; n <= static_cast<int>(cand.size()) && i + n <= cand.size(); ++i) {
            std::vector<std::string> gram(cand.begin() + i, cand.begin() + i + n);
            ++total;
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end() && it->second > 0) {
                ++matched;
                --it->second;  // clipping
            }
        }
        double p;
        if (n == 1) {
            if (matched == 0) return 0.0;
            p = static_cast<double>(matched) / static_cast<double>(total);
        } else {
            p = (static_cast<double>(matched) + 1.0) / (static_cast<double>(total) + 1.0);
        }
        log_sum += 0.25 * std::log(p);
    }
    double bp = cand.size() < ref.size()
                    ? std::exp(1.0 - static_cast<double>(ref.size()) / cand.size())
                    : 1.0;
    return 100.0 * bp * std::exp(log_sum);
}

namespace {

int lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<int> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j)
            cur[j + 1] = a[i] == b[j] ? prev[j] + 1 : std::max(cur[j], prev[j + 1]);
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

double rouge_l(const MessageTokens& candidate, const MessageTokens& reference) {
    const auto& cand = candidate.tokens;
    const auto& ref = reference.tokens;
    if (cand.empty() || ref.empty()) return 0.0;
    int l = lcs_length(cand, ref);
    if (l == 0) return 0.0;
    double p = static_cast<double>(l) / cand.size();
    double r = static_cast<double>(l) / ref.size();
    constexpr double beta = 1.2;
    double b2 = beta * beta;
    return 100.0 * ((1.0 + b2) * r * p) / (r + b2 * p);
}

std::string stem(const std::string& word) {
    auto ends_with = [&](const std::string& w, const char* suffix) {
        size_t n = std::char_traits<char>::length(suffix);
        return w.size() >= n && w.compare(w.size() - n, n, suffix) == 0;
    };
    std::string w = word;
    // plural / 3rd person
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies") && w.size() > 4) {
        w.resize(w.size() - 3);
        w.push_back('y');
    } else if (ends_with(w, "es") && w.size() > 3 &&
               (ends_with(w.substr(0, w.size() - 2), "x") ||
                ends_with(w.substr(0, w.size() - 2), "s") ||
                ends_with(w.substr(0, w.size() - 2), "z") ||
                ends_with(w.substr(0, w.size() - 2), "ch") ||
                ends_with(w.substr(0, w.size() - 2), "sh"))) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() > 3) {
        w.resize(w.size() - 1);
    }
    // participles
    if (ends_with(w, "ing") && w.size() > 5) {
        w.resize(w.size() - 3);
    } else if (ends_with(w, "ed") && w.size() > 4) {
        w.resize(w.size() - 2);
    }
    return w;
}

double meteor(const MessageTokens& candidate, const MessageTokens& reference) {
    const auto& cand = candidate.tokens;
    const auto& ref = reference.tokens;
    if (cand.empty() || ref.empty()) return 0.0;

    // stage 1: exact matches, leftmost reference token first;
    // stage 2: stem matches over the residue
    std::vector<int> cand_to_ref(cand.size(), -1);
    std::vector<bool> ref_used(ref.size(), false);
    for (size_t i = 0; i < cand.size(); ++i)
        for (size_t j = 0; j < ref.size(); ++j)
            if (!ref_used[j] && cand[i] == ref[j]) {
                cand_to_ref[i] = static_cast<int>(j);
                ref_used[j] = true;
                break;
            }
    for (size_t i = 0; i < cand.size(); ++i) {
        if (cand_to_ref[i] >= 0) continue;
        std::string cs = stem(cand[i]);
        for (size_t j = 0; j < ref.size(); ++j)
            if (!ref_used[j] && cs == stem(ref[j])) {
                cand_to_ref[i] = static_cast<int>(j);
                ref_used[j] = true;
                break;
            }
    }

    int m = 0;
    for (int j : cand_to_ref)
        if (j >= 0) ++m;
    if (m == 0) return 0.0;

    double p = static_cast<double>(m) / cand.size();
    double r = static_cast<double>(m) / ref.size();
    double fmean = 10.0 * p * r / (r + 9.0 * p);

    // chunks: maximal runs aligned contiguously in both strings
    int chunks = 0;
    int prev_ref = -2;
    for (size_t i = 0; i < cand.size(); ++i) {
        int j = cand_to_ref[i];
        if (j < 0) {
            prev_ref = -2;
            continue;
        }
        if (j != prev_ref + 1) ++chunks;
        prev_ref = j;
    }

    bool total_contiguous = chunks == 1 && m == static_cast<int>(cand.size()) &&
                            m == static_cast<int>(ref.size());
    double penalty = total_contiguous
                         ? 0.0
                         : 0.5 * std::pow(static_cast<double>(chunks) / m, 3.0);
    return 100.0 * fmean * (1.0 - penalty);
}

MetricScores score_pair(const MessageTokens& candidate, const MessageTokens& reference) {
    return {bleu4(candidate, reference), rouge_l(candidate, reference),
            meteor(candidate, reference)};
}

void MetricReport::finalize() {
    mean = {};
    if (per_example.empty()) return;
    for (const auto& s : per_example) {
        mean.bleu4 += s.bleu4;
        mean.rouge_l += s.rouge_l;
        mean.meteor += s.meteor;
    }
    mean.bleu4 /= per_example.size();
    mean.rouge_l /= per_example.size();
    mean.meteor /= per_example.size();
}

}  // namespace changectx
