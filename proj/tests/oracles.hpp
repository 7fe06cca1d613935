#pragma once

// Independent reference implementations used as test oracles. These deliberately
// take a different computational route from the library (dense vectors, literal
// case analysis, long-double accumulation) so agreement is meaningful.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semfact/label.hpp"
#include "semfact/tokenizer.hpp"

namespace oracles {

// Dense brute-force TF-IDF cosine scores of every segment against the claim:
// tf = count / length, idf = ln((1+N)/(1+df)) + 1, L2 normalization, dot product.
inline std::vector<double> tfidf_scores(const std::vector<std::string>& segments,
                                        const std::string& claim,
                                        const semfact::Tokenizer& tokenizer) {
    std::vector<std::vector<std::string>> seg_tokens;
    seg_tokens.reserve(segments.size());
    std::set<std::string> vocab_set;
    for (const std::string& s : segments) {
        seg_tokens.push_back(tokenizer.tokenize(s));
        for (const std::string& t : seg_tokens.back()) vocab_set.insert(t);
    }
    const std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());

    std::map<std::string, int> df;
    for (const auto& tokens : seg_tokens) {
        const std::set<std::string> unique(tokens.begin(), tokens.end());
        for (const std::string& t : unique) df[t] += 1;
    }
    const double n = static_cast<double>(segments.size());

    const auto dense_vector = [&](const std::vector<std::string>& tokens) {
        std::vector<double> v(vocab.size(), 0.0);
        if (tokens.empty()) return v;
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            const double count =
                static_cast<double>(std::count(tokens.begin(), tokens.end(), vocab[i]));
            if (count == 0.0) continue;
            const double idf = std::log((1.0 + n) / (1.0 + df[vocab[i]])) + 1.0;
            v[i] = (count / static_cast<double>(tokens.size())) * idf;
        }
        double norm = 0.0;
        for (const double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (double& x : v) x /= norm;
        return v;
    };

    const std::vector<double> claim_vec = dense_vector(tokenizer.tokenize(claim));
    std::vector<double> scores;
    scores.reserve(segments.size());
    for (const auto& tokens : seg_tokens) {
        const std::vector<double> seg_vec = dense_vector(tokens);
        double dot = 0.0;
        for (std::size_t i = 0; i < vocab.size(); ++i) dot += claim_vec[i] * seg_vec[i];
        scores.push_back(dot);
    }
    return scores;
}

// Index of the best rerank candidate under the brute-force scores (ties -> lowest).
inline int tfidf_best(const std::vector<std::string>& candidates, const std::string& claim,
                      const semfact::Tokenizer& tokenizer) {
    const std::vector<double> scores = tfidf_scores(candidates, claim, tokenizer);
    int best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = static_cast<int>(i);
    return best;
}

// Literal transcription of the two-step decision rule over (p3, p2), written as
// stand-alone case analysis with 1-based label indices.
inline semfact::VerdictLabel two_step_rule(const std::array<double, 3>& p3,
                                           const std::array<double, 2>& p2) {
    int y3 = 1;
    double best3 = p3[0];
    for (int k = 1; k < 3; ++k) {
        if (p3[k] > best3) {
            best3 = p3[k];
            y3 = k + 1;
        }
    }
    const int y2 = p2[1] > p2[0] ? 3 : 2;  // ties favor SUPPORTED
    const double v3_max = std::max({p3[0], p3[1], p3[2]});
    const double v2_max = std::max(p2[0], p2[1]);

    int y_hat;
    if (y3 == 1) y_hat = y3;
    else if (v3_max > v2_max) y_hat = y3;
    else y_hat = y2;
    return semfact::verdict_from_index(y_hat);
}

// Long-double mean binary cross-entropy with the same 1e-7 clamp as the contract.
inline double bce_mean(const std::vector<int>& y, const std::vector<double>& p) {
    long double sum = 0.0L;
    for (std::size_t t = 0; t < y.size(); ++t) {
        long double pc = p[t];
        if (pc < 1e-7L) pc = 1e-7L;
        if (pc > 1.0L - 1e-7L) pc = 1.0L - 1e-7L;
        sum += -(static_cast<long double>(y[t]) * std::log(pc) +
                 (1.0L - static_cast<long double>(y[t])) * std::log(1.0L - pc));
    }
    return static_cast<double>(sum / static_cast<long double>(y.size()));
}

inline double focal_reference(const std::vector<double>& y, const std::vector<double>& p,
                              double gamma, const std::vector<double>& alpha) {
    long double sum = 0.0L;
    for (std::size_t k = 0; k < y.size(); ++k) {
        long double pc = p[k];
        if (pc < 1e-7L) pc = 1e-7L;
        if (pc > 1.0L - 1e-7L) pc = 1.0L - 1e-7L;
        sum += -static_cast<long double>(alpha[k]) * static_cast<long double>(y[k]) *
               std::pow(1.0L - pc, static_cast<long double>(gamma)) * std::log(pc);
    }
    return static_cast<double>(sum);
}

}  // namespace oracles
