#include "semfact/tfidf.hpp"

#include <algorithm>
#include <cmath>

#include "semfact/errors.hpp"

namespace semfact {

TfidfModel TfidfModel::fit(const std::vector<std::string>& segments, const Tokenizer& tokenizer) {
    if (segments.empty()) throw EmptyCorpus();

    // document frequency per term, in sorted term order
    std::map<std::string, int> df;
    for (const std::string& segment : segments) {
        std::map<std::string, int> seen;
        for (std::string& tok : tokenizer.tokenize(segment)) seen.emplace(std::move(tok), 1);
        for (const auto& [term, _] : seen) ++df[term];
    }

    TfidfModel model;
    model.doc_count = static_cast<int>(segments.size());
    model.idf.reserve(df.size());
    int column = 0;
    for (const auto& [term, count] : df) {
        model.vocabulary.emplace(term, column++);
        model.idf.push_back(std::log((1.0 + model.doc_count) / (1.0 + count)) + 1.0);
    }
    return model;
}

std::optional<double> TfidfModel::idf_of(std::string_view term) const {
    const auto it = vocabulary.find(std::string(term));
    if (it == vocabulary.end()) return std::nullopt;
    return idf[it->second];
}

namespace {

// L2-normalized sparse tf-idf vector as (column, weight) pairs in column order.
// tf is the raw count divided by the full token count (including out-of-vocabulary
// tokens); the scale cancels under cosine but keeps reported weights interpretable.
std::vector<std::pair<int, double>> vectorize(const TfidfModel& model,
                                              const std::vector<std::string>& tokens) {
    std::map<int, double> counts;
    for (const std::string& tok : tokens) {
        const auto it = model.vocabulary.find(tok);
        if (it != model.vocabulary.end()) counts[it->second] += 1.0;
    }
    std::vector<std::pair<int, double>> vec;
    vec.reserve(counts.size());
    if (tokens.empty()) return vec;

    const double total = static_cast<double>(tokens.size());
    double norm_sq = 0.0;
    for (const auto& [col, count] : counts) {
        const double w = (count / total) * model.idf[col];
        vec.emplace_back(col, w);
        norm_sq += w * w;
    }
    if (norm_sq > 0.0) {
        const double norm = std::sqrt(norm_sq);
        for (auto& [col, w] : vec) w /= norm;
    }
    return vec;
}

double sparse_dot(const std::vector<std::pair<int, double>>& a,
                  const std::vector<std::pair<int, double>>& b) {
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) ++i;
        else if (a[i].first > b[j].first) ++j;
        else dot += a[i++].second * b[j++].second;
    }
    return dot;
}

}  // namespace

std::vector<ScoredSegment> score_claim(const TfidfModel& model, const std::string& claim,
                                       const std::vector<std::string>& segments,
                                       const Tokenizer& tokenizer) {
    const auto claim_vec = vectorize(model, tokenizer.tokenize(claim));

    std::vector<ScoredSegment> ranked;
    ranked.reserve(segments.size());
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const auto seg_vec = vectorize(model, tokenizer.tokenize(segments[k]));
        double score = sparse_dot(claim_vec, seg_vec);
        score = std::clamp(score, 0.0, 1.0);
        ranked.push_back({static_cast<int>(k), score});
    }
    std::sort(ranked.begin(), ranked.end(), [](const ScoredSegment& a, const ScoredSegment& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.segment_index < b.segment_index;
    });
    return ranked;
}

Route route_by_threshold(const std::vector<ScoredSegment>& ranked, double threshold) {
    if (ranked.empty()) throw Error("route_by_threshold requires a non-empty ranking");
    if (ranked.front().score > threshold) return {RouteKind::EASY, ranked.front()};
    return {RouteKind::HARD, std::nullopt};
}

int rerank(const std::vector<std::string>& candidates, const std::string& claim,
           const Tokenizer& tokenizer) {
    if (candidates.empty()) throw Error("rerank requires at least one candidate");
    const TfidfModel model = TfidfModel::fit(candidates, tokenizer);
    const auto ranked = score_claim(model, claim, candidates, tokenizer);
    return ranked.front().segment_index;
}

}  // namespace semfact
