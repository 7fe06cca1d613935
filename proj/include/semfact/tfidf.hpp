#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semfact/tokenizer.hpp"

namespace semfact {

// Smoothed-idf TF-IDF with L2 normalization and cosine scoring:
//
//   tf(t, s) = count(t in s) / |s|
//   idf(t)   = ln((1 + N) / (1 + df(t))) + 1        (N = number of segments)
//
// idf is therefore always >= 1, and cosine scores of the non-negative weight vectors
// land in [0, 1]. The model is fit per record over the segments of one context.
struct TfidfModel {
    std::map<std::string, int> vocabulary;  // term -> column, assigned in sorted term order
    std::vector<double> idf;                // indexed by column
    int doc_count = 0;

    // Throws EmptyCorpus when segments is empty.
    static TfidfModel fit(const std::vector<std::string>& segments, const Tokenizer& tokenizer);

    std::optional<double> idf_of(std::string_view term) const;
};

struct ScoredSegment {
    int segment_index = 0;
    double score = 0.0;  // cosine similarity in [0, 1]
};

// Scores every segment against the claim; returns all of them in descending score
// order, ties broken by lower segment index. Claim terms outside the vocabulary are
// ignored; a claim with no in-vocabulary terms scores 0 everywhere.
std::vector<ScoredSegment> score_claim(const TfidfModel& model, const std::string& claim,
                                       const std::vector<std::string>& segments,
                                       const Tokenizer& tokenizer);

enum class RouteKind { EASY, HARD };

struct Route {
    RouteKind kind = RouteKind::HARD;
    std::optional<ScoredSegment> easy_evidence;  // present iff kind == EASY
};

// Strictly-greater test on the top-ranked score: top > threshold routes EASY.
// -infinity never routes HARD, +infinity never routes EASY.
Route route_by_threshold(const std::vector<ScoredSegment>& ranked, double threshold);

// Fits a fresh model over the candidates and returns the index of the best match
// against the claim (ties -> lowest original index).
int rerank(const std::vector<std::string>& candidates, const std::string& claim,
           const Tokenizer& tokenizer);

}  // namespace semfact
