#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semfact/segmenter.hpp"
#include "semfact/tfidf.hpp"

namespace semfact {

// Inclusive token indices within one subcontext.
struct TokenSpan {
    int start = 0;
    int end = 0;
    double confidence = 0.0;
};

// Per-token evidence probabilities for one subcontext. A backend that already
// extracts answer spans may return one directly; it then takes precedence over the
// probabilities.
struct TokenScores {
    std::vector<double> probs;
    std::optional<TokenSpan> span;
};

// Evidence scorer contract. batch_score must elementwise-equal mapping score over the
// batch's subcontexts; the default implementation guarantees that by construction, so
// overrides only need to preserve it.
class EvidenceScorer {
public:
    virtual ~EvidenceScorer() = default;
    virtual TokenScores score(const std::string& claim, const SubContext& subcontext) const = 0;
    virtual std::vector<TokenScores> batch_score(const std::string& claim, const SegmentBatch& batch) const;
};

// p = sigmoid(w2 . relu(w1 h)). The head carries no bias terms. w1 is d1 x d, w2 is
// 1 x d1, h has length d; throws DimensionMismatch otherwise. Output is in (0, 1).
double token_probability(const std::vector<double>& h,
                         const std::vector<std::vector<double>>& w1,
                         const std::vector<std::vector<double>>& w2);

// Mean binary cross-entropy over tokens, with probabilities clamped to
// [1e-7, 1 - 1e-7]. labels must be 0/1 and the lists equally long and non-empty.
double rationale_tagging_loss(const std::vector<int>& labels, const std::vector<double>& probs);

// A span provided by the backend wins. Otherwise: the longest maximal run of tokens
// with p >= threshold (ties -> earliest run), with confidence set to the mean
// probability over the run. No qualifying token means no evidence in this subcontext.
std::optional<TokenSpan> extract_spans(const TokenScores& scores, double threshold = 0.5);

// Sentence covering the majority of the span's tokens (ties -> earlier sentence).
// Throws SpanOutOfRange when the span leaves the subcontext's token range.
const Sentence& map_span_to_sentence(const TokenSpan& span, const SubContext& subcontext);

struct SpanCandidate {
    int subcontext_index = 0;
    Sentence sentence;
    TokenSpan raw_span;
    double confidence = 0.0;
};

enum class ArbitrationBranch { TFIDF_FALLBACK, QATC_SINGLE, QATC_RERANKED };

struct ArbitrationOutcome {
    Sentence sentence;
    ArbitrationBranch branch = ArbitrationBranch::TFIDF_FALLBACK;
};

// Picks the evidence sentence inside a possibly merged segment: a single-sentence
// segment yields that sentence, a merged one is re-ranked against the claim.
Sentence resolve_segment_evidence(const Segment& segment, const std::string& claim,
                                  const Tokenizer& tokenizer);

// Second-stage decision over span candidates. Zero distinct sentences -> the
// fallback ranking's top segment; exactly one -> selected directly; two or more ->
// TF-IDF rerank over the distinct candidate sentences. Distinctness is by sentence
// index, so repeats of one sentence across subcontexts still count as one answer.
ArbitrationOutcome arbitrate(const std::vector<SpanCandidate>& candidates, const std::string& claim,
                             const std::vector<ScoredSegment>& fallback_ranking,
                             const std::vector<Segment>& segments, const Tokenizer& tokenizer);

// Deterministic test backend. Every token of a sentence receives the probability
// configured for (claim, sentence text); unknown pairs score 0. Calls are logged so
// tests can compare sequential and batched scoring schedules.
class MockEvidenceScorer final : public EvidenceScorer {
public:
    void set_probability(const std::string& claim, const std::string& sentence_text, double p);

    TokenScores score(const std::string& claim, const SubContext& subcontext) const override;
    std::vector<TokenScores> batch_score(const std::string& claim, const SegmentBatch& batch) const override;

    int score_calls() const { return score_calls_.load(); }
    int batch_calls() const { return batch_calls_.load(); }
    std::vector<std::string> call_log() const;
    void reset_counters();

private:
    std::map<std::pair<std::string, std::string>, double> probs_;
    mutable std::mutex log_mutex_;
    mutable std::vector<std::string> call_log_;
    mutable std::atomic<int> score_calls_{0};
    mutable std::atomic<int> batch_calls_{0};
};

}  // namespace semfact
