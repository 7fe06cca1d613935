#include "semfact/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "semfact/errors.hpp"

namespace semfact {

std::vector<TokenScores> EvidenceScorer::batch_score(const std::string& claim,
                                                     const SegmentBatch& batch) const {
    std::vector<TokenScores> out;
    out.reserve(batch.subcontexts.size());
    for (const SubContext& sc : batch.subcontexts) out.push_back(score(claim, sc));
    return out;
}

double token_probability(const std::vector<double>& h,
                         const std::vector<std::vector<double>>& w1,
                         const std::vector<std::vector<double>>& w2) {
    const std::size_t d = h.size();
    const std::size_t d1 = w1.size();
    for (const auto& row : w1)
        if (row.size() != d) throw DimensionMismatch("w1 rows must have the same length as h");
    if (w2.size() != 1 || w2[0].size() != d1)
        throw DimensionMismatch("w2 must be a 1 x " + std::to_string(d1) + " matrix");

    double z = 0.0;
    for (std::size_t r = 0; r < d1; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) acc += w1[r][c] * h[c];
        if (acc > 0.0) z += w2[0][r] * acc;  // ReLU
    }
    return 1.0 / (1.0 + std::exp(-z));
}

double rationale_tagging_loss(const std::vector<int>& labels, const std::vector<double>& probs) {
    if (labels.size() != probs.size())
        throw LengthMismatch("labels and probabilities must have the same length");
    if (labels.empty()) throw LengthMismatch("at least one token is required");

    constexpr double kEps = 1e-7;
    double sum = 0.0;
    for (std::size_t t = 0; t < labels.size(); ++t) {
        if (labels[t] != 0 && labels[t] != 1) throw Error("labels must be 0 or 1");
        const double p = std::clamp(probs[t], kEps, 1.0 - kEps);
        sum += labels[t] == 1 ? -std::log(p) : -std::log(1.0 - p);
    }
    return sum / static_cast<double>(labels.size());
}

std::optional<TokenSpan> extract_spans(const TokenScores& scores, double threshold) {
    if (scores.span) return scores.span;

    int best_start = -1, best_len = 0;
    int run_start = -1;
    const int n = static_cast<int>(scores.probs.size());
    for (int t = 0; t <= n; ++t) {
        const bool qualifies = t < n && scores.probs[t] >= threshold;
        if (qualifies && run_start < 0) run_start = t;
        if (!qualifies && run_start >= 0) {
            const int len = t - run_start;
            if (len > best_len) {  // strict: ties keep the earliest run
                best_len = len;
                best_start = run_start;
            }
            run_start = -1;
        }
    }
    if (best_start < 0) return std::nullopt;

    TokenSpan span;
    span.start = best_start;
    span.end = best_start + best_len - 1;
    double mean = 0.0;
    for (int t = span.start; t <= span.end; ++t) mean += scores.probs[t];
    span.confidence = mean / best_len;
    return span;
}

const Sentence& map_span_to_sentence(const TokenSpan& span, const SubContext& subcontext) {
    const int total = subcontext.token_count();
    if (span.start < 0 || span.end < span.start || span.end >= total)
        throw SpanOutOfRange("span [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                             "] outside subcontext of " + std::to_string(total) + " tokens");

    int best = 0, best_overlap = -1;
    int offset = 0;
    for (std::size_t k = 0; k < subcontext.sentences.size(); ++k) {
        const int count = subcontext.sentences[k].token_count();
        const int lo = std::max(span.start, offset);
        const int hi = std::min(span.end, offset + count - 1);
        const int overlap = hi - lo + 1;
        if (overlap > best_overlap) {  // strict: ties go to the earlier sentence
            best_overlap = overlap;
            best = static_cast<int>(k);
        }
        offset += count;
    }
    return subcontext.sentences[best];
}

Sentence resolve_segment_evidence(const Segment& segment, const std::string& claim,
                                  const Tokenizer& tokenizer) {
    if (segment.sentences.empty()) throw Error("segment has no sentences");
    if (segment.sentences.size() == 1) return segment.sentences.front();
    std::vector<std::string> texts;
    texts.reserve(segment.sentences.size());
    for (const Sentence& s : segment.sentences) texts.push_back(s.text);
    return segment.sentences[rerank(texts, claim, tokenizer)];
}

ArbitrationOutcome arbitrate(const std::vector<SpanCandidate>& candidates, const std::string& claim,
                             const std::vector<ScoredSegment>& fallback_ranking,
                             const std::vector<Segment>& segments, const Tokenizer& tokenizer) {
    if (fallback_ranking.empty()) throw Error("arbitrate requires a non-empty fallback ranking");

    // distinct candidate sentences in first-appearance order
    std::vector<Sentence> distinct;
    std::set<int> seen;
    for (const SpanCandidate& cand : candidates) {
        if (seen.insert(cand.sentence.index).second) distinct.push_back(cand.sentence);
    }

    if (distinct.empty()) {
        const Segment& top = segments.at(fallback_ranking.front().segment_index);
        return {resolve_segment_evidence(top, claim, tokenizer), ArbitrationBranch::TFIDF_FALLBACK};
    }
    if (distinct.size() == 1) return {distinct.front(), ArbitrationBranch::QATC_SINGLE};

    std::vector<std::string> texts;
    texts.reserve(distinct.size());
    for (const Sentence& s : distinct) texts.push_back(s.text);
    return {distinct[rerank(texts, claim, tokenizer)], ArbitrationBranch::QATC_RERANKED};
}

void MockEvidenceScorer::set_probability(const std::string& claim, const std::string& sentence_text,
                                         double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("mock probability must be in [0, 1]");
    probs_[{claim, sentence_text}] = p;
}

TokenScores MockEvidenceScorer::score(const std::string& claim, const SubContext& subcontext) const {
    score_calls_.fetch_add(1);
    {
        std::lock_guard<std::mutex> lock(log_mutex_);
        call_log_.push_back(claim + "\x1f" + subcontext.text);
    }
    TokenScores out;
    out.probs.reserve(subcontext.tokens.size());
    for (const Sentence& s : subcontext.sentences) {
        const auto it = probs_.find({claim, s.text});
        const double p = it == probs_.end() ? 0.0 : it->second;
        out.probs.insert(out.probs.end(), s.tokens.size(), p);
    }
    return out;
}

std::vector<TokenScores> MockEvidenceScorer::batch_score(const std::string& claim,
                                                         const SegmentBatch& batch) const {
    batch_calls_.fetch_add(1);
    return EvidenceScorer::batch_score(claim, batch);
}

std::vector<std::string> MockEvidenceScorer::call_log() const {
    std::lock_guard<std::mutex> lock(log_mutex_);
    return call_log_;
}

void MockEvidenceScorer::reset_counters() {
    std::lock_guard<std::mutex> lock(log_mutex_);
    call_log_.clear();
    score_calls_.store(0);
    batch_calls_.store(0);
}

}  // namespace semfact
