#include "semfact/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "semfact/errors.hpp"
#include "semfact/segmenter.hpp"
#include "semfact/tfidf.hpp"

namespace semfact {

std::string_view to_string(PipelineMode mode) {
    switch (mode) {
        case PipelineMode::FULL: return "full";
        case PipelineMode::FASTER: return "faster";
        case PipelineMode::TFIDF_ONLY_ER: return "tfidf-only";
        case PipelineMode::ONE_STEP_VC: return "one-step";
    }
    return "full";
}

std::optional<PipelineMode> pipeline_mode_from_string(std::string_view s) {
    if (s == "full") return PipelineMode::FULL;
    if (s == "faster") return PipelineMode::FASTER;
    if (s == "tfidf-only") return PipelineMode::TFIDF_ONLY_ER;
    if (s == "one-step") return PipelineMode::ONE_STEP_VC;
    return std::nullopt;
}

std::string_view to_string(EvidenceSource source) {
    switch (source) {
        case EvidenceSource::TFIDF: return "TFIDF";
        case EvidenceSource::QATC: return "QATC";
        case EvidenceSource::QATC_RERANKED: return "QATC_RERANKED";
        case EvidenceSource::TFIDF_FALLBACK: return "TFIDF_FALLBACK";
    }
    return "TFIDF";
}

void PipelineConfig::validate() const {
    if (token_budget < 1) throw Error("config: token_budget must be >= 1");
    if (batch_size < 1) throw Error("config: batch_size must be >= 1");
    if (parallelism < 1) throw Error("config: parallelism must be >= 1");
    if (overlap_sentences < 0) throw Error("config: overlap_sentences must be >= 0");
    if (std::isnan(tfidf_threshold)) throw Error("config: tfidf_threshold must not be NaN");
    if (std::isfinite(tfidf_threshold) && (tfidf_threshold < 0.0 || tfidf_threshold > 1.0))
        throw Error("config: tfidf_threshold must be in [0, 1] or +-infinity");
    if (!(merge_ratio >= 0.0 && merge_ratio <= 1.0)) throw Error("config: merge_ratio must be in [0, 1]");
    if (!(span_threshold >= 0.0 && span_threshold <= 1.0))
        throw Error("config: span_threshold must be in [0, 1]");
    if (!(w3 >= 0.0) || !std::isfinite(w3)) throw Error("config: w3 must be a finite non-negative number");
    if (!(w2 >= 0.0) || !std::isfinite(w2)) throw Error("config: w2 must be a finite non-negative number");
    if (backends.timeout_ms <= 0) throw Error("config: backend timeout_ms must be > 0");
    if (backends.max_retries < 0) throw Error("config: backend max_retries must be >= 0");
}

namespace {

using nlohmann::ordered_json;

ordered_json threshold_to_json(double t) {
    if (std::isinf(t)) return t > 0 ? "inf" : "-inf";
    return t;
}

double threshold_from_json(const ordered_json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw Error(std::string("config: ") + key + " must be a number or \"inf\"/\"-inf\"");
}

}  // namespace

PipelineConfig PipelineConfig::from_json_text(std::string_view json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const ordered_json::parse_error& e) {
        throw Error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error("config: top-level JSON value must be an object");

    PipelineConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "token_budget") cfg.token_budget = value.get<int>();
        else if (key == "tfidf_threshold") cfg.tfidf_threshold = threshold_from_json(value, "tfidf_threshold");
        else if (key == "merge_ratio") cfg.merge_ratio = value.get<double>();
        else if (key == "span_threshold") cfg.span_threshold = value.get<double>();
        else if (key == "batch_size") cfg.batch_size = value.get<int>();
        else if (key == "mode") {
            const auto mode = pipeline_mode_from_string(value.get<std::string>());
            if (!mode) throw Error("config: unknown mode \"" + value.get<std::string>() + "\"");
            cfg.mode = *mode;
        } else if (key == "w3") cfg.w3 = value.get<double>();
        else if (key == "w2") cfg.w2 = value.get<double>();
        else if (key == "overlap_sentences") cfg.overlap_sentences = value.get<int>();
        else if (key == "parallelism") cfg.parallelism = value.get<int>();
        else if (key == "tokenizer") cfg.tokenizer = value.get<std::string>();
        else if (key == "backends") {
            if (!value.is_object()) throw Error("config: \"backends\" must be an object");
            for (const auto& [bkey, bval] : value.items()) {
                if (bkey == "evidence") cfg.backends.evidence = bval.get<std::string>();
                else if (bkey == "verdict") cfg.backends.verdict = bval.get<std::string>();
                else if (bkey == "timeout_ms") cfg.backends.timeout_ms = bval.get<int>();
                else if (bkey == "max_retries") cfg.backends.max_retries = bval.get<int>();
                else throw Error("config: unknown backends key \"" + bkey + "\"");
            }
        } else {
            throw Error("config: unknown key \"" + key + "\"");
        }
    }
    cfg.validate();
    return cfg;
}

std::string PipelineConfig::to_json_text() const {
    ordered_json j;
    j["token_budget"] = token_budget;
    j["tfidf_threshold"] = threshold_to_json(tfidf_threshold);
    j["merge_ratio"] = merge_ratio;
    j["span_threshold"] = span_threshold;
    j["batch_size"] = batch_size;
    j["mode"] = std::string(to_string(mode));
    j["w3"] = w3;
    j["w2"] = w2;
    j["overlap_sentences"] = overlap_sentences;
    j["parallelism"] = parallelism;
    j["tokenizer"] = tokenizer;
    j["backends"] = {{"evidence", backends.evidence},
                     {"verdict", backends.verdict},
                     {"timeout_ms", backends.timeout_ms},
                     {"max_retries", backends.max_retries}};
    return j.dump(2);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

EvidenceSource source_of(ArbitrationBranch branch) {
    switch (branch) {
        case ArbitrationBranch::QATC_SINGLE: return EvidenceSource::QATC;
        case ArbitrationBranch::QATC_RERANKED: return EvidenceSource::QATC_RERANKED;
        case ArbitrationBranch::TFIDF_FALLBACK: return EvidenceSource::TFIDF_FALLBACK;
    }
    return EvidenceSource::TFIDF_FALLBACK;
}

VerificationResult run_record(const VerificationRecord& record, const PipelineConfig& config,
                              const EvidenceScorer& evidence_scorer,
                              const VerdictClassifier& verdict_classifier,
                              const Tokenizer& tokenizer, bool batched) {
    config.validate();

    VerificationResult result;
    result.record_id = record.id;

    // Stage 1: sentence split, short-segment merge, TF-IDF scoring, threshold routing.
    const auto t_tfidf = Clock::now();
    const std::string claim = normalize_text(record.claim);
    const std::string context = normalize_text(record.context);
    const auto claim_tokens = tokenizer.tokenize(claim);
    if (claim_tokens.empty()) throw Error("record '" + record.id + "': claim has no tokens");

    const std::vector<Sentence> sentences = split_sentences(context, tokenizer);
    if (sentences.empty()) throw Error("record '" + record.id + "': context has no sentences");

    const std::vector<Segment> segments =
        merge_short_segments(sentences_as_segments(sentences),
                             static_cast<int>(claim_tokens.size()), config.merge_ratio);
    std::vector<std::string> segment_texts;
    segment_texts.reserve(segments.size());
    for (const Segment& seg : segments) segment_texts.push_back(seg.text);

    const TfidfModel model = TfidfModel::fit(segment_texts, tokenizer);
    const std::vector<ScoredSegment> ranked = score_claim(model, claim, segment_texts, tokenizer);

    double threshold = config.tfidf_threshold;
    if (config.mode == PipelineMode::TFIDF_ONLY_ER)
        threshold = -std::numeric_limits<double>::infinity();
    const Route route = route_by_threshold(ranked, threshold);
    result.stage_timings_ms["retrieval_tfidf"] = ms_since(t_tfidf);

    // Stage 2: evidence selection (easy path directly, hard path through the scorer).
    Sentence evidence;
    if (route.kind == RouteKind::EASY) {
        const Segment& top = segments[route.easy_evidence->segment_index];
        evidence = resolve_segment_evidence(top, claim, tokenizer);
        result.source = EvidenceSource::TFIDF;
    } else {
        const auto t_qatc = Clock::now();
        const std::vector<SubContext> subcontexts =
            build_subcontexts(sentences, config.token_budget, config.overlap_sentences);

        std::vector<TokenScores> all_scores;
        all_scores.reserve(subcontexts.size());
        try {
            if (batched) {
                for (const SegmentBatch& batch :
                     batch_subcontexts(subcontexts, config.batch_size, record.id)) {
                    auto scores = evidence_scorer.batch_score(claim, batch);
                    if (scores.size() != batch.subcontexts.size())
                        throw SchemaError("batch_score returned " + std::to_string(scores.size()) +
                                          " results for " + std::to_string(batch.subcontexts.size()) +
                                          " subcontexts");
                    for (auto& s : scores) all_scores.push_back(std::move(s));
                }
            } else {
                for (const SubContext& sc : subcontexts)
                    all_scores.push_back(evidence_scorer.score(claim, sc));
            }
        } catch (const BackendError& e) {
            throw BackendUnavailable("evidence_retrieval", e.what());
        }

        std::vector<SpanCandidate> candidates;
        for (std::size_t k = 0; k < subcontexts.size(); ++k) {
            const auto span = extract_spans(all_scores[k], config.span_threshold);
            if (!span) continue;
            SpanCandidate cand;
            cand.subcontext_index = static_cast<int>(k);
            cand.sentence = map_span_to_sentence(*span, subcontexts[k]);
            cand.raw_span = *span;
            cand.confidence = span->confidence;
            candidates.push_back(std::move(cand));
        }

        const ArbitrationOutcome outcome = arbitrate(candidates, claim, ranked, segments, tokenizer);
        evidence = outcome.sentence;
        result.source = source_of(outcome.branch);
        result.stage_timings_ms["retrieval_qatc"] = ms_since(t_qatc);
    }
    result.evidence = evidence.text;

    // Stage 3: two-step verdict classification. NEI from the three-class stage ends
    // the process; the binary classifier is never consulted then.
    const auto t_tvc = Clock::now();
    ThreeClassProbs p3;
    try {
        p3 = verdict_classifier.classify3(claim, evidence.text);
    } catch (const BackendError& e) {
        throw BackendUnavailable("verdict_three_class", e.what());
    }

    if (config.mode == PipelineMode::ONE_STEP_VC) {
        result.verdict = combine_one_step(p3);
    } else {
        validate_distribution(std::span<const double>(p3));
        const bool is_nei = p3[0] >= p3[1] && p3[0] >= p3[2];  // argmax with lower-index ties
        if (is_nei) {
            result.verdict = combine(p3, std::nullopt, config.w3, config.w2);
        } else {
            BinaryProbs p2;
            try {
                p2 = verdict_classifier.classify2(claim, evidence.text);
            } catch (const BackendError& e) {
                throw BackendUnavailable("verdict_binary", e.what());
            }
            result.verdict = combine(p3, p2, config.w3, config.w2);
        }
    }
    result.stage_timings_ms["classification"] = ms_since(t_tvc);
    return result;
}

}  // namespace

VerificationResult verify(const VerificationRecord& record, const PipelineConfig& config,
                          const EvidenceScorer& evidence_scorer,
                          const VerdictClassifier& verdict_classifier, const Tokenizer& tokenizer) {
    return run_record(record, config, evidence_scorer, verdict_classifier, tokenizer, false);
}

VerificationResult verify_faster(const VerificationRecord& record, const PipelineConfig& config,
                                 const EvidenceScorer& evidence_scorer,
                                 const VerdictClassifier& verdict_classifier, const Tokenizer& tokenizer) {
    return run_record(record, config, evidence_scorer, verdict_classifier, tokenizer, true);
}

CorpusRun verify_corpus(const std::vector<VerificationRecord>& records, const PipelineConfig& config,
                        const EvidenceScorer& evidence_scorer,
                        const VerdictClassifier& verdict_classifier, const Tokenizer& tokenizer,
                        int parallelism) {
    config.validate();
    if (parallelism < 1) throw Error("parallelism must be >= 1");

    const auto t0 = Clock::now();
    const std::size_t n = records.size();
    const bool batched = config.mode == PipelineMode::FASTER;

    std::vector<std::optional<VerificationResult>> slots(n);
    std::vector<std::optional<RecordError>> error_slots(n);
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                slots[i] = run_record(records[i], config, evidence_scorer, verdict_classifier,
                                      tokenizer, batched);
            } catch (const std::exception& e) {
                error_slots[i] = RecordError{i, records[i].id, e.what()};
            }
        }
    };

    const std::size_t thread_count = std::min<std::size_t>(parallelism, std::max<std::size_t>(n, 1));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (std::size_t k = 0; k < thread_count; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    CorpusRun run;
    for (std::size_t i = 0; i < n; ++i) {
        if (slots[i]) {
            for (const auto& [stage, ms] : slots[i]->stage_timings_ms) run.stage_totals_ms[stage] += ms;
            run.results.push_back(std::move(*slots[i]));
        } else if (error_slots[i]) {
            run.errors.push_back(std::move(*error_slots[i]));
        }
    }
    run.wall_ms = ms_since(t0);
    return run;
}

}  // namespace semfact
