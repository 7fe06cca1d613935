#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semfact/corpus.hpp"
#include "semfact/evidence.hpp"
#include "semfact/verdict.hpp"

namespace semfact {

enum class PipelineMode { FULL, FASTER, TFIDF_ONLY_ER, ONE_STEP_VC };

std::string_view to_string(PipelineMode mode);
// Accepts "full", "faster", "tfidf-only", "one-step".
std::optional<PipelineMode> pipeline_mode_from_string(std::string_view s);

struct BackendSelection {
    std::string evidence = "mock";  // "mock", "mock:<fixture path>", or an http(s) base URL
    std::string verdict = "mock";
    int timeout_ms = 30000;
    int max_retries = 2;
};

struct PipelineConfig {
    int token_budget = 400;
    double tfidf_threshold = 0.5;  // +-infinity act as routing sentinels
    double merge_ratio = 0.60;
    double span_threshold = 0.5;
    int batch_size = 8;
    PipelineMode mode = PipelineMode::FULL;
    double w3 = 1.0;
    double w2 = 1.0;
    int overlap_sentences = 0;
    int parallelism = 1;
    std::string tokenizer = "whitespace";
    BackendSelection backends;

    void validate() const;  // throws Error on out-of-range values

    static PipelineConfig from_json_text(std::string_view json_text);
    std::string to_json_text() const;  // stable field order; non-finite thresholds as "inf"/"-inf"
};

enum class EvidenceSource { TFIDF, QATC, QATC_RERANKED, TFIDF_FALLBACK };

std::string_view to_string(EvidenceSource source);

struct VerificationResult {
    std::string record_id;
    VerdictLabel verdict = VerdictLabel::NEI;
    std::string evidence;  // always a full sentence of the record's context
    EvidenceSource source = EvidenceSource::TFIDF;
    std::map<std::string, double> stage_timings_ms;
};

// Full pipeline for one record: sentence split, merge, TF-IDF scoring and threshold
// routing; on the hard path, subcontext scoring, span extraction, and arbitration;
// then two-step verdict classification (the binary classifier is only consulted when
// the three-class argmax is not NEI). Subcontexts are scored one at a time.
VerificationResult verify(const VerificationRecord& record, const PipelineConfig& config,
                          const EvidenceScorer& evidence_scorer, const VerdictClassifier& verdict_classifier,
                          const Tokenizer& tokenizer);

// Identical decisions to verify(); subcontexts are scored through batch_score in
// config.batch_size chunks. For any conforming scorer the result (verdict, evidence,
// source) is equal to verify()'s.
VerificationResult verify_faster(const VerificationRecord& record, const PipelineConfig& config,
                                 const EvidenceScorer& evidence_scorer, const VerdictClassifier& verdict_classifier,
                                 const Tokenizer& tokenizer);

struct RecordError {
    std::size_t record_index = 0;
    std::string record_id;
    std::string message;
};

struct CorpusRun {
    std::vector<VerificationResult> results;  // input order; failed records omitted
    std::vector<RecordError> errors;          // input order
    double wall_ms = 0.0;
    std::map<std::string, double> stage_totals_ms;
};

// Runs every record (mode FASTER batches subcontext scoring, everything else is
// sequential) over a pool of `parallelism` workers. Per-record failures are collected,
// not fatal. Results are a pure function of the inputs; parallelism affects timing only.
CorpusRun verify_corpus(const std::vector<VerificationRecord>& records, const PipelineConfig& config,
                        const EvidenceScorer& evidence_scorer, const VerdictClassifier& verdict_classifier,
                        const Tokenizer& tokenizer, int parallelism = 1);

}  // namespace semfact
