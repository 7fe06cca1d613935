#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semfact/evidence.hpp"
#include "semfact/verdict.hpp"

namespace semfact {

// Remote model server reachable over the /v1 JSON protocol. When auth_token is unset
// the SEMFACT_BACKEND_TOKEN environment variable is used, if present. Retries use
// exponential backoff (backoff_base_ms, factor 2) and apply to transport failures and
// 5xx responses only.
struct BackendEndpoint {
    std::string base_url;
    int timeout_ms = 30000;
    int max_retries = 2;
    std::optional<std::string> auth_token;
    int backoff_base_ms = 200;
};

// POST /v1/evidence/score with {"claim": str, "tokens": [str]}. The response carries
// {"token_probs": [float]} aligned to the sent tokens and/or {"span": {"start", "end",
// "confidence"}} in sent-token coordinates; a span takes precedence downstream.
TokenScores remote_evidence_score(const BackendEndpoint& endpoint, const std::string& claim,
                                  const SubContext& subcontext);

// POST /v1/evidence/score_batch with {"claim": str, "batch": [[str], ...]}; the
// response {"results": [...]} must match the batch length, each entry validated like
// the single-item schema.
std::vector<TokenScores> remote_evidence_score_batch(const BackendEndpoint& endpoint, const std::string& claim,
                                                     const SegmentBatch& batch);

// POST /v1/verdict/three -> {"probs": [p_nei, p_sup, p_ref]};
// POST /v1/verdict/binary -> {"probs": [p_sup, p_ref]}.
// Probabilities must sum to 1 within 1e-4 (SchemaError otherwise) and are then
// renormalized exactly.
ThreeClassProbs remote_classify3(const BackendEndpoint& endpoint, const std::string& claim,
                                 const std::string& evidence);
BinaryProbs remote_classify2(const BackendEndpoint& endpoint, const std::string& claim,
                             const std::string& evidence);

class RemoteEvidenceScorer final : public EvidenceScorer {
public:
    explicit RemoteEvidenceScorer(BackendEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

    TokenScores score(const std::string& claim, const SubContext& subcontext) const override;
    std::vector<TokenScores> batch_score(const std::string& claim, const SegmentBatch& batch) const override;

private:
    BackendEndpoint endpoint_;
};

class RemoteVerdictClassifier final : public VerdictClassifier {
public:
    explicit RemoteVerdictClassifier(BackendEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

    ThreeClassProbs classify3(const std::string& claim, const std::string& evidence) const override;
    BinaryProbs classify2(const std::string& claim, const std::string& evidence) const override;

private:
    BackendEndpoint endpoint_;
};

}  // namespace semfact
