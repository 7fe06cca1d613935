#include "semfact/backends.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "semfact/errors.hpp"

namespace semfact {

namespace {

using nlohmann::json;

std::optional<std::string> resolve_token(const BackendEndpoint& endpoint) {
    if (endpoint.auth_token) return endpoint.auth_token;
    if (const char* env = std::getenv("SEMFACT_BACKEND_TOKEN"); env && *env) return std::string(env);
    return std::nullopt;
}

bool is_timeout(httplib::Error err) {
    return err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
           err == httplib::Error::Write;
}

// One POST with retry on transport failures and 5xx responses; exponential backoff
// (base * 2^attempt). 4xx and schema problems are not retried.
json post_json(const BackendEndpoint& endpoint, const std::string& path, const json& body) {
    const std::string payload = body.dump();
    std::string last_error = "no attempt made";
    bool last_was_timeout = false;
    int last_status = 0;

    for (int attempt = 0; attempt <= endpoint.max_retries; ++attempt) {
        if (attempt > 0) {
            const auto delay = std::chrono::milliseconds(
                static_cast<long long>(endpoint.backoff_base_ms) * (1LL << (attempt - 1)));
            std::this_thread::sleep_for(delay);
        }

        httplib::Client client(endpoint.base_url);
        client.set_connection_timeout(std::chrono::milliseconds(endpoint.timeout_ms));
        client.set_read_timeout(std::chrono::milliseconds(endpoint.timeout_ms));
        client.set_write_timeout(std::chrono::milliseconds(endpoint.timeout_ms));
        httplib::Headers headers;
        if (const auto token = resolve_token(endpoint)) headers.emplace("Authorization", "Bearer " + *token);

        auto res = client.Post(path, headers, payload, "application/json");
        if (!res) {
            last_was_timeout = is_timeout(res.error());
            last_error = "transport error: " + httplib::to_string(res.error());
            last_status = 0;
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error";
            last_status = res->status;
            last_was_timeout = false;
            continue;
        }
        if (res->status != 200) throw BadStatus(res->status);

        try {
            return json::parse(res->body);
        } catch (const json::parse_error& e) {
            throw SchemaError(std::string("response is not valid JSON: ") + e.what());
        }
    }

    if (last_status >= 500) throw BadStatus(last_status);
    if (last_was_timeout) throw Timeout(endpoint.base_url + path + ": " + last_error);
    throw BackendError(endpoint.base_url + path + ": " + last_error);
}

double checked_probability(const json& v, const char* what) {
    if (!v.is_number()) throw SchemaError(std::string(what) + " must be a number");
    const double p = v.get<double>();
    if (!(p >= 0.0 && p <= 1.0)) throw SchemaError(std::string(what) + " must be in [0, 1]");
    return p;
}

TokenScores parse_token_scores(const json& response, int token_count) {
    TokenScores scores;
    if (response.contains("span") && !response.at("span").is_null()) {
        const json& s = response.at("span");
        if (!s.is_object() || !s.contains("start") || !s.contains("end") ||
            !s.at("start").is_number_integer() || !s.at("end").is_number_integer())
            throw SchemaError("span must be an object with integer \"start\" and \"end\"");
        TokenSpan span;
        span.start = s.at("start").get<int>();
        span.end = s.at("end").get<int>();
        span.confidence = s.contains("confidence") ? checked_probability(s.at("confidence"), "span confidence") : 0.0;
        if (span.start < 0 || span.end < span.start || span.end >= token_count)
            throw SchemaError("span [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                              "] out of range for " + std::to_string(token_count) + " tokens");
        scores.span = span;
    }
    if (response.contains("token_probs") && !response.at("token_probs").is_null()) {
        const json& probs = response.at("token_probs");
        if (!probs.is_array()) throw SchemaError("token_probs must be an array");
        if (static_cast<int>(probs.size()) != token_count)
            throw SchemaError("token_probs has " + std::to_string(probs.size()) + " entries for " +
                              std::to_string(token_count) + " tokens");
        scores.probs.reserve(probs.size());
        for (const json& v : probs) scores.probs.push_back(checked_probability(v, "token probability"));
    }
    if (!scores.span && scores.probs.empty())
        throw SchemaError("response must contain \"token_probs\" or \"span\"");
    return scores;
}

template <std::size_t N>
std::array<double, N> parse_probs(const json& response) {
    if (!response.contains("probs") || !response.at("probs").is_array())
        throw SchemaError("response must contain a \"probs\" array");
    const json& probs = response.at("probs");
    if (probs.size() != N)
        throw SchemaError("expected " + std::to_string(N) + " probabilities, got " +
                          std::to_string(probs.size()));

    std::array<double, N> out{};
    double sum = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        out[k] = checked_probability(probs[k], "class probability");
        sum += out[k];
    }
    if (std::abs(sum - 1.0) > 1e-4)
        throw SchemaError("probabilities sum to " + std::to_string(sum) + ", expected 1");
    for (double& v : out) v /= sum;  // renormalize exactly
    return out;
}

}  // namespace

TokenScores remote_evidence_score(const BackendEndpoint& endpoint, const std::string& claim,
                                  const SubContext& subcontext) {
    json body;
    body["claim"] = claim;
    body["tokens"] = subcontext.tokens;
    const json response = post_json(endpoint, "/v1/evidence/score", body);
    return parse_token_scores(response, subcontext.token_count());
}

std::vector<TokenScores> remote_evidence_score_batch(const BackendEndpoint& endpoint,
                                                     const std::string& claim,
                                                     const SegmentBatch& batch) {
    json body;
    body["claim"] = claim;
    json items = json::array();
    for (const SubContext& sc : batch.subcontexts) items.push_back(sc.tokens);
    body["batch"] = std::move(items);

    const json response = post_json(endpoint, "/v1/evidence/score_batch", body);
    if (!response.contains("results") || !response.at("results").is_array())
        throw SchemaError("batch response must contain a \"results\" array");
    const json& results = response.at("results");
    if (results.size() != batch.subcontexts.size())
        throw SchemaError("batch response has " + std::to_string(results.size()) + " results for " +
                          std::to_string(batch.subcontexts.size()) + " subcontexts");

    std::vector<TokenScores> out;
    out.reserve(results.size());
    for (std::size_t k = 0; k < results.size(); ++k)
        out.push_back(parse_token_scores(results[k], batch.subcontexts[k].token_count()));
    return out;
}

ThreeClassProbs remote_classify3(const BackendEndpoint& endpoint, const std::string& claim,
                                 const std::string& evidence) {
    json body;
    body["claim"] = claim;
    body["evidence"] = evidence;
    return parse_probs<3>(post_json(endpoint, "/v1/verdict/three", body));
}

BinaryProbs remote_classify2(const BackendEndpoint& endpoint, const std::string& claim,
                             const std::string& evidence) {
    json body;
    body["claim"] = claim;
    body["evidence"] = evidence;
    return parse_probs<2>(post_json(endpoint, "/v1/verdict/binary", body));
}

TokenScores RemoteEvidenceScorer::score(const std::string& claim, const SubContext& subcontext) const {
    return remote_evidence_score(endpoint_, claim, subcontext);
}

std::vector<TokenScores> RemoteEvidenceScorer::batch_score(const std::string& claim,
                                                           const SegmentBatch& batch) const {
    return remote_evidence_score_batch(endpoint_, claim, batch);
}

ThreeClassProbs RemoteVerdictClassifier::classify3(const std::string& claim,
                                                   const std::string& evidence) const {
    return remote_classify3(endpoint_, claim, evidence);
}

BinaryProbs RemoteVerdictClassifier::classify2(const std::string& claim,
                                               const std::string& evidence) const {
    return remote_classify2(endpoint_, claim, evidence);
}

}  // namespace semfact
