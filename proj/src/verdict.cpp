#include "semfact/verdict.hpp"

#include <algorithm>
#include <cmath>

#include "semfact/errors.hpp"

namespace semfact {

namespace {

constexpr double kEps = 1e-7;
constexpr double kSumTolerance = 1e-6;

std::size_t argmax(std::span<const double> p) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < p.size(); ++k)
        if (p[k] > p[best]) best = k;  // ties keep the lower index
    return best;
}

void validate_one_hot(std::span<const double> y) {
    int ones = 0;
    for (const double v : y) {
        if (v == 1.0) ++ones;
        else if (v != 0.0) throw InvalidDistribution("y must be a one-hot vector of 0s and 1s");
    }
    if (ones != 1) throw InvalidDistribution("y must contain exactly one 1");
}

double clamp_prob(double p) { return std::clamp(p, kEps, 1.0 - kEps); }

}  // namespace

void validate_distribution(std::span<const double> p) {
    if (p.empty()) throw InvalidDistribution("distribution must be non-empty");
    double sum = 0.0;
    for (const double v : p) {
        if (!std::isfinite(v)) throw InvalidDistribution("distribution entries must be finite");
        if (v < 0.0) throw InvalidDistribution("distribution entries must be non-negative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw InvalidDistribution("distribution sums to " + std::to_string(sum) + ", expected 1");
}

VerdictLabel combine(const ThreeClassProbs& p3, const std::optional<BinaryProbs>& p2,
                     double w3, double w2) {
    validate_distribution(p3);
    const std::size_t y3 = argmax(std::span<const double>(p3));
    if (y3 == 0) return VerdictLabel::NEI;

    if (!p2) throw MissingBinary("binary distribution required when the three-class argmax is not NEI");
    validate_distribution(std::span<const double>(*p2));

    const double v3_max = p3[y3] * w3;
    const double v2_max = std::max((*p2)[0], (*p2)[1]) * w2;
    if (v3_max > v2_max) return verdict_from_index(static_cast<int>(y3) + 1);

    const std::size_t y2 = argmax(std::span<const double>(*p2));  // tie -> SUPPORTED
    return y2 == 0 ? VerdictLabel::SUPPORTED : VerdictLabel::REFUTED;
}

VerdictLabel combine_one_step(const ThreeClassProbs& p3) {
    validate_distribution(std::span<const double>(p3));
    return verdict_from_index(static_cast<int>(argmax(std::span<const double>(p3))) + 1);
}

double cross_entropy_loss(std::span<const double> y_one_hot, std::span<const double> p) {
    if (y_one_hot.size() != p.size())
        throw InvalidDistribution("y and p must have the same length");
    validate_one_hot(y_one_hot);
    validate_distribution(p);

    double loss = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (y_one_hot[k] == 1.0) loss -= std::log(clamp_prob(p[k]));
    return loss;
}

double focal_loss(std::span<const double> y_one_hot, std::span<const double> p,
                  double gamma, std::span<const double> alpha) {
    if (y_one_hot.size() != p.size())
        throw InvalidDistribution("y and p must have the same length");
    if (!alpha.empty() && alpha.size() != p.size())
        throw LengthMismatch("alpha must be empty or match the class count");
    if (!(gamma >= 0.0)) throw Error("gamma must be >= 0");
    validate_one_hot(y_one_hot);
    validate_distribution(p);

    double loss = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (y_one_hot[k] != 1.0) continue;
        const double a = alpha.empty() ? 1.0 : alpha[k];
        const double pc = clamp_prob(p[k]);
        loss -= a * std::pow(1.0 - pc, gamma) * std::log(pc);
    }
    return loss;
}

void MockVerdictClassifier::set_distributions(const std::string& claim, const std::string& evidence,
                                              const ThreeClassProbs& p3,
                                              const std::optional<BinaryProbs>& p2) {
    validate_distribution(std::span<const double>(p3));
    if (p2) validate_distribution(std::span<const double>(*p2));
    table_[{claim, evidence}] = VerdictDistributions{p3, p2};
}

ThreeClassProbs MockVerdictClassifier::classify3(const std::string& claim,
                                                 const std::string& evidence) const {
    classify3_calls_.fetch_add(1);
    const auto it = table_.find({claim, evidence});
    if (it == table_.end()) return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return it->second.p3;
}

BinaryProbs MockVerdictClassifier::classify2(const std::string& claim,
                                             const std::string& evidence) const {
    classify2_calls_.fetch_add(1);
    const auto it = table_.find({claim, evidence});
    if (it == table_.end() || !it->second.p2) return {0.5, 0.5};
    return *it->second.p2;
}

void MockVerdictClassifier::reset_counters() {
    classify3_calls_.store(0);
    classify2_calls_.store(0);
}

}  // namespace semfact
