#pragma once

#include <array>
#include <atomic>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "semfact/label.hpp"

namespace semfact {

using ThreeClassProbs = std::array<double, 3>;  // (NEI, SUPPORTED, REFUTED)
using BinaryProbs = std::array<double, 2>;      // (SUPPORTED, REFUTED)

struct VerdictDistributions {
    ThreeClassProbs p3{};
    std::optional<BinaryProbs> p2;
};

// Throws InvalidDistribution unless every entry is finite and non-negative and the
// entries sum to 1 within 1e-6.
void validate_distribution(std::span<const double> p);

// Final decision rule. NEI (the three-class argmax) ends the process immediately;
// otherwise the three-class answer is kept when w3 * max(p3) > w2 * max(p2), and the
// binary answer wins the rest. Argmax ties go to the lower index, which for the
// binary stage means SUPPORTED. p2 is only consulted - and only required - when the
// three-class argmax is not NEI; MissingBinary is thrown if it is absent then.
VerdictLabel combine(const ThreeClassProbs& p3, const std::optional<BinaryProbs>& p2,
                     double w3 = 1.0, double w2 = 1.0);

// One-step ablation: plain argmax over the three-class distribution (ties -> lower index).
VerdictLabel combine_one_step(const ThreeClassProbs& p3);

// -sum_k y_k ln p_k with p clamped to [1e-7, 1 - 1e-7]. y must be one-hot and p a
// distribution of the same length.
double cross_entropy_loss(std::span<const double> y_one_hot, std::span<const double> p);

// -sum_k alpha_k y_k (1 - p_k)^gamma ln p_k with the same clamping. Empty alpha means
// uniform weights of 1; gamma = 0 with unit alpha reduces exactly to cross-entropy.
double focal_loss(std::span<const double> y_one_hot, std::span<const double> p,
                  double gamma = 2.0, std::span<const double> alpha = {});

class VerdictClassifier {
public:
    virtual ~VerdictClassifier() = default;
    virtual ThreeClassProbs classify3(const std::string& claim, const std::string& evidence) const = 0;
    virtual BinaryProbs classify2(const std::string& claim, const std::string& evidence) const = 0;
};

// Deterministic test backend keyed by (claim, evidence); unseen pairs yield uniform
// distributions. Distributions are validated when configured. Call counters make the
// laziness of the binary stage observable.
class MockVerdictClassifier final : public VerdictClassifier {
public:
    void set_distributions(const std::string& claim, const std::string& evidence,
                           const ThreeClassProbs& p3,
                           const std::optional<BinaryProbs>& p2 = std::nullopt);

    ThreeClassProbs classify3(const std::string& claim, const std::string& evidence) const override;
    BinaryProbs classify2(const std::string& claim, const std::string& evidence) const override;

    int classify3_calls() const { return classify3_calls_.load(); }
    int classify2_calls() const { return classify2_calls_.load(); }
    void reset_counters();

private:
    std::map<std::pair<std::string, std::string>, VerdictDistributions> table_;
    mutable std::atomic<int> classify3_calls_{0};
    mutable std::atomic<int> classify2_calls_{0};
};

}  // namespace semfact
