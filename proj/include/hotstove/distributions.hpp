#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "hotstove/rng.hpp"

namespace hotstove {

// ---------------------------------------------------------------------------
// Normal helpers
// ---------------------------------------------------------------------------

double normal_pdf(double x, double mean, double variance);
double normal_cdf(double x, double mean, double variance);

/// E[X | X > c] for X ~ Normal(0, sd^2): sd * phi(c/sd) / (1 - Phi(c/sd)).
/// Switches to the Mills-ratio asymptotic expansion for c/sd > 26.
double truncated_normal_mean_above(double c, double sd);

/// E[X | X < c] for X ~ Normal(0, sd^2): -sd * phi(c/sd) / Phi(c/sd).
double truncated_normal_mean_below(double c, double sd);

// ---------------------------------------------------------------------------
// Payoff distributions
// ---------------------------------------------------------------------------

struct NormalPayoff {
    double mean;
    double variance;
};

struct LaplacePayoff {
    double mean;
    double scale;
};

/// Symmetric discrete distribution: each offset (a, p) with a != 0 puts mass p
/// on center+a and mass p on center-a, so the offset probabilities sum to 1/2.
struct DiscreteSymmetricPayoff {
    double center;
    std::vector<std::pair<double, double>> offsets;  // (offset, probability)
};

struct FiniteDiscretePayoff {
    std::vector<std::pair<double, double>> support;  // (value, probability)
};

class PayoffDistribution {
public:
    using Variant =
        std::variant<NormalPayoff, LaplacePayoff, DiscreteSymmetricPayoff, FiniteDiscretePayoff>;

    static PayoffDistribution normal(double mean, double variance);
    static PayoffDistribution laplace(double mean, double scale);
    static PayoffDistribution discrete_symmetric(double center,
                                                 std::vector<std::pair<double, double>> offsets);
    static PayoffDistribution finite_discrete(std::vector<std::pair<double, double>> support);

    double mean() const { return mean_; }
    double variance() const { return variance_; }

    double sample(TrialRng& rng) const;

    const Variant& value() const { return value_; }

    /// Expanded (value, probability) support for the two discrete variants,
    /// empty for continuous ones. The enumeration oracle runs on this.
    const std::vector<std::pair<double, double>>& finite_support() const { return support_; }
    bool is_discrete() const { return !support_.empty(); }

private:
    explicit PayoffDistribution(Variant v);

    Variant value_;
    double mean_ = 0.0;
    double variance_ = 0.0;
    std::vector<std::pair<double, double>> support_;  // discrete variants only
    std::vector<double> cumulative_;                  // sampling table, same length
};

// ---------------------------------------------------------------------------
// Environments
// ---------------------------------------------------------------------------

/// Payoff distribution with a known true mean; pairs with the averaging and
/// recency learners.
struct FixedMeanEnvironment {
    PayoffDistribution payoff;
};

/// Per-trial true mean u_i ~ Normal(prior_mean, prior_variance), payoffs
/// x = u_i + Normal(0, noise_variance); pairs with the conjugate learner.
struct HierarchicalNormalEnvironment {
    double prior_mean;
    double prior_variance;
    double noise_variance;
};

class EnvironmentSpec {
public:
    using Variant = std::variant<FixedMeanEnvironment, HierarchicalNormalEnvironment>;

    static EnvironmentSpec fixed_mean(PayoffDistribution payoff);
    static EnvironmentSpec hierarchical_normal(double prior_mean, double prior_variance,
                                               double noise_variance);

    /// u for FixedMean, the prior mean m for HierarchicalNormal. This is the
    /// reference value biases are measured against.
    double reference_mean() const;

    const Variant& value() const { return value_; }
    const FixedMeanEnvironment* as_fixed_mean() const;
    const HierarchicalNormalEnvironment* as_hierarchical() const;

private:
    explicit EnvironmentSpec(Variant v) : value_(std::move(v)) {}
    Variant value_;
};

}  // namespace hotstove
