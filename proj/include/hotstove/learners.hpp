#pragma once

#include <cstdint>
#include <span>
#include <variant>

namespace hotstove {

// Running record of what a learner has seen plus its current point estimate.
// belief is NaN until the rule defines one (averaging needs an observation;
// recency and bayes start from their prior).
struct BeliefState {
    double sum_of_observations = 0.0;
    std::int64_t count = 0;
    double belief = 0.0;

    bool has_belief() const;
    double current_belief() const;  // throws std::logic_error when undefined
};

struct AveragingRule {};

struct RecencyRule {
    double weight;          // in (0, 1]
    double initial_belief;  // estimate before any observation
};

struct BayesRule {
    double prior_mean;
    double prior_variance;
    double noise_variance;
};

// Posterior mean of a normal mean under a normal prior after n observations
// summing to sum. n == 0 returns the prior mean.
double bayes_posterior_mean(double prior_mean, double prior_variance, double noise_variance,
                            double sum, std::int64_t n);

// Belief after folding xs into initial one update at a time:
// initial*(1-w)^n + sum_j w*(1-w)^(n-j) * xs[j-1].
double recency_closed_form(double initial, double weight, std::span<const double> xs);

class Learner {
public:
    static Learner averaging();
    static Learner recency(double weight, double initial_belief);
    static Learner bayes(double prior_mean, double prior_variance, double noise_variance);

    BeliefState initial_state() const;
    void observe(BeliefState& state, double x) const;

    const AveragingRule* as_averaging() const { return std::get_if<AveragingRule>(&value_); }
    const RecencyRule* as_recency() const { return std::get_if<RecencyRule>(&value_); }
    const BayesRule* as_bayes() const { return std::get_if<BayesRule>(&value_); }

private:
    using Variant = std::variant<AveragingRule, RecencyRule, BayesRule>;
    explicit Learner(Variant v);

    Variant value_;
};

}  // namespace hotstove
