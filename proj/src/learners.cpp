#include "hotstove/learners.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hotstove {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

bool BeliefState::has_belief() const {
    return !std::isnan(belief);
}

double BeliefState::current_belief() const {
    if (!has_belief()) throw std::logic_error("belief requested before any observation");
    return belief;
}

double bayes_posterior_mean(double prior_mean, double prior_variance, double noise_variance,
                            double sum, std::int64_t n) {
    if (n == 0) return prior_mean;
    const double sample_mean = sum / static_cast<double>(n);
    const double effective_noise = noise_variance / static_cast<double>(n);
    return (sample_mean * prior_variance + effective_noise * prior_mean) /
           (prior_variance + effective_noise);
}

double recency_closed_form(double initial, double weight, std::span<const double> xs) {
    const std::size_t n = xs.size();
    double acc = initial * std::pow(1.0 - weight, static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        acc += weight * std::pow(1.0 - weight, static_cast<double>(n - 1 - j)) * xs[j];
    }
    return acc;
}

Learner::Learner(Variant v) : value_(std::move(v)) {}

Learner Learner::averaging() {
    return Learner(AveragingRule{});
}

Learner Learner::recency(double weight, double initial_belief) {
    require(weight > 0.0 && weight <= 1.0, "recency: weight must be in (0, 1]");
    require(std::isfinite(initial_belief), "recency: initial belief must be finite");
    return Learner(RecencyRule{weight, initial_belief});
}

Learner Learner::bayes(double prior_mean, double prior_variance, double noise_variance) {
    require(std::isfinite(prior_mean), "bayes: prior_mean must be finite");
    require(prior_variance > 0.0 && std::isfinite(prior_variance),
            "bayes: prior_variance must be positive");
    require(noise_variance > 0.0 && std::isfinite(noise_variance),
            "bayes: noise_variance must be positive");
    return Learner(BayesRule{prior_mean, prior_variance, noise_variance});
}

BeliefState Learner::initial_state() const {
    BeliefState s;
    if (const auto* r = std::get_if<RecencyRule>(&value_)) {
        s.belief = r->initial_belief;
    } else if (const auto* b = std::get_if<BayesRule>(&value_)) {
        s.belief = b->prior_mean;
    } else {
        s.belief = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

void Learner::observe(BeliefState& state, double x) const {
    state.sum_of_observations += x;
    state.count += 1;
    if (std::holds_alternative<AveragingRule>(value_)) {
        state.belief = state.sum_of_observations / static_cast<double>(state.count);
    } else if (const auto* r = std::get_if<RecencyRule>(&value_)) {
        state.belief = (1.0 - r->weight) * state.belief + r->weight * x;
    } else {
        const auto& b = std::get<BayesRule>(value_);
        state.belief = bayes_posterior_mean(b.prior_mean, b.prior_variance, b.noise_variance,
                                            state.sum_of_observations, state.count);
    }
}

}  // namespace hotstove
