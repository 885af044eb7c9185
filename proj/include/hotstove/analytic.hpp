#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "hotstove/policies.hpp"

namespace hotstove {

struct QuadratureSettings {
    double relative_tolerance = 1e-9;
    std::int32_t max_subdivisions = 1 << 16;
    double integration_halfwidth_in_sds = 10.0;
};

// Adaptive refinement failed to reach the requested tolerance.
class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integral of f over [a, b] by adaptive Gauss-Kronrod (G7, K15) subdivision.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSettings& settings = {});

// Expected final average under a step policy (n = high above the threshold,
// low at or below it) when payoffs are Normal(0, sigma^2):
// -sigma*sqrt(k)*(high-low)*exp(-threshold^2*k/(2 sigma^2))
//   / (sqrt(2 pi)*(k+low)*(k+high)).
double step_policy_bias_closed_form(std::int32_t k, std::int32_t high, std::int32_t low,
                                    double threshold, double sigma);

// E[final average | first-period average], payoff mean u:
// (k*xbar1 + n*u)/(k + n).
double conditional_final_average(double xbar1, std::int32_t k, std::int32_t n, double u);

// E[final recency belief | belief z1 after period one], payoff mean u:
// z1*(1-b)^n + (1-(1-b)^n)*u.
double recency_conditional_expectation(double z1, double b, std::int64_t n, double u);

// P(sum of kk iid Normal(0, sigma^2) draws exceeds r) = 1 - Phi(r/(sigma*sqrt(kk))).
// Strictly increasing in kk for fixed r > 0.
double normal_sum_tail_prob(std::int32_t kk, double r, double sigma);

// Sign-flip probabilities for a conjugate normal learner whose prior mean is 0.
// The first-period signal is the posterior mean after k draws; the policy maps
// that belief to the second-period sample size. A nonzero prior mean is handled
// by the caller shifting the policy threshold.
double flip_prob_pos_to_neg(std::int32_t k, const SamplingPolicy& policy, double sigma_u2,
                            double sigma_e2, const QuadratureSettings& settings = {});
double flip_prob_neg_to_pos(std::int32_t k, const SamplingPolicy& policy, double sigma_u2,
                            double sigma_e2, const QuadratureSettings& settings = {});

// P(final posterior mean < prior mean) assembled from the two flip
// probabilities; 1/2 exactly for constant policies.
double bayes_prob_final_negative(std::int32_t k, const SamplingPolicy& policy, double sigma_u2,
                                 double sigma_e2, const QuadratureSettings& settings = {});

}  // namespace hotstove
