#pragma once

#include <cstdint>

#include "hotstove/distributions.hpp"
#include "hotstove/policies.hpp"

namespace hotstove {

// Exact expectation over every outcome path of a finite payoff alphabet.
// Probabilities are accumulated with compensated summation; documented
// tolerance for downstream equality checks is 1e-12.
struct EnumerationResult {
    double expected_final_belief = 0.0;
    double prob_final_above_u = 0.0;
    double prob_final_below_u = 0.0;
    double prob_final_equal_u = 0.0;
    std::int64_t total_paths = 0;
    bool prior_matches_mean = true;  // recency only: starting belief equals the payoff mean
};

// bias is computed from the full path enumeration, covariance from
// first-period moments alone; the two routes agree exactly when the
// conditional-expectation decomposition holds.
struct CovarianceIdentity {
    double bias = 0.0;
    double covariance = 0.0;
};

// Averaging learner: first-period average decides n, final belief is the
// average of all k + n draws. Path-count guard: |support|^(k + max n) <= 1e8.
EnumerationResult enumerate_expected_final_average(const PayoffDistribution& dist, std::int32_t k,
                                                   const SamplingPolicy& policy);

// bias = E[final average] - u; covariance = Cov(S1, 1/(k + n)) with S1 the
// first-period sum (equivalently Cov of the average against k/(k + n)).
CovarianceIdentity enumerate_covariance_identity(const PayoffDistribution& dist, std::int32_t k,
                                                 const SamplingPolicy& policy);

// Recency-weighted learner folded from starting belief z0 through every path.
EnumerationResult enumerate_expected_final_belief_recency(const PayoffDistribution& dist,
                                                          std::int32_t k,
                                                          const SamplingPolicy& policy, double b,
                                                          double z0);

// bias = E[final belief] - u; covariance = Cov(z1, (1-b)^n(z1)). The identity
// requires z0 = u; both values are returned regardless.
CovarianceIdentity enumerate_recency_covariance_identity(const PayoffDistribution& dist,
                                                         std::int32_t k,
                                                         const SamplingPolicy& policy, double b,
                                                         double z0);

}  // namespace hotstove
