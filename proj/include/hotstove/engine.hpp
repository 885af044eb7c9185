#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "hotstove/distributions.hpp"
#include "hotstove/learners.hpp"
#include "hotstove/policies.hpp"
#include "hotstove/stats.hpp"

namespace hotstove {

// Learner and environment do not form a coherent model (a conjugate learner
// needs the matching hierarchical environment; averaging and recency learners
// need a fixed payoff mean).
class IncompatibleConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HistogramSpec {
    std::int32_t bins = 0;
    double min = 0.0;
    double max = 0.0;
};

struct ExperimentConfig {
    std::string id;
    EnvironmentSpec environment;
    Learner learner;
    SamplingPolicy policy;
    std::int32_t k = 1;
    std::int64_t trials = 1;
    std::uint64_t seed = 0;
    std::optional<HistogramSpec> histogram;
};

void validate_config(const ExperimentConfig& config);

struct TrialOutcome {
    double first_period_signal = 0.0;
    std::int32_t second_period_n = 0;
    double final_belief = 0.0;
    double true_mean = 0.0;
};

// One two-period episode: (hierarchical environments draw their mean first,)
// k draws fold into the first-period signal, the policy picks n, n more draws
// fold into the final belief. Exactly k + n payoff draws are consumed, and the
// outcome is a pure function of (config, trial_index).
TrialOutcome run_trial(const ExperimentConfig& config, std::uint64_t trial_index);

struct ExperimentResult {
    SummaryStats summary;
    std::optional<Histogram> histogram;
};

// threads <= 0 resolves via HOTSTOVE_THREADS, then hardware concurrency.
// Trials are processed in fixed-size blocks merged in block order, so the
// result is identical for every worker count.
ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 0);

int resolve_thread_count(int requested);

}  // namespace hotstove
