#include "hotstove/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "hotstove/rng.hpp"

namespace hotstove {

namespace {

constexpr std::int64_t kBlockSize = 16384;

void check_bayes_pairing(const BayesRule& learner, const EnvironmentSpec& env) {
    const auto* h = env.as_hierarchical();
    if (h == nullptr)
        throw IncompatibleConfigError(
            "a conjugate normal learner requires a hierarchical normal environment");
    if (learner.prior_mean != h->prior_mean || learner.prior_variance != h->prior_variance ||
        learner.noise_variance != h->noise_variance)
        throw IncompatibleConfigError(
            "learner prior does not match the environment (prior_mean, prior_variance, "
            "noise_variance must be identical)");
}

}  // namespace

void validate_config(const ExperimentConfig& config) {
    if (config.k < 1) throw std::invalid_argument("config: k must be >= 1");
    if (config.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (const auto* bayes = config.learner.as_bayes()) {
        check_bayes_pairing(*bayes, config.environment);
    } else if (config.environment.as_fixed_mean() == nullptr) {
        throw IncompatibleConfigError(
            "averaging and recency learners require a fixed-mean environment");
    }
    if (config.histogram) {
        if (config.histogram->bins < 2)
            throw std::invalid_argument("config: histogram needs at least 2 bins");
        if (!(config.histogram->min < config.histogram->max))
            throw std::invalid_argument("config: histogram min must be < max");
    }
}

TrialOutcome run_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
    TrialRng rng = derive_trial_rng(config.seed, trial_index);

    const PayoffDistribution* payoff = nullptr;
    double true_mean = 0.0;
    double noise_sd = 0.0;
    if (const auto* h = config.environment.as_hierarchical()) {
        true_mean = h->prior_mean + std::sqrt(h->prior_variance) * rng.normal();
        noise_sd = std::sqrt(h->noise_variance);
    } else {
        payoff = &config.environment.as_fixed_mean()->payoff;
        true_mean = payoff->mean();
    }
    const auto draw = [&]() {
        return payoff != nullptr ? payoff->sample(rng) : true_mean + noise_sd * rng.normal();
    };

    BeliefState state = config.learner.initial_state();
    for (std::int32_t i = 0; i < config.k; ++i) config.learner.observe(state, draw());
    const double signal = state.current_belief();
    const std::int32_t n = config.policy.sample_size(signal);
    for (std::int32_t i = 0; i < n; ++i) config.learner.observe(state, draw());

    return {signal, n, state.current_belief(), true_mean};
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HOTSTOVE_THREADS")) {
        int parsed = 0;
        try {
            parsed = std::stoi(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("HOTSTOVE_THREADS must be a positive integer");
        }
        if (parsed < 1) throw std::invalid_argument("HOTSTOVE_THREADS must be a positive integer");
        return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
    validate_config(config);
    const int workers = resolve_thread_count(threads);
    const double reference = config.environment.reference_mean();
    const std::int64_t n_blocks = (config.trials + kBlockSize - 1) / kBlockSize;

    struct BlockResult {
        SummaryStats summary;
        std::optional<Histogram> histogram;
    };
    std::vector<BlockResult> blocks(static_cast<std::size_t>(n_blocks));

    std::atomic<std::int64_t> next_block{0};
    const auto work = [&]() {
        for (;;) {
            const std::int64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            SummaryStats summary(reference);
            std::optional<Histogram> hist;
            if (config.histogram)
                hist.emplace(config.histogram->min, config.histogram->max, config.histogram->bins);
            const std::int64_t lo = b * kBlockSize;
            const std::int64_t hi = std::min(config.trials, lo + kBlockSize);
            for (std::int64_t i = lo; i < hi; ++i) {
                const TrialOutcome outcome = run_trial(config, static_cast<std::uint64_t>(i));
                summary.add(outcome.final_belief);
                if (hist) hist->add(outcome.final_belief);
            }
            blocks[static_cast<std::size_t>(b)] = {summary, std::move(hist)};
        }
    };

    const int spawned = static_cast<int>(std::min<std::int64_t>(workers, n_blocks));
    if (spawned <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(spawned));
        for (int t = 0; t < spawned; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    ExperimentResult result{SummaryStats(reference), std::nullopt};
    if (config.histogram)
        result.histogram.emplace(config.histogram->min, config.histogram->max,
                                 config.histogram->bins);
    for (auto& block : blocks) {
        result.summary.merge(block.summary);
        if (result.histogram) result.histogram->merge(*block.histogram);
    }
    return result;
}

}  // namespace hotstove
