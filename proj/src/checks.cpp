#include "hotstove/checks.hpp"

#include <cmath>
#include <stdexcept>

#include "hotstove/analytic.hpp"
#include "hotstove/config_io.hpp"
#include "hotstove/engine.hpp"
#include "hotstove/oracle.hpp"

namespace hotstove {

namespace {

constexpr double kExactTol = 1e-12;

PayoffDistribution rademacher() {
    return PayoffDistribution::finite_discrete({{-1.0, 0.5}, {1.0, 0.5}});
}

PayoffDistribution uniform_three() {
    return PayoffDistribution::finite_discrete({{-1.0, 1.0 / 3}, {0.0, 1.0 / 3}, {1.0, 1.0 / 3}});
}

PayoffDistribution shifted_coin() {
    return PayoffDistribution::finite_discrete({{-0.5, 0.5}, {1.5, 0.5}});
}

CheckResult near(int suite, std::string name, double observed, double target, double tol,
                 std::string detail = {}) {
    CheckResult r;
    r.suite = suite;
    r.name = std::move(name);
    r.observed = observed;
    r.threshold = tol;
    r.comparator = "|observed - " + format_double(target) + "| <= threshold";
    r.passed = std::abs(observed - target) <= tol;
    r.detail = std::move(detail);
    return r;
}

CheckResult above(int suite, std::string name, double observed, double cut,
                  std::string detail = {}) {
    CheckResult r;
    r.suite = suite;
    r.name = std::move(name);
    r.observed = observed;
    r.threshold = cut;
    r.comparator = "observed > threshold";
    r.passed = observed > cut;
    r.detail = std::move(detail);
    return r;
}

CheckResult below(int suite, std::string name, double observed, double cut,
                  std::string detail = {}) {
    CheckResult r;
    r.suite = suite;
    r.name = std::move(name);
    r.observed = observed;
    r.threshold = cut;
    r.comparator = "observed < threshold";
    r.passed = observed < cut;
    r.detail = std::move(detail);
    return r;
}

ExperimentConfig fixed_mean_config(std::string id, PayoffDistribution payoff, Learner learner,
                                   SamplingPolicy policy, std::int32_t k,
                                   const CheckBudget& budget, std::uint64_t seed_offset) {
    return ExperimentConfig{std::move(id),
                            EnvironmentSpec::fixed_mean(std::move(payoff)),
                            std::move(learner),
                            std::move(policy),
                            k,
                            budget.trials,
                            budget.seed + seed_offset,
                            std::nullopt};
}

ExperimentConfig conjugate_config(std::string id, double prior_mean, double prior_variance,
                                  double noise_variance, SamplingPolicy policy, std::int32_t k,
                                  const CheckBudget& budget, std::uint64_t seed_offset) {
    return ExperimentConfig{
        std::move(id),
        EnvironmentSpec::hierarchical_normal(prior_mean, prior_variance, noise_variance),
        Learner::bayes(prior_mean, prior_variance, noise_variance),
        std::move(policy),
        k,
        budget.trials,
        budget.seed + seed_offset,
        std::nullopt};
}

std::string mc_detail(const SummaryStats& s) {
    return "mean=" + format_double(s.mean()) + " se_mean=" + format_double(s.se_mean()) +
           " prob_below=" + format_double(s.prob_below_reference()) +
           " se_prob=" + format_double(s.se_prob()) + " trials=" + std::to_string(s.count());
}

// --- suite 1: averaging learner, exact enumeration identities plus Monte Carlo sign laws

void suite_averaging_bias(std::vector<CheckResult>& out, const CheckBudget& budget) {
    const auto step21 = SamplingPolicy::step(0.0, 2, 1);

    {
        const auto identity = enumerate_covariance_identity(rademacher(), 1, step21);
        out.push_back(near(1, "rademacher k=1 exact bias", identity.bias, -1.0 / 12, kExactTol));
        out.push_back(near(1, "rademacher k=1 bias equals covariance",
                           identity.bias - identity.covariance, 0.0, kExactTol,
                           "bias=" + format_double(identity.bias) +
                               " covariance=" + format_double(identity.covariance)));
    }
    {
        const auto identity =
            enumerate_covariance_identity(rademacher(), 1, SamplingPolicy::step(0.0, 1, 2));
        out.push_back(near(1, "rademacher k=1 reversed policy exact bias", identity.bias,
                           1.0 / 12, kExactTol));
        out.push_back(near(1, "rademacher k=1 reversed bias equals covariance",
                           identity.bias - identity.covariance, 0.0, kExactTol));
    }
    {
        const auto identity =
            enumerate_covariance_identity(uniform_three(), 2, SamplingPolicy::step(0.0, 3, 1));
        out.push_back(near(1, "three-point k=2 exact bias", identity.bias, -8.0 / 135, kExactTol));
        out.push_back(near(1, "three-point k=2 bias equals covariance",
                           identity.bias - identity.covariance, 0.0, kExactTol));
    }
    {
        const auto identity = enumerate_covariance_identity(shifted_coin(), 2,
                                                            SamplingPolicy::step(0.5, 10, 1));
        out.push_back(near(1, "shifted coin k=2 exact bias", identity.bias, -0.125, kExactTol));
        out.push_back(near(1, "shifted coin k=2 bias equals covariance",
                           identity.bias - identity.covariance, 0.0, kExactTol));
    }
    {
        const auto identity = enumerate_covariance_identity(rademacher(), 3, step21);
        out.push_back(near(1, "rademacher k=3 bias equals covariance",
                           identity.bias - identity.covariance, 0.0, kExactTol,
                           "bias=" + format_double(identity.bias)));
        out.push_back(below(1, "rademacher k=3 bias is negative", identity.bias, 0.0));
    }
    {
        const auto identity =
            enumerate_covariance_identity(uniform_three(), 2, SamplingPolicy::constant(4));
        out.push_back(near(1, "constant policy zero bias", identity.bias, 0.0, kExactTol));
        out.push_back(near(1, "constant policy zero covariance", identity.covariance, 0.0,
                           kExactTol));
    }
    {
        const auto identity =
            enumerate_covariance_identity(uniform_three(), 2, SamplingPolicy::step(0.0, 1, 3));
        out.push_back(above(1, "decreasing policy positive bias", identity.bias, 0.0));
        out.push_back(near(1, "decreasing policy bias equals covariance",
                           identity.bias - identity.covariance, 0.0, kExactTol));
    }

    {
        const auto run = run_experiment(
            fixed_mean_config("mc-rademacher", rademacher(), Learner::averaging(), step21, 1,
                              budget, 11),
            budget.threads);
        out.push_back(near(1, "monte carlo matches enumeration (rademacher)",
                           run.summary.mean(), -1.0 / 12, 4.0 * run.summary.se_mean(),
                           mc_detail(run.summary)));
    }
    {
        const auto run = run_experiment(
            fixed_mean_config("mc-normal-increasing", PayoffDistribution::normal(0.0, 1.0),
                              Learner::averaging(), SamplingPolicy::step(0.0, 10, 1), 2, budget,
                              12),
            budget.threads);
        out.push_back(below(1, "normal payoff mean below truth", run.summary.mean(),
                            -4.0 * run.summary.se_mean(), mc_detail(run.summary)));
    }
    {
        const auto run = run_experiment(
            fixed_mean_config("mc-laplace-increasing", PayoffDistribution::laplace(0.0, 1.0),
                              Learner::averaging(), SamplingPolicy::step(0.0, 10, 1), 2, budget,
                              13),
            budget.threads);
        out.push_back(below(1, "laplace payoff mean below truth", run.summary.mean(),
                            -4.0 * run.summary.se_mean(), mc_detail(run.summary)));
    }
    {
        const auto run = run_experiment(
            fixed_mean_config("mc-constant", PayoffDistribution::normal(0.0, 1.0),
                              Learner::averaging(), SamplingPolicy::constant(5), 2, budget, 14),
            budget.threads);
        out.push_back(near(1, "constant policy unbiased mean", run.summary.mean(), 0.0,
                           4.0 * run.summary.se_mean(), mc_detail(run.summary)));
    }
}

// --- suite 2: proportion of final averages on the low side

void suite_wrong_side_majority(std::vector<CheckResult>& out, const CheckBudget& budget) {
    const auto increasing = SamplingPolicy::step(0.0, 10, 1);
    const auto decreasing = SamplingPolicy::step(0.0, 1, 10);

    const auto run_prob = [&](const char* id, PayoffDistribution payoff,
                              const SamplingPolicy& policy, std::uint64_t offset) {
        return run_experiment(fixed_mean_config(id, std::move(payoff), Learner::averaging(),
                                                policy, 2, budget, offset),
                              budget.threads);
    };

    {
        const auto run =
            run_prob("prob-normal-increasing", PayoffDistribution::normal(0.0, 1.0), increasing,
                     21);
        out.push_back(above(2, "normal payoff majority below truth",
                            run.summary.prob_below_reference(),
                            0.5 + 4.0 * run.summary.se_prob(), mc_detail(run.summary)));
    }
    {
        const auto run =
            run_prob("prob-laplace-increasing", PayoffDistribution::laplace(0.0, 1.0), increasing,
                     22);
        out.push_back(above(2, "laplace payoff majority below truth",
                            run.summary.prob_below_reference(),
                            0.5 + 4.0 * run.summary.se_prob(), mc_detail(run.summary)));
    }
    {
        const auto run =
            run_prob("prob-normal-decreasing", PayoffDistribution::normal(0.0, 1.0), decreasing,
                     23);
        out.push_back(below(2, "normal payoff majority flips for decreasing policy",
                            run.summary.prob_below_reference(),
                            0.5 - 4.0 * run.summary.se_prob(), mc_detail(run.summary)));
    }
    {
        const auto run =
            run_prob("prob-laplace-decreasing", PayoffDistribution::laplace(0.0, 1.0), decreasing,
                     24);
        out.push_back(below(2, "laplace payoff majority flips for decreasing policy",
                            run.summary.prob_below_reference(),
                            0.5 - 4.0 * run.summary.se_prob(), mc_detail(run.summary)));
    }

    out.push_back(near(2, "single-draw tail probability", normal_sum_tail_prob(1, 1.0, 1.0),
                       0.15865525393145707, kExactTol));
    out.push_back(above(2, "sum tail probability grows with more draws",
                        normal_sum_tail_prob(2, 1.0, 1.0), normal_sum_tail_prob(1, 1.0, 1.0)));
}

// --- suite 3: recency-weighted learner

void suite_recency(std::vector<CheckResult>& out, const CheckBudget& budget) {
    {
        const auto identity = enumerate_recency_covariance_identity(
            rademacher(), 1, SamplingPolicy::step(0.0, 2, 1), 0.5, 0.0);
        out.push_back(near(3, "rademacher recency exact bias", identity.bias, -0.0625, kExactTol));
        out.push_back(near(3, "rademacher recency bias equals covariance",
                           identity.bias - identity.covariance, 0.0, kExactTol,
                           "bias=" + format_double(identity.bias) +
                               " covariance=" + format_double(identity.covariance)));
    }
    {
        const auto identity = enumerate_recency_covariance_identity(
            rademacher(), 1, SamplingPolicy::step(0.0, 1, 2), 0.5, 0.0);
        out.push_back(near(3, "rademacher recency reversed exact bias", identity.bias, 0.0625,
                           kExactTol));
    }
    {
        const auto result = enumerate_expected_final_belief_recency(
            rademacher(), 1, SamplingPolicy::constant(3), 0.5, 0.0);
        out.push_back(near(3, "recency constant policy unbiased",
                           result.expected_final_belief, 0.0, kExactTol));
    }
    {
        const auto identity = enumerate_recency_covariance_identity(
            uniform_three(), 2, SamplingPolicy::step(0.0, 3, 1), 0.25, 0.0);
        out.push_back(near(3, "three-point recency bias equals covariance",
                           identity.bias - identity.covariance, 0.0, kExactTol));
    }

    out.push_back(near(3, "two-step decay of starting belief",
                       recency_conditional_expectation(1.0, 0.5, 2, 0.0), 0.25, 1e-15));

    const auto run_recency = [&](const char* id, double weight, const SamplingPolicy& policy,
                                 std::uint64_t offset) {
        return run_experiment(
            fixed_mean_config(id, PayoffDistribution::normal(0.0, 1.0),
                              Learner::recency(weight, 0.0), policy, 2, budget, offset),
            budget.threads);
    };
    {
        const auto run = run_recency("recency-b01", 0.1, SamplingPolicy::step(0.0, 10, 1), 31);
        out.push_back(below(3, "slow recency mean below truth", run.summary.mean(),
                            -4.0 * run.summary.se_mean(), mc_detail(run.summary)));
    }
    {
        const auto run = run_recency("recency-b05", 0.5, SamplingPolicy::step(0.0, 10, 1), 32);
        out.push_back(below(3, "fast recency mean below truth", run.summary.mean(),
                            -4.0 * run.summary.se_mean(), mc_detail(run.summary)));
    }
    {
        const auto run = run_recency("recency-decreasing", 0.5, SamplingPolicy::step(0.0, 1, 10),
                                     33);
        out.push_back(above(3, "recency mean flips for decreasing policy", run.summary.mean(),
                            4.0 * run.summary.se_mean(), mc_detail(run.summary)));
    }
}

// --- suite 4: conjugate learner martingale

void suite_martingale(std::vector<CheckResult>& out, const CheckBudget& budget) {
    const auto run_mean = [&](const char* id, double noise_variance, SamplingPolicy policy,
                              double prior_mean, std::uint64_t offset) {
        return run_experiment(conjugate_config(id, prior_mean, 1.0, noise_variance,
                                               std::move(policy), 2, budget, offset),
                              budget.threads);
    };
    {
        const auto run = run_mean("martingale-e1", 1.0, SamplingPolicy::step(0.0, 10, 1), 0.0, 41);
        out.push_back(near(4, "mean belief stays at prior (noise variance 1)", run.summary.mean(),
                           0.0, 4.0 * run.summary.se_mean(), mc_detail(run.summary)));
    }
    {
        const auto run = run_mean("martingale-e5", 5.0, SamplingPolicy::step(0.0, 10, 1), 0.0, 42);
        out.push_back(near(4, "mean belief stays at prior (noise variance 5)", run.summary.mean(),
                           0.0, 4.0 * run.summary.se_mean(), mc_detail(run.summary)));
    }
    {
        const auto run = run_mean("martingale-decreasing", 1.0, SamplingPolicy::step(0.0, 1, 10),
                                  0.0, 43);
        out.push_back(near(4, "mean belief stays at prior (decreasing policy)",
                           run.summary.mean(), 0.0, 4.0 * run.summary.se_mean(),
                           mc_detail(run.summary)));
    }
    {
        const auto run = run_mean("martingale-shifted", 1.0, SamplingPolicy::step(1.0, 10, 1),
                                  1.0, 44);
        out.push_back(near(4, "mean belief stays at nonzero prior", run.summary.mean(), 1.0,
                           4.0 * run.summary.se_mean(), mc_detail(run.summary)));
    }
}

// --- suite 5: sign-flip probabilities

void suite_sign_flips(std::vector<CheckResult>& out, const CheckBudget& budget) {
    const auto increasing = SamplingPolicy::step(0.0, 10, 1);
    const QuadratureSettings settings;

    const double p_var1 = bayes_prob_final_negative(2, increasing, 1.0, 1.0, settings);
    out.push_back(near(5, "quadrature final-negative probability (noise variance 1)", p_var1,
                       0.534, 0.002));

    const double p_var25 = bayes_prob_final_negative(2, increasing, 1.0, 25.0, settings);
    out.push_back(near(5, "quadrature final-negative probability (noise sd 5)", p_var25, 0.577,
                       0.002));

    {
        const double pos = flip_prob_pos_to_neg(2, increasing, 1.0, 1.0, settings);
        const double neg = flip_prob_neg_to_pos(2, increasing, 1.0, 1.0, settings);
        out.push_back(above(5, "positive beliefs flip more often than negative ones", pos - neg,
                            1e-6, "pos_to_neg=" + format_double(pos) +
                                      " neg_to_pos=" + format_double(neg)));
    }
    {
        const double p_const =
            bayes_prob_final_negative(2, SamplingPolicy::constant(5), 1.0, 1.0, settings);
        out.push_back(near(5, "constant policy is symmetric", p_const, 0.5, 1e-9));
    }
    {
        QuadratureSettings halved = settings;
        halved.relative_tolerance = settings.relative_tolerance / 2.0;
        const double refined = bayes_prob_final_negative(2, increasing, 1.0, 1.0, halved);
        out.push_back(near(5, "quadrature self-consistency under tighter tolerance",
                           p_var1 - refined, 0.0, 1e-9));
    }

    const auto run_bayes = [&](const char* id, double noise_variance, std::uint64_t offset) {
        return run_experiment(conjugate_config(id, 0.0, 1.0, noise_variance, increasing, 2,
                                               budget, offset),
                              budget.threads);
    };
    {
        const auto run = run_bayes("flip-mc-e1", 1.0, 51);
        out.push_back(near(5, "monte carlo final-negative probability (noise variance 1)",
                           run.summary.prob_below_reference(), 0.534, 0.003,
                           mc_detail(run.summary)));
    }
    {
        const auto run = run_bayes("flip-mc-e25", 25.0, 52);
        out.push_back(near(5, "monte carlo final-negative probability (noise sd 5)",
                           run.summary.prob_below_reference(), 0.577, 0.003,
                           mc_detail(run.summary)));
    }
    {
        const auto run = run_bayes("flip-mc-e5", 5.0, 53);
        const double quad = bayes_prob_final_negative(2, increasing, 1.0, 5.0, settings);
        out.push_back(near(5, "quadrature agrees with monte carlo (noise variance 5)",
                           run.summary.prob_below_reference(), quad,
                           4.0 * run.summary.se_prob(), mc_detail(run.summary)));
    }
}

}  // namespace

std::vector<CheckResult> run_theorem_suite(int suite, const CheckBudget& budget) {
    std::vector<CheckResult> out;
    switch (suite) {
        case 1:
            suite_averaging_bias(out, budget);
            break;
        case 2:
            suite_wrong_side_majority(out, budget);
            break;
        case 3:
            suite_recency(out, budget);
            break;
        case 4:
            suite_martingale(out, budget);
            break;
        case 5:
            suite_sign_flips(out, budget);
            break;
        default:
            throw std::invalid_argument("suite must be 1 through 5");
    }
    return out;
}

std::vector<CheckResult> run_all_theorem_suites(const CheckBudget& budget) {
    std::vector<CheckResult> all;
    for (int suite = 1; suite <= 5; ++suite) {
        auto results = run_theorem_suite(suite, budget);
        all.insert(all.end(), results.begin(), results.end());
    }
    return all;
}

}  // namespace hotstove
