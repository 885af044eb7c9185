#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hotstove/engine.hpp"
#include "hotstove/oracle.hpp"

using hotstove::PayoffDistribution;
using hotstove::SamplingPolicy;

namespace {

PayoffDistribution rademacher() {
    return PayoffDistribution::discrete_symmetric(0.0, {{1.0, 0.5}});
}

PayoffDistribution three_point_uniform() {
    return PayoffDistribution::finite_discrete(
        {{-1.0, 1.0 / 3.0}, {0.0, 1.0 / 3.0}, {1.0, 1.0 / 3.0}});
}

}  // namespace

TEST_CASE("rademacher with one draw and a doubling policy biases to -1/12") {
    const auto result =
        hotstove::enumerate_expected_final_average(rademacher(), 1, SamplingPolicy::step(0.0, 2, 1));
    CHECK(result.expected_final_belief == doctest::Approx(-1.0 / 12.0).epsilon(1e-14));
    CHECK(result.total_paths == 6);
    CHECK(result.prob_final_above_u + result.prob_final_below_u + result.prob_final_equal_u ==
          doctest::Approx(1.0).epsilon(1e-13));
    // hand enumeration: counts are symmetric here (0.375 each side, 0.25 at u);
    // the negative bias lives in the magnitudes, not the counts
    CHECK(result.prob_final_below_u == doctest::Approx(0.375).epsilon(1e-13));
    CHECK(result.prob_final_above_u == doctest::Approx(0.375).epsilon(1e-13));
    CHECK(result.prob_final_equal_u == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("bias equals the sum covariance on the enumerable cases") {
    const struct {
        PayoffDistribution dist;
        std::int32_t k;
        SamplingPolicy policy;
        double expected_bias;
        bool has_expected;
    } cases[] = {
        {rademacher(), 1, SamplingPolicy::step(0.0, 2, 1), -1.0 / 12.0, true},
        {rademacher(), 1, SamplingPolicy::step(0.0, 1, 2), 1.0 / 12.0, true},
        {three_point_uniform(), 2, SamplingPolicy::step(0.0, 3, 1), -8.0 / 135.0, true},
        {rademacher(), 3, SamplingPolicy::step(0.0, 4, 2), 0.0, false},
        {three_point_uniform(), 1, SamplingPolicy::affine(2.0, 1.0), 0.0, false},
        {rademacher(), 2, SamplingPolicy::step(0.5, 5, 2), 0.0, false},
    };
    for (const auto& c : cases) {
        CAPTURE(c.k);
        const auto identity = hotstove::enumerate_covariance_identity(c.dist, c.k, c.policy);
        CHECK(std::abs(identity.bias - identity.covariance) < 1e-12);
        if (c.has_expected)
            CHECK(identity.bias == doctest::Approx(c.expected_bias).epsilon(1e-12));
        if (c.policy.monotonicity_class() == hotstove::Monotonicity::increasing)
            CHECK(identity.bias < 0.0);
    }
}

TEST_CASE("shifted coin with a mean-anchored threshold biases to -0.125") {
    const auto coin = PayoffDistribution::finite_discrete({{-0.5, 0.5}, {1.5, 0.5}});
    REQUIRE(coin.mean() == doctest::Approx(0.5).epsilon(1e-15));
    const auto identity =
        hotstove::enumerate_covariance_identity(coin, 2, SamplingPolicy::step(0.5, 10, 1));
    CHECK(identity.bias == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(std::abs(identity.bias - identity.covariance) < 1e-12);
}

TEST_CASE("constant policies are unbiased and uncorrelated") {
    const auto identity =
        hotstove::enumerate_covariance_identity(three_point_uniform(), 2,
                                                SamplingPolicy::constant(3));
    CHECK(std::abs(identity.bias) < 1e-14);
    CHECK(std::abs(identity.covariance) < 1e-14);
}

TEST_CASE("decreasing policies bias upward") {
    const auto identity = hotstove::enumerate_covariance_identity(
        three_point_uniform(), 2, SamplingPolicy::step(0.0, 1, 3));
    CHECK(identity.bias > 0.0);
    CHECK(std::abs(identity.bias - identity.covariance) < 1e-12);
}

TEST_CASE("recency enumeration reproduces the frozen -0.0625 case") {
    const auto result = hotstove::enumerate_expected_final_belief_recency(
        rademacher(), 1, SamplingPolicy::step(0.0, 2, 1), 0.5, 0.0);
    CHECK(result.expected_final_belief == doctest::Approx(-0.0625).epsilon(1e-12));
    CHECK(result.prior_matches_mean);
    CHECK(result.prob_final_above_u + result.prob_final_below_u + result.prob_final_equal_u ==
          doctest::Approx(1.0).epsilon(1e-13));

    const auto identity = hotstove::enumerate_recency_covariance_identity(
        rademacher(), 1, SamplingPolicy::step(0.0, 2, 1), 0.5, 0.0);
    CHECK(identity.bias == doctest::Approx(-0.0625).epsilon(1e-14));
    CHECK(std::abs(identity.bias - identity.covariance) < 1e-12);
}

TEST_CASE("recency identity holds across weights and supports") {
    const struct {
        PayoffDistribution dist;
        std::int32_t k;
        double b;
    } cases[] = {
        {rademacher(), 1, 0.25},
        {rademacher(), 2, 0.5},
        {three_point_uniform(), 2, 0.25},
        {three_point_uniform(), 1, 1.0},
    };
    for (const auto& c : cases) {
        CAPTURE(c.b);
        CAPTURE(c.k);
        const auto identity = hotstove::enumerate_recency_covariance_identity(
            c.dist, c.k, SamplingPolicy::step(0.0, 3, 1), c.b, c.dist.mean());
        CHECK(std::abs(identity.bias - identity.covariance) < 1e-12);
        // with full weight on the newest draw the final belief is one payoff,
        // whose expectation is u, so the bias degenerates to zero
        if (c.b < 1.0) CHECK(identity.bias < 0.0);
    }
}

TEST_CASE("recency enumeration flags a starting belief away from the mean") {
    const auto result = hotstove::enumerate_expected_final_belief_recency(
        rademacher(), 1, SamplingPolicy::step(0.0, 2, 1), 0.5, 0.7);
    CHECK_FALSE(result.prior_matches_mean);
    // identity needs z0 = u; bias and covariance legitimately differ here
    const auto identity = hotstove::enumerate_recency_covariance_identity(
        rademacher(), 1, SamplingPolicy::step(0.0, 2, 1), 0.5, 0.7);
    CHECK(std::abs(identity.bias - identity.covariance) > 1e-6);
}

TEST_CASE("constant recency policy keeps the starting belief in expectation") {
    const auto identity = hotstove::enumerate_recency_covariance_identity(
        rademacher(), 1, SamplingPolicy::constant(3), 0.5, 0.0);
    CHECK(std::abs(identity.bias) < 1e-14);
    CHECK(std::abs(identity.covariance) < 1e-14);
}

TEST_CASE("path guard rejects infeasible enumerations") {
    std::vector<std::pair<double, double>> wide;
    for (int i = 0; i < 10; ++i) wide.emplace_back(static_cast<double>(i), 0.1);
    const auto dist = PayoffDistribution::finite_discrete(wide);
    CHECK_THROWS_AS(
        hotstove::enumerate_expected_final_average(dist, 8, SamplingPolicy::step(4.5, 2, 1)),
        std::invalid_argument);
    CHECK_THROWS_AS(hotstove::enumerate_expected_final_belief_recency(
                        dist, 8, SamplingPolicy::step(4.5, 2, 1), 0.5, 4.5),
                    std::invalid_argument);
}

TEST_CASE("enumeration requires a discrete payoff") {
    CHECK_THROWS_AS(hotstove::enumerate_expected_final_average(
                        PayoffDistribution::normal(0.0, 1.0), 1, SamplingPolicy::constant(1)),
                    std::invalid_argument);
}

TEST_CASE("enumeration agrees with an independent Monte Carlo run") {
    const auto policy = SamplingPolicy::step(0.0, 3, 1);
    const auto exact = hotstove::enumerate_expected_final_average(three_point_uniform(), 2, policy);

    hotstove::ExperimentConfig config{
        "oracle-vs-mc",
        hotstove::EnvironmentSpec::fixed_mean(three_point_uniform()),
        hotstove::Learner::averaging(),
        policy,
        2,
        100000,
        2718,
        std::nullopt};
    const auto mc = hotstove::run_experiment(config, 1);
    CHECK(std::abs(mc.summary.mean() - exact.expected_final_belief) <
          4.0 * mc.summary.se_mean());
    CHECK(std::abs(mc.summary.prob_below_reference() - exact.prob_final_below_u) <
          4.0 * std::sqrt(0.25 / 100000.0));
}

TEST_CASE("recency enumeration agrees with an independent Monte Carlo run") {
    const auto policy = SamplingPolicy::step(0.0, 2, 1);
    const double b = 0.5;
    const auto exact = hotstove::enumerate_expected_final_belief_recency(rademacher(), 1, policy,
                                                                         b, 0.0);

    hotstove::ExperimentConfig config{
        "recency-oracle-vs-mc",
        hotstove::EnvironmentSpec::fixed_mean(rademacher()),
        hotstove::Learner::recency(b, 0.0),
        policy,
        1,
        100000,
        3141,
        std::nullopt};
    const auto mc = hotstove::run_experiment(config, 1);
    CHECK(std::abs(mc.summary.mean() - exact.expected_final_belief) <
          4.0 * mc.summary.se_mean());
}
