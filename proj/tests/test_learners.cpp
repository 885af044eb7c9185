#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hotstove/learners.hpp"

using hotstove::bayes_posterior_mean;
using hotstove::BeliefState;
using hotstove::Learner;
using hotstove::recency_closed_form;

TEST_CASE("averaging learner tracks the running sample mean") {
    const auto learner = Learner::averaging();
    BeliefState state = learner.initial_state();
    CHECK_FALSE(state.has_belief());
    CHECK_THROWS_AS(state.current_belief(), std::logic_error);

    learner.observe(state, 2.0);
    CHECK(state.current_belief() == 2.0);
    learner.observe(state, 4.0);
    CHECK(state.current_belief() == doctest::Approx(3.0).epsilon(1e-15));
    learner.observe(state, -6.0);
    CHECK(state.current_belief() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(state.count == 3);
    CHECK(state.sum_of_observations == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("bayes posterior mean returns the prior with no data") {
    CHECK(bayes_posterior_mean(1.5, 2.0, 3.0, 0.0, 0) == 1.5);
}

TEST_CASE("bayes posterior mean is a convex combination of prior and sample mean") {
    const double prior = -1.0, vu = 2.0, ve = 4.0;
    const double sum = 6.0;
    const std::int64_t n = 3;
    const double xbar = sum / n;
    const double post = bayes_posterior_mean(prior, vu, ve, sum, n);
    CHECK(post > std::min(prior, xbar));
    CHECK(post < std::max(prior, xbar));
    // weights: vu vs ve/n
    const double w = vu / (vu + ve / n);
    CHECK(post == doctest::Approx(w * xbar + (1.0 - w) * prior).epsilon(1e-15));
}

TEST_CASE("bayes posterior mean frozen example") {
    // vu = ve = 1, one observation at 1.5: posterior mean = 1.5/2 = 0.75
    CHECK(bayes_posterior_mean(0.0, 1.0, 1.0, 1.5, 1) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("bayes learner shrinks toward the sample mean as data accumulates") {
    const auto learner = Learner::bayes(0.0, 1.0, 1.0);
    BeliefState state = learner.initial_state();
    CHECK(state.current_belief() == 0.0);  // prior defined before data
    for (int i = 0; i < 50; ++i) learner.observe(state, 2.0);
    // with 50 identical draws the posterior mean is 2*50/51
    CHECK(state.current_belief() == doctest::Approx(100.0 / 51.0).epsilon(1e-14));
}

TEST_CASE("recency learner with weight one keeps only the newest observation") {
    const auto learner = Learner::recency(1.0, 5.0);
    BeliefState state = learner.initial_state();
    CHECK(state.current_belief() == 5.0);
    learner.observe(state, -3.0);
    CHECK(state.current_belief() == -3.0);
    learner.observe(state, 7.0);
    CHECK(state.current_belief() == 7.0);
}

TEST_CASE("recency closed form matches the sequential fold") {
    const double z0 = 0.4, b = 0.3;
    const std::vector<double> xs = {1.0, -2.0, 0.5, 3.25, -0.75};
    const auto learner = Learner::recency(b, z0);
    BeliefState state = learner.initial_state();
    for (double x : xs) learner.observe(state, x);
    CHECK(recency_closed_form(z0, b, xs) ==
          doctest::Approx(state.current_belief()).epsilon(1e-12));
}

TEST_CASE("recency closed form with no observations returns the start") {
    CHECK(recency_closed_form(1.25, 0.5, {}) == 1.25);
}

TEST_CASE("recency weights sum to one") {
    // starting belief 1 and all-ones observations must stay exactly at 1
    const std::vector<double> ones(17, 1.0);
    CHECK(recency_closed_form(1.0, 0.37, ones) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("learner factories validate their parameters") {
    CHECK_THROWS_AS(Learner::recency(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Learner::recency(1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Learner::bayes(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Learner::bayes(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("learner accessors expose the active rule") {
    CHECK(Learner::averaging().as_averaging() != nullptr);
    CHECK(Learner::averaging().as_recency() == nullptr);
    const auto rec = Learner::recency(0.25, 1.0);
    REQUIRE(rec.as_recency() != nullptr);
    CHECK(rec.as_recency()->weight == 0.25);
    const auto bay = Learner::bayes(1.0, 2.0, 3.0);
    REQUIRE(bay.as_bayes() != nullptr);
    CHECK(bay.as_bayes()->noise_variance == 3.0);
}
