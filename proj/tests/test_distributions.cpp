#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hotstove/distributions.hpp"
#include "hotstove/rng.hpp"

using hotstove::PayoffDistribution;
using hotstove::TrialRng;

namespace {

// Simpson-rule reference for E[X | X > c], X ~ Normal(0, sd^2), integrating
// x*phi(x) far enough into the tail that the truncation error is negligible.
double truncated_mean_by_simpson(double c, double sd) {
    const double hi = c + 14.0 * sd;
    const int steps = 400000;  // even
    const double h = (hi - c) / steps;
    auto numerator_f = [&](double x) { return x * hotstove::normal_pdf(x, 0.0, sd * sd); };
    double num = numerator_f(c) + numerator_f(hi);
    for (int i = 1; i < steps; ++i) num += numerator_f(c + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    num *= h / 3.0;
    const double denom = 1.0 - hotstove::normal_cdf(c, 0.0, sd * sd);
    return num / denom;
}

struct Moments {
    double mean;
    double variance;
};

Moments sample_moments(const PayoffDistribution& dist, int n, std::uint64_t seed) {
    TrialRng rng(seed, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = dist.sample(rng);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    return {mean, sum_sq / n - mean * mean};
}

}  // namespace

TEST_CASE("standard normal cdf matches frozen table values") {
    CHECK(hotstove::normal_cdf(0.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(hotstove::normal_cdf(1.96, 0.0, 1.0) ==
          doctest::Approx(0.9750021048517795).epsilon(1e-14));
    CHECK(hotstove::normal_cdf(-1.0, 0.0, 1.0) ==
          doctest::Approx(0.15865525393145707).epsilon(1e-14));
    // location/scale reduction
    CHECK(hotstove::normal_cdf(3.0, 1.0, 4.0) ==
          doctest::Approx(hotstove::normal_cdf(1.0, 0.0, 1.0)).epsilon(1e-15));
}

TEST_CASE("normal pdf normalizes and peaks at the mean") {
    CHECK(hotstove::normal_pdf(0.0, 0.0, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));
    CHECK(hotstove::normal_pdf(2.0, 2.0, 9.0) ==
          doctest::Approx(1.0 / (3.0 * std::sqrt(2.0 * M_PI))).epsilon(1e-15));
    CHECK(hotstove::normal_pdf(1.0, 0.0, 1.0) == doctest::Approx(std::exp(-0.5) /
                                                                 std::sqrt(2.0 * M_PI)));
}

TEST_CASE("truncated normal mean above zero is sqrt(2/pi)") {
    CHECK(hotstove::truncated_normal_mean_above(0.0, 1.0) ==
          doctest::Approx(0.7978845608028654).epsilon(1e-14));
}

TEST_CASE("truncated normal mean above one matches frozen value") {
    CHECK(hotstove::truncated_normal_mean_above(1.0, 1.0) ==
          doctest::Approx(1.525135276160981).epsilon(1e-13));
}

TEST_CASE("truncated normal mean agrees with a Simpson-rule reference") {
    for (double c : {-2.0, -0.5, 0.3, 1.7, 4.0}) {
        CAPTURE(c);
        CHECK(hotstove::truncated_normal_mean_above(c, 1.0) ==
              doctest::Approx(truncated_mean_by_simpson(c, 1.0)).epsilon(1e-9));
    }
    CHECK(hotstove::truncated_normal_mean_above(2.5, 3.0) ==
          doctest::Approx(truncated_mean_by_simpson(2.5, 3.0)).epsilon(1e-9));
}

TEST_CASE("truncated normal mean is continuous across the asymptotic switch") {
    const double sd = 1.0;
    // one ulp either side of the branch point isolates the branch mismatch
    // from the function's own slope
    const double just_below =
        hotstove::truncated_normal_mean_above(std::nextafter(26.0, 0.0), sd);
    const double just_above =
        hotstove::truncated_normal_mean_above(std::nextafter(26.0, 100.0), sd);
    CHECK(std::abs(just_above - just_below) < 1e-10);
    // far past where 1 - Phi cancels, still finite and sane
    const double at_twelve = hotstove::truncated_normal_mean_above(12.0, sd);
    CHECK(at_twelve > 12.0);
    CHECK(at_twelve < 12.1);
    // deep tail: E[X | X > c] barely exceeds c
    const double deep = hotstove::truncated_normal_mean_above(40.0, sd);
    CHECK(deep > 40.0);
    CHECK(deep < 40.05);
}

TEST_CASE("truncated normal mean below mirrors the mean above") {
    for (double c : {-1.5, 0.0, 2.0}) {
        CAPTURE(c);
        CHECK(hotstove::truncated_normal_mean_below(c, 1.0) ==
              doctest::Approx(-hotstove::truncated_normal_mean_above(-c, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("payoff constructors validate their parameters") {
    CHECK_THROWS_AS(PayoffDistribution::normal(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(PayoffDistribution::normal(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PayoffDistribution::laplace(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PayoffDistribution::discrete_symmetric(0.0, {{1.0, 0.3}}),
                    std::invalid_argument);  // mass 0.6 != 1
    CHECK_THROWS_AS(PayoffDistribution::discrete_symmetric(0.0, {{0.0, 0.5}}),
                    std::invalid_argument);  // zero offset
    CHECK_THROWS_AS(PayoffDistribution::finite_discrete({{1.0, 0.7}, {2.0, 0.7}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PayoffDistribution::finite_discrete({{1.0, -0.5}, {2.0, 1.5}}),
                    std::invalid_argument);
}

TEST_CASE("discrete symmetric payoff expands to a mirrored support") {
    const auto dist = PayoffDistribution::discrete_symmetric(2.0, {{1.0, 0.25}, {3.0, 0.25}});
    CHECK(dist.is_discrete());
    CHECK(dist.finite_support().size() == 4);
    CHECK(dist.mean() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dist.variance() == doctest::Approx(0.5 * 1.0 + 0.5 * 9.0).epsilon(1e-14));
}

TEST_CASE("finite discrete payoff reports exact moments") {
    const auto dist =
        PayoffDistribution::finite_discrete({{-1.0, 0.25}, {0.0, 0.5}, {1.0, 0.25}});
    CHECK(dist.mean() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(dist.variance() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dist.finite_support().size() == 3);
}

TEST_CASE("continuous payoffs report closed-form moments and empty support") {
    const auto normal = PayoffDistribution::normal(1.5, 4.0);
    CHECK(normal.mean() == 1.5);
    CHECK(normal.variance() == 4.0);
    CHECK_FALSE(normal.is_discrete());

    const auto laplace = PayoffDistribution::laplace(-2.0, 3.0);
    CHECK(laplace.mean() == -2.0);
    CHECK(laplace.variance() == doctest::Approx(2.0 * 9.0).epsilon(1e-15));
}

TEST_CASE("sampling reproduces the declared moments") {
    const int n = 100000;
    const struct {
        PayoffDistribution dist;
        std::uint64_t seed;
    } cases[] = {
        {PayoffDistribution::normal(0.5, 2.0), 11},
        {PayoffDistribution::laplace(-1.0, 2.0), 12},
        {PayoffDistribution::discrete_symmetric(0.0, {{1.0, 0.5}}), 13},
        {PayoffDistribution::finite_discrete({{-1.0, 0.2}, {0.0, 0.3}, {2.0, 0.5}}), 14},
    };
    for (const auto& c : cases) {
        CAPTURE(c.seed);
        const auto m = sample_moments(c.dist, n, c.seed);
        const double se_mean = std::sqrt(c.dist.variance() / n);
        CHECK(std::abs(m.mean - c.dist.mean()) < 4.0 * se_mean);
        // loose bound on the variance estimate, enough to catch scale errors
        CHECK(m.variance == doctest::Approx(c.dist.variance()).epsilon(0.05));
    }
}

TEST_CASE("rademacher sampler hits both sides evenly") {
    const auto dist = PayoffDistribution::discrete_symmetric(0.0, {{1.0, 0.5}});
    TrialRng rng(99, 0);
    int plus = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) plus += dist.sample(rng) > 0.0 ? 1 : 0;
    const double p = static_cast<double>(plus) / n;
    CHECK(std::abs(p - 0.5) < 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("environment reference mean comes from the payoff or the prior") {
    const auto fixed = hotstove::EnvironmentSpec::fixed_mean(PayoffDistribution::normal(2.5, 1.0));
    CHECK(fixed.reference_mean() == 2.5);
    CHECK(fixed.as_fixed_mean() != nullptr);
    CHECK(fixed.as_hierarchical() == nullptr);

    const auto hier = hotstove::EnvironmentSpec::hierarchical_normal(-1.0, 1.0, 25.0);
    CHECK(hier.reference_mean() == -1.0);
    CHECK(hier.as_hierarchical() != nullptr);
    CHECK(hier.as_fixed_mean() == nullptr);
}

TEST_CASE("hierarchical environment validates variances") {
    CHECK_THROWS_AS(hotstove::EnvironmentSpec::hierarchical_normal(0.0, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(hotstove::EnvironmentSpec::hierarchical_normal(0.0, 1.0, -2.0),
                    std::invalid_argument);
}
