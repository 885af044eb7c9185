#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "hotstove/policies.hpp"

using hotstove::Monotonicity;
using hotstove::SamplingPolicy;

TEST_CASE("step policy switches strictly above the threshold") {
    const auto policy = SamplingPolicy::step(0.0, 10, 1);
    CHECK(policy.sample_size(0.5) == 10);
    CHECK(policy.sample_size(0.0) == 1);  // at the threshold takes the low branch
    CHECK(policy.sample_size(-0.5) == 1);
    CHECK(policy.sample_size(1e-300) == 10);
}

TEST_CASE("step policy classification follows the high/low ordering") {
    CHECK(SamplingPolicy::step(0.0, 10, 1).monotonicity_class() == Monotonicity::increasing);
    CHECK(SamplingPolicy::step(0.0, 1, 10).monotonicity_class() == Monotonicity::decreasing);
    CHECK(SamplingPolicy::step(0.0, 3, 3).monotonicity_class() == Monotonicity::constant);
}

TEST_CASE("step policy rejects non-positive branch sizes") {
    CHECK_THROWS_AS(SamplingPolicy::step(0.0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(SamplingPolicy::step(0.0, 10, -1), std::invalid_argument);
}

TEST_CASE("constant policy ignores the signal") {
    const auto policy = SamplingPolicy::constant(7);
    CHECK(policy.sample_size(-1e9) == 7);
    CHECK(policy.sample_size(0.0) == 7);
    CHECK(policy.sample_size(1e9) == 7);
    CHECK(policy.monotonicity_class() == Monotonicity::constant);
    CHECK_THROWS_AS(SamplingPolicy::constant(0), std::invalid_argument);
}

TEST_CASE("affine policy rounds half away from zero") {
    const auto policy = SamplingPolicy::affine(2.0, 1.0);
    CHECK(policy.sample_size(0.5) == 3);   // 2.5 rounds up
    CHECK(policy.sample_size(0.49) == 2);
    CHECK(policy.sample_size(1.5) == 4);   // 3.5 rounds up
    CHECK(policy.sample_size(-0.4) == 2);
}

TEST_CASE("affine policy clamps to at least one draw") {
    const auto policy = SamplingPolicy::affine(2.0, 1.0);
    CHECK(policy.sample_size(-5.0) == 1);
    CHECK(policy.sample_size(-1e308) == 1);

    const auto decreasing = SamplingPolicy::affine(3.0, -2.0);
    CHECK(decreasing.sample_size(10.0) == 1);
}

TEST_CASE("affine policy clamps huge requests instead of overflowing") {
    const auto policy = SamplingPolicy::affine(0.0, 1e12);
    CHECK(policy.sample_size(1e9) == SamplingPolicy::kMaxSampleSize);
}

TEST_CASE("affine policy classification follows the slope sign") {
    CHECK(SamplingPolicy::affine(2.0, 0.5).monotonicity_class() == Monotonicity::increasing);
    CHECK(SamplingPolicy::affine(2.0, -0.5).monotonicity_class() == Monotonicity::decreasing);
    CHECK(SamplingPolicy::affine(2.0, 0.0).monotonicity_class() == Monotonicity::constant);
}

TEST_CASE("policy accessors expose the active variant") {
    const auto step = SamplingPolicy::step(1.0, 4, 2);
    REQUIRE(step.as_step() != nullptr);
    CHECK(step.as_step()->threshold == 1.0);
    CHECK(step.as_affine() == nullptr);
    CHECK(step.as_constant() == nullptr);

    const auto affine = SamplingPolicy::affine(5.0, -1.0);
    REQUIRE(affine.as_affine() != nullptr);
    CHECK(affine.as_affine()->slope == -1.0);
}
