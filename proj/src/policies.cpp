#include "hotstove/policies.hpp"

#include <cmath>
#include <stdexcept>

namespace hotstove {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

SamplingPolicy::SamplingPolicy(Variant v) : value_(std::move(v)) {}

SamplingPolicy SamplingPolicy::step(double threshold, std::int32_t high, std::int32_t low) {
    require(std::isfinite(threshold), "step policy: threshold must be finite");
    require(high >= 1, "step policy: high must be >= 1");
    require(low >= 1, "step policy: low must be >= 1");
    return SamplingPolicy(StepPolicy{threshold, high, low});
}

SamplingPolicy SamplingPolicy::affine(double base, double slope) {
    require(std::isfinite(base), "affine policy: base must be finite");
    require(std::isfinite(slope), "affine policy: slope must be finite");
    return SamplingPolicy(AffinePolicy{base, slope});
}

SamplingPolicy SamplingPolicy::constant(std::int32_t n) {
    require(n >= 1, "constant policy: n must be >= 1");
    return SamplingPolicy(ConstantPolicy{n});
}

std::int32_t SamplingPolicy::sample_size(double signal) const {
    if (const auto* s = std::get_if<StepPolicy>(&value_)) {
        return signal > s->threshold ? s->high : s->low;
    }
    if (const auto* a = std::get_if<AffinePolicy>(&value_)) {
        const double raw = std::round(a->base + a->slope * signal);
        if (!(raw >= 1.0)) return 1;  // also catches NaN
        if (raw >= static_cast<double>(kMaxSampleSize)) return kMaxSampleSize;
        return static_cast<std::int32_t>(raw);
    }
    return std::get<ConstantPolicy>(value_).n;
}

Monotonicity SamplingPolicy::monotonicity_class() const {
    if (const auto* s = std::get_if<StepPolicy>(&value_)) {
        if (s->high > s->low) return Monotonicity::increasing;
        if (s->high < s->low) return Monotonicity::decreasing;
        return Monotonicity::constant;
    }
    if (const auto* a = std::get_if<AffinePolicy>(&value_)) {
        if (a->slope > 0.0) return Monotonicity::increasing;
        if (a->slope < 0.0) return Monotonicity::decreasing;
        return Monotonicity::constant;
    }
    return Monotonicity::constant;
}

}  // namespace hotstove
