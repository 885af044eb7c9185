#pragma once

#include <cstdint>
#include <variant>

namespace hotstove {

// How the second-period sample size responds to the first-period signal.
enum class Monotonicity { increasing, decreasing, constant };

struct StepPolicy {
    double threshold;
    std::int32_t high;  // sample size when signal > threshold
    std::int32_t low;   // sample size when signal <= threshold
};

struct AffinePolicy {
    double base;
    double slope;  // sample size = round(base + slope * signal), clamped to [1, max]
};

struct ConstantPolicy {
    std::int32_t n;
};

class SamplingPolicy {
public:
    static constexpr std::int32_t kMaxSampleSize = 0x7fffffff;

    static SamplingPolicy step(double threshold, std::int32_t high, std::int32_t low);
    static SamplingPolicy affine(double base, double slope);
    static SamplingPolicy constant(std::int32_t n);

    // Always >= 1; affine rounds half away from zero and clamps.
    std::int32_t sample_size(double signal) const;

    Monotonicity monotonicity_class() const;

    const StepPolicy* as_step() const { return std::get_if<StepPolicy>(&value_); }
    const AffinePolicy* as_affine() const { return std::get_if<AffinePolicy>(&value_); }
    const ConstantPolicy* as_constant() const { return std::get_if<ConstantPolicy>(&value_); }

private:
    using Variant = std::variant<StepPolicy, AffinePolicy, ConstantPolicy>;
    explicit SamplingPolicy(Variant v);

    Variant value_;
};

}  // namespace hotstove
