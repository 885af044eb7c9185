#pragma once

#include <cmath>
#include <cstdint>

namespace hotstove {

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Bijective 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// One random stream per simulated trial.
///
/// The stream is a pure function of (seed, trial_index): trial i draws the
/// same sequence no matter which worker executes it or in what order, which
/// is what makes parallel runs reproducible. State is four xoshiro256++
/// words derived from the two inputs through a splitmix64 chain.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial_index) {
        std::uint64_t x = detail::mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                          detail::mix64(trial_index + 0xD1B54A32D192ED03ULL);
        for (auto& w : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            w = detail::mix64(x);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw, Box-Muller with a cached spare.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// The engine's counter-based stream derivation (seed, trial index) -> stream.
inline TrialRng derive_trial_rng(std::uint64_t seed, std::uint64_t trial_index) {
    return TrialRng(seed, trial_index);
}

}  // namespace hotstove
