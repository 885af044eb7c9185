#include "hotstove/oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hotstove/learners.hpp"

namespace hotstove {

namespace {

constexpr double kPathGuard = 1e8;
constexpr double kEqualTol = 1e-12;

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct WeightedSum {
    double weight;      // multinomial coefficient times outcome probabilities
    double sequences;   // number of raw sequences collapsed into this entry
    double sum;         // sum of the drawn values
};

const std::vector<std::pair<double, double>>& support_of(const PayoffDistribution& dist) {
    const auto& support = dist.finite_support();
    if (support.empty())
        throw std::invalid_argument("enumeration requires a finite discrete payoff");
    return support;
}

double binomial(std::int64_t n, std::int64_t k) {
    double r = 1.0;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= static_cast<double>(n - k + i);
        r /= static_cast<double>(i);
    }
    return r;
}

// All draw multisets of the given size with multinomial weights. Collapsing
// permutations keeps the path count at C(size + s - 1, s - 1) instead of s^size.
std::vector<WeightedSum> enumerate_multisets(const std::vector<std::pair<double, double>>& support,
                                             std::int32_t size) {
    std::vector<WeightedSum> out;
    std::function<void(std::size_t, std::int32_t, double, double, double)> walk =
        [&](std::size_t idx, std::int32_t remaining, double weight, double sequences, double sum) {
            if (idx + 1 == support.size()) {
                const auto& [v, p] = support[idx];
                out.push_back({weight * std::pow(p, remaining),
                               sequences,
                               sum + v * static_cast<double>(remaining)});
                return;
            }
            const auto& [v, p] = support[idx];
            double prob_pow = 1.0;
            for (std::int32_t c = 0; c <= remaining; ++c) {
                const double ways = binomial(remaining, c);
                walk(idx + 1, remaining - c, weight * ways * prob_pow, sequences * ways,
                     sum + v * static_cast<double>(c));
                prob_pow *= p;
            }
        };
    walk(0, size, 1.0, 1.0, 0.0);
    return out;
}

std::int32_t max_sample_size(const SamplingPolicy& policy, const std::vector<double>& signals) {
    std::int32_t max_n = 1;
    for (const double s : signals) max_n = std::max(max_n, policy.sample_size(s));
    return max_n;
}

void check_guard(std::size_t support_size, std::int32_t k, std::int32_t max_n) {
    const double paths =
        std::pow(static_cast<double>(support_size), static_cast<double>(k) + max_n);
    if (paths > kPathGuard)
        throw std::invalid_argument("enumeration path count exceeds the 1e8 guard");
}

void pre_check_guard(std::size_t support_size, std::int32_t k) {
    check_guard(support_size, k, 1);
}

void tally(KahanSum& mean, KahanSum& above, KahanSum& below, KahanSum& equal, double weight,
           double belief, double u) {
    mean.add(weight * belief);
    const double scale = std::max({1.0, std::abs(u), std::abs(belief)});
    if (std::abs(belief - u) <= kEqualTol * scale)
        equal.add(weight);
    else if (belief > u)
        above.add(weight);
    else
        below.add(weight);
}

}  // namespace

EnumerationResult enumerate_expected_final_average(const PayoffDistribution& dist, std::int32_t k,
                                                   const SamplingPolicy& policy) {
    if (k < 1) throw std::invalid_argument("enumeration: k must be >= 1");
    const auto& support = support_of(dist);
    pre_check_guard(support.size(), k);
    const double u = dist.mean();

    const auto first = enumerate_multisets(support, k);
    std::vector<double> signals;
    signals.reserve(first.size());
    for (const auto& f : first) signals.push_back(f.sum / static_cast<double>(k));
    const std::int32_t max_n = max_sample_size(policy, signals);
    check_guard(support.size(), k, max_n);

    // Second-period multisets depend only on n; cache per distinct n.
    std::vector<std::vector<WeightedSum>> second_by_n(static_cast<std::size_t>(max_n) + 1);

    EnumerationResult result;
    KahanSum mean, above, below, equal, paths;
    for (std::size_t fi = 0; fi < first.size(); ++fi) {
        const auto& f = first[fi];
        const std::int32_t n = policy.sample_size(signals[fi]);
        auto& second = second_by_n[static_cast<std::size_t>(n)];
        if (second.empty()) second = enumerate_multisets(support, n);
        paths.add(f.sequences * std::pow(static_cast<double>(support.size()),
                                         static_cast<double>(n)));
        for (const auto& s : second) {
            const double w = f.weight * s.weight;
            const double xbar2 = (f.sum + s.sum) / static_cast<double>(k + n);
            tally(mean, above, below, equal, w, xbar2, u);
        }
    }
    result.expected_final_belief = mean.sum;
    result.prob_final_above_u = above.sum;
    result.prob_final_below_u = below.sum;
    result.prob_final_equal_u = equal.sum;
    result.total_paths = static_cast<std::int64_t>(std::llround(paths.sum));
    return result;
}

CovarianceIdentity enumerate_covariance_identity(const PayoffDistribution& dist, std::int32_t k,
                                                 const SamplingPolicy& policy) {
    const auto full = enumerate_expected_final_average(dist, k, policy);
    const auto& support = support_of(dist);
    const double u = dist.mean();

    KahanSum e_sum_g, e_sum, e_g;
    for (const auto& f : enumerate_multisets(support, k)) {
        const double g = 1.0 / static_cast<double>(
                                   k + policy.sample_size(f.sum / static_cast<double>(k)));
        e_sum_g.add(f.weight * f.sum * g);
        e_sum.add(f.weight * f.sum);
        e_g.add(f.weight * g);
    }
    CovarianceIdentity identity;
    identity.bias = full.expected_final_belief - u;
    identity.covariance = e_sum_g.sum - e_sum.sum * e_g.sum;
    return identity;
}

namespace {

struct RecencyAccumulator {
    KahanSum mean, above, below, equal, paths;
};

// Depth-first walk over raw second-period sequences, folding the belief as it
// goes. Order matters for the recency rule, so sequences are not collapsed.
void walk_second(const std::vector<std::pair<double, double>>& support, double b, double u,
                 std::int32_t remaining, double weight, double z, RecencyAccumulator& acc) {
    if (remaining == 0) {
        tally(acc.mean, acc.above, acc.below, acc.equal, weight, z, u);
        return;
    }
    for (const auto& [v, p] : support) {
        walk_second(support, b, u, remaining - 1, weight * p, (1.0 - b) * z + b * v, acc);
    }
}

void walk_first(const std::vector<std::pair<double, double>>& support,
                const SamplingPolicy& policy, double b, double u, std::int32_t remaining,
                double weight, double z, RecencyAccumulator& acc) {
    if (remaining == 0) {
        const std::int32_t n = policy.sample_size(z);
        acc.paths.add(std::pow(static_cast<double>(support.size()), static_cast<double>(n)));
        walk_second(support, b, u, n, weight, z, acc);
        return;
    }
    for (const auto& [v, p] : support) {
        walk_first(support, policy, b, u, remaining - 1, weight * p, (1.0 - b) * z + b * v,
                   acc);
    }
}

std::int32_t max_recency_sample_size(const std::vector<std::pair<double, double>>& support,
                                     const SamplingPolicy& policy, double b, std::int32_t remaining,
                                     double z) {
    if (remaining == 0) return policy.sample_size(z);
    std::int32_t max_n = 1;
    for (const auto& [v, p] : support) {
        max_n = std::max(max_n, max_recency_sample_size(support, policy, b, remaining - 1,
                                                        (1.0 - b) * z + b * v));
    }
    return max_n;
}

void require_recency_weight(double b) {
    if (!(b > 0.0 && b <= 1.0))
        throw std::invalid_argument("enumeration: recency weight must be in (0, 1]");
}

}  // namespace

EnumerationResult enumerate_expected_final_belief_recency(const PayoffDistribution& dist,
                                                          std::int32_t k,
                                                          const SamplingPolicy& policy, double b,
                                                          double z0) {
    if (k < 1) throw std::invalid_argument("enumeration: k must be >= 1");
    require_recency_weight(b);
    const auto& support = support_of(dist);
    pre_check_guard(support.size(), k);
    const double u = dist.mean();

    const std::int32_t max_n = max_recency_sample_size(support, policy, b, k, z0);
    check_guard(support.size(), k, max_n);

    EnumerationResult result;
    result.prior_matches_mean = std::abs(z0 - u) <= kEqualTol * std::max(1.0, std::abs(u));
    RecencyAccumulator acc;
    walk_first(support, policy, b, u, k, 1.0, z0, acc);
    result.expected_final_belief = acc.mean.sum;
    result.prob_final_above_u = acc.above.sum;
    result.prob_final_below_u = acc.below.sum;
    result.prob_final_equal_u = acc.equal.sum;
    result.total_paths = static_cast<std::int64_t>(std::llround(acc.paths.sum));
    return result;
}

CovarianceIdentity enumerate_recency_covariance_identity(const PayoffDistribution& dist,
                                                         std::int32_t k,
                                                         const SamplingPolicy& policy, double b,
                                                         double z0) {
    const auto full = enumerate_expected_final_belief_recency(dist, k, policy, b, z0);
    const auto& support = support_of(dist);
    const double u = dist.mean();

    // First-period moments of (z1, (1-b)^n(z1)) over raw sequences.
    KahanSum e_zw, e_z, e_w;
    std::function<void(std::int32_t, double, double)> walk = [&](std::int32_t remaining,
                                                                 double weight, double z) {
        if (remaining == 0) {
            const double decay =
                std::pow(1.0 - b, static_cast<double>(policy.sample_size(z)));
            e_zw.add(weight * z * decay);
            e_z.add(weight * z);
            e_w.add(weight * decay);
            return;
        }
        for (const auto& [v, p] : support) {
            walk(remaining - 1, weight * p, (1.0 - b) * z + b * v);
        }
    };
    walk(k, 1.0, z0);

    CovarianceIdentity identity;
    identity.bias = full.expected_final_belief - u;
    identity.covariance = e_zw.sum - e_z.sum * e_w.sum;
    return identity;
}

}  // namespace hotstove
