#include "hotstove/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace hotstove {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;
constexpr double kProbTol = 1e-12;

double std_normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(kTwoPi);
}

double std_normal_cdf(double z) {
    return 0.5 * std::erfc(-z / kSqrt2);
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double normal_pdf(double x, double mean, double variance) {
    require(variance > 0.0 && std::isfinite(variance), "normal_pdf: variance must be positive");
    const double sd = std::sqrt(variance);
    return std_normal_pdf((x - mean) / sd) / sd;
}

double normal_cdf(double x, double mean, double variance) {
    require(variance > 0.0 && std::isfinite(variance), "normal_cdf: variance must be positive");
    return std_normal_cdf((x - mean) / std::sqrt(variance));
}

double truncated_normal_mean_above(double c, double sd) {
    require(sd > 0.0 && std::isfinite(sd), "truncated_normal_mean_above: sd must be positive");
    const double a = c / sd;
    if (a > 26.0) {
        // Inverse Mills ratio phi(a)/(1-Phi(a)) = a + 1/a - 2/a^3 + 10/a^5 - 74/a^7 + 706/a^9
        // for large a; erfc loses its footing out here.
        const double inv2 = 1.0 / (a * a);
        const double lambda =
            a + (1.0 / a) * (1.0 + inv2 * (-2.0 + inv2 * (10.0 + inv2 * (-74.0 + inv2 * 706.0))));
        return sd * lambda;
    }
    // upper tail straight from erfc; 1 - cdf cancels to noise past a ~ 8
    const double upper_tail = 0.5 * std::erfc(a / kSqrt2);
    return sd * std_normal_pdf(a) / upper_tail;
}

double truncated_normal_mean_below(double c, double sd) {
    return -truncated_normal_mean_above(-c, sd);
}

// ---------------------------------------------------------------------------
// PayoffDistribution
// ---------------------------------------------------------------------------

PayoffDistribution::PayoffDistribution(Variant v) : value_(std::move(v)) {
    if (const auto* n = std::get_if<NormalPayoff>(&value_)) {
        require(std::isfinite(n->mean), "normal: mean must be finite");
        require(n->variance > 0.0 && std::isfinite(n->variance),
                "normal: variance must be positive and finite");
        mean_ = n->mean;
        variance_ = n->variance;
    } else if (const auto* l = std::get_if<LaplacePayoff>(&value_)) {
        require(std::isfinite(l->mean), "laplace: mean must be finite");
        require(l->scale > 0.0 && std::isfinite(l->scale),
                "laplace: scale must be positive and finite");
        mean_ = l->mean;
        variance_ = 2.0 * l->scale * l->scale;
    } else if (const auto* d = std::get_if<DiscreteSymmetricPayoff>(&value_)) {
        require(std::isfinite(d->center), "discrete_symmetric: center must be finite");
        require(!d->offsets.empty(), "discrete_symmetric: offsets must be non-empty");
        double half = 0.0;
        double var = 0.0;
        for (const auto& [a, p] : d->offsets) {
            require(std::isfinite(a) && a != 0.0, "discrete_symmetric: offset must be nonzero");
            require(p >= 0.0 && std::isfinite(p),
                    "discrete_symmetric: probability must be nonnegative");
            half += p;
            var += 2.0 * p * a * a;
        }
        require(std::abs(2.0 * half - 1.0) <= kProbTol,
                "discrete_symmetric: offset probabilities must sum to 1/2");
        mean_ = d->center;
        variance_ = var;
        // Mirror into an explicit support: each offset a lands at center -/+ a.
        support_.reserve(2 * d->offsets.size());
        for (const auto& [a, p] : d->offsets) support_.emplace_back(d->center - a, p);
        for (auto it = d->offsets.rbegin(); it != d->offsets.rend(); ++it)
            support_.emplace_back(d->center + it->first, it->second);
    } else {
        const auto& f = std::get<FiniteDiscretePayoff>(value_);
        require(!f.support.empty(), "finite_discrete: support must be non-empty");
        double total = 0.0;
        double mean = 0.0;
        for (const auto& [v_, p] : f.support) {
            require(std::isfinite(v_), "finite_discrete: value must be finite");
            require(p >= 0.0 && std::isfinite(p),
                    "finite_discrete: probability must be nonnegative");
            total += p;
            mean += p * v_;
        }
        require(std::abs(total - 1.0) <= kProbTol, "finite_discrete: probabilities must sum to 1");
        double var = 0.0;
        for (const auto& [v_, p] : f.support) var += p * (v_ - mean) * (v_ - mean);
        mean_ = mean;
        variance_ = var;
        support_ = f.support;
    }
    if (!support_.empty()) {
        cumulative_.reserve(support_.size());
        double acc = 0.0;
        for (const auto& [v_, p] : support_) {
            acc += p;
            cumulative_.push_back(acc);
        }
        cumulative_.back() = 1.0;  // absorb rounding so the table always covers u in [0,1)
    }
}

PayoffDistribution PayoffDistribution::normal(double mean, double variance) {
    return PayoffDistribution(NormalPayoff{mean, variance});
}

PayoffDistribution PayoffDistribution::laplace(double mean, double scale) {
    return PayoffDistribution(LaplacePayoff{mean, scale});
}

PayoffDistribution PayoffDistribution::discrete_symmetric(
    double center, std::vector<std::pair<double, double>> offsets) {
    return PayoffDistribution(DiscreteSymmetricPayoff{center, std::move(offsets)});
}

PayoffDistribution PayoffDistribution::finite_discrete(
    std::vector<std::pair<double, double>> support) {
    return PayoffDistribution(FiniteDiscretePayoff{std::move(support)});
}

double PayoffDistribution::sample(TrialRng& rng) const {
    if (const auto* n = std::get_if<NormalPayoff>(&value_)) {
        return n->mean + std::sqrt(n->variance) * rng.normal();
    }
    if (const auto* l = std::get_if<LaplacePayoff>(&value_)) {
        const double u = rng.uniform01() - 0.5;
        const double mag = -std::log1p(-2.0 * std::abs(u));  // Exp(1) via inverse cdf
        return l->mean + (u < 0.0 ? -l->scale : l->scale) * mag;
    }
    const double u = rng.uniform01();
    std::size_t lo = 0, hi = cumulative_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (u < cumulative_[mid])
            hi = mid;
        else
            lo = mid + 1;
    }
    return support_[lo].first;
}

// ---------------------------------------------------------------------------
// EnvironmentSpec
// ---------------------------------------------------------------------------

EnvironmentSpec EnvironmentSpec::fixed_mean(PayoffDistribution payoff) {
    return EnvironmentSpec(FixedMeanEnvironment{std::move(payoff)});
}

EnvironmentSpec EnvironmentSpec::hierarchical_normal(double prior_mean, double prior_variance,
                                                     double noise_variance) {
    require(std::isfinite(prior_mean), "hierarchical_normal: prior_mean must be finite");
    require(prior_variance > 0.0 && std::isfinite(prior_variance),
            "hierarchical_normal: prior_variance must be positive");
    require(noise_variance > 0.0 && std::isfinite(noise_variance),
            "hierarchical_normal: noise_variance must be positive");
    return EnvironmentSpec(HierarchicalNormalEnvironment{prior_mean, prior_variance, noise_variance});
}

double EnvironmentSpec::reference_mean() const {
    if (const auto* f = std::get_if<FixedMeanEnvironment>(&value_)) return f->payoff.mean();
    return std::get<HierarchicalNormalEnvironment>(value_).prior_mean;
}

const FixedMeanEnvironment* EnvironmentSpec::as_fixed_mean() const {
    return std::get_if<FixedMeanEnvironment>(&value_);
}

const HierarchicalNormalEnvironment* EnvironmentSpec::as_hierarchical() const {
    return std::get_if<HierarchicalNormalEnvironment>(&value_);
}

}  // namespace hotstove
