#include "hotstove/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "hotstove/distributions.hpp"

namespace hotstove {

namespace {

constexpr double kSqrtTwoPi = 2.5066282746310005024157652848110;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void validate(const QuadratureSettings& s) {
    require(s.relative_tolerance > 0.0 && std::isfinite(s.relative_tolerance),
            "quadrature: relative_tolerance must be positive");
    require(s.max_subdivisions >= 1, "quadrature: max_subdivisions must be >= 1");
    require(s.integration_halfwidth_in_sds >= 6.0, "quadrature: halfwidth must be >= 6 sds");
}

// Gauss 7 / Kronrod 15 node-weight table on [-1, 1]: {node, gauss w, kronrod w}.
// Row 0 is the midpoint; the rest are +/- pairs.
constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

double g7k15_panel(const std::function<double(double)>& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double y0 = f(mid);
    double g7 = kG7K15[0][1] * y0;
    double k15 = kG7K15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kG7K15[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kG7K15[i][1] * yi;
        k15 += kG7K15[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;

    err = 200.0 * std::abs(g7 - k15);
    err *= std::sqrt(err);
    return k15;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSettings& settings) {
    validate(settings);
    if (a == b) return 0.0;
    if (a > b) return -integrate_adaptive(f, b, a, settings);

    constexpr double kAbsFloor = 1e-18;

    std::vector<std::pair<double, double>> stack;
    stack.emplace_back(a, b);
    double sum = 0.0;
    std::int32_t splits = 0;
    while (!stack.empty()) {
        const auto [ai, bi] = stack.back();
        stack.pop_back();

        double err = 0.0;
        const double s = g7k15_panel(f, ai, bi, err);
        const double width_floor =
            0x1.0p-50 * std::max({1.0, std::abs(ai), std::abs(bi)});
        if (err <= settings.relative_tolerance * std::abs(s) || err <= kAbsFloor ||
            bi - ai <= width_floor) {
            sum += s;
            continue;
        }
        if (++splits > settings.max_subdivisions) {
            throw quadrature_error("integrate_adaptive: tolerance not reached within "
                                   "subdivision budget");
        }
        const double mid = 0.5 * (ai + bi);
        stack.emplace_back(ai, mid);
        stack.emplace_back(mid, bi);
    }
    return sum;
}

double step_policy_bias_closed_form(std::int32_t k, std::int32_t high, std::int32_t low,
                                    double threshold, double sigma) {
    require(k >= 1, "closed form: k must be >= 1");
    require(high >= 1 && low >= 1, "closed form: sample sizes must be >= 1");
    require(sigma > 0.0 && std::isfinite(sigma), "closed form: sigma must be positive");
    require(std::isfinite(threshold), "closed form: threshold must be finite");
    const double kd = static_cast<double>(k);
    const double damp = std::exp(-threshold * threshold * kd / (2.0 * sigma * sigma));
    return -sigma * std::sqrt(kd) * static_cast<double>(high - low) * damp /
           (kSqrtTwoPi * static_cast<double>(k + low) * static_cast<double>(k + high));
}

double conditional_final_average(double xbar1, std::int32_t k, std::int32_t n, double u) {
    require(k >= 1 && n >= 1, "conditional average: k and n must be >= 1");
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    return (kd * xbar1 + nd * u) / (kd + nd);
}

double recency_conditional_expectation(double z1, double b, std::int64_t n, double u) {
    require(b > 0.0 && b <= 1.0, "recency expectation: weight must be in (0, 1]");
    require(n >= 1, "recency expectation: n must be >= 1");
    const double decay = std::pow(1.0 - b, static_cast<double>(n));
    return z1 * decay + (1.0 - decay) * u;
}

double normal_sum_tail_prob(std::int32_t kk, double r, double sigma) {
    require(kk >= 1, "tail prob: kk must be >= 1");
    require(r > 0.0, "tail prob: r must be positive");
    require(sigma > 0.0, "tail prob: sigma must be positive");
    const double kd = static_cast<double>(kk);
    return 1.0 - normal_cdf(r, 0.0, sigma * sigma * kd);
}

namespace {

// Both flip probabilities reduce to
//   integral over s in (0, inf) of Phi((-s - n*belief(s)) / sd2(n)) * 2 f(s) ds
// where s is the first-period payoff sum, f its Normal(0, k^2 su2 + k se2)
// density, belief(s) = s * su2/(k su2 + se2) the posterior mean, and n the
// policy's response. Positive-to-negative uses n(belief(s)); the mirrored
// direction uses n(-belief(s)).
double flip_prob(std::int32_t k, const SamplingPolicy& policy, double sigma_u2, double sigma_e2,
                 const QuadratureSettings& settings, bool mirror_signal) {
    require(k >= 1, "flip prob: k must be >= 1");
    require(sigma_u2 > 0.0 && std::isfinite(sigma_u2), "flip prob: sigma_u2 must be positive");
    require(sigma_e2 > 0.0 && std::isfinite(sigma_e2), "flip prob: sigma_e2 must be positive");
    validate(settings);

    const double kd = static_cast<double>(k);
    const double sum_var = kd * kd * sigma_u2 + kd * sigma_e2;
    const double shrink = sigma_u2 / (kd * sigma_u2 + sigma_e2);  // belief(s) = shrink * s
    const double posterior_var = sigma_u2 * sigma_e2 / (kd * sigma_u2 + sigma_e2);

    const auto integrand = [&](double s) {
        const double belief = shrink * s;
        const double n =
            static_cast<double>(policy.sample_size(mirror_signal ? -belief : belief));
        const double drift = -s - n * belief;
        const double spread = std::sqrt(n * n * posterior_var + n * sigma_e2);
        return normal_cdf(drift / spread, 0.0, 1.0) * 2.0 * normal_pdf(s, 0.0, sum_var);
    };

    const double hi = settings.integration_halfwidth_in_sds * std::sqrt(sum_var);

    // A step policy jumps where the (possibly mirrored) belief crosses the
    // threshold; integrating through that point would stall refinement.
    double split = -1.0;
    if (const auto* step = policy.as_step()) {
        split = step->threshold / shrink;
        if (mirror_signal) split = -split;
    }
    if (split > 0.0 && split < hi) {
        return integrate_adaptive(integrand, 0.0, split, settings) +
               integrate_adaptive(integrand, split, hi, settings);
    }
    return integrate_adaptive(integrand, 0.0, hi, settings);
}

}  // namespace

double flip_prob_pos_to_neg(std::int32_t k, const SamplingPolicy& policy, double sigma_u2,
                            double sigma_e2, const QuadratureSettings& settings) {
    return flip_prob(k, policy, sigma_u2, sigma_e2, settings, false);
}

double flip_prob_neg_to_pos(std::int32_t k, const SamplingPolicy& policy, double sigma_u2,
                            double sigma_e2, const QuadratureSettings& settings) {
    return flip_prob(k, policy, sigma_u2, sigma_e2, settings, true);
}

double bayes_prob_final_negative(std::int32_t k, const SamplingPolicy& policy, double sigma_u2,
                                 double sigma_e2, const QuadratureSettings& settings) {
    const double pos_to_neg = flip_prob_pos_to_neg(k, policy, sigma_u2, sigma_e2, settings);
    const double neg_to_pos = flip_prob_neg_to_pos(k, policy, sigma_u2, sigma_e2, settings);
    return 0.5 * pos_to_neg + 0.5 * (1.0 - neg_to_pos);
}

}  // namespace hotstove
