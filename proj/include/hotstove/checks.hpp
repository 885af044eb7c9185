#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hotstove {

struct CheckBudget {
    std::int64_t trials = 1'000'000;
    std::uint64_t seed = 42;
    int threads = 0;
};

struct CheckResult {
    int suite = 0;
    std::string name;
    double observed = 0.0;
    double threshold = 0.0;
    std::string comparator;  // the assertion, e.g. "|observed - target| <= threshold"
    bool passed = false;
    std::string detail;
};

// Suites: 1 averaging bias (exact enumeration + Monte Carlo), 2 majority of
// final averages on the wrong side, 3 recency-weighted beliefs, 4 conjugate
// martingale, 5 sign-flip probabilities (quadrature vs Monte Carlo).
std::vector<CheckResult> run_theorem_suite(int suite, const CheckBudget& budget = {});

// All five suites in order.
std::vector<CheckResult> run_all_theorem_suites(const CheckBudget& budget = {});

}  // namespace hotstove
