#pragma once

#include <cstdint>
#include <vector>

namespace hotstove {

// Streaming mean/variance (Welford) plus a tail count against a fixed
// reference value. Merge is exact up to floating point, so block results can
// be combined in any grouping as long as the final order is fixed.
class SummaryStats {
public:
    explicit SummaryStats(double reference = 0.0);

    void add(double x);
    void merge(const SummaryStats& other);

    std::int64_t count() const { return count_; }
    double reference() const { return reference_; }
    double mean() const;
    double variance() const;  // unbiased; needs count >= 2
    double se_mean() const;
    double prob_below_reference() const;  // fraction with x < reference
    double prob_above_reference() const;  // fraction with x > reference
    double se_prob() const;               // binomial standard error of prob_below
    std::int64_t below_reference() const { return below_; }
    std::int64_t above_reference() const { return above_; }

private:
    double reference_;
    std::int64_t count_ = 0;
    std::int64_t below_ = 0;
    std::int64_t above_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Fixed uniform bins over [lo, hi) with explicit under/overflow counters.
// x < lo underflows, x >= hi overflows, otherwise bin floor((x-lo)/width)
// clamped to the last bin so hi-adjacent rounding cannot escape the range.
class Histogram {
public:
    Histogram(double lo, double hi, std::int32_t bins);

    void add(double x);
    void merge(const Histogram& other);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::int32_t bins() const { return static_cast<std::int32_t>(counts_.size()); }
    double bin_left(std::int32_t i) const;
    double bin_right(std::int32_t i) const;
    std::int64_t count(std::int32_t i) const { return counts_[static_cast<std::size_t>(i)]; }
    std::int64_t underflow() const { return underflow_; }
    std::int64_t overflow() const { return overflow_; }
    std::int64_t total() const;

private:
    double lo_;
    double hi_;
    double width_;
    std::vector<std::int64_t> counts_;
    std::int64_t underflow_ = 0;
    std::int64_t overflow_ = 0;
};

}  // namespace hotstove
