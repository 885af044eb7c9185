#include "hotstove/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace hotstove {

SummaryStats::SummaryStats(double reference) : reference_(reference) {}

void SummaryStats::add(double x) {
    count_ += 1;
    if (x < reference_) below_ += 1;
    if (x > reference_) above_ += 1;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void SummaryStats::merge(const SummaryStats& other) {
    if (other.reference_ != reference_)
        throw std::invalid_argument("merge: mismatched reference values");
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double delta = other.mean_ - mean_;
    const double n = na + nb;
    mean_ += delta * (nb / n);
    m2_ += other.m2_ + delta * delta * (na * nb / n);
    count_ += other.count_;
    below_ += other.below_;
    above_ += other.above_;
}

double SummaryStats::mean() const {
    if (count_ == 0) throw std::logic_error("mean of empty summary");
    return mean_;
}

double SummaryStats::variance() const {
    if (count_ < 2) throw std::logic_error("variance needs at least two samples");
    return m2_ / static_cast<double>(count_ - 1);
}

double SummaryStats::se_mean() const {
    return std::sqrt(variance() / static_cast<double>(count_));
}

double SummaryStats::prob_below_reference() const {
    if (count_ == 0) throw std::logic_error("proportion of empty summary");
    return static_cast<double>(below_) / static_cast<double>(count_);
}

double SummaryStats::prob_above_reference() const {
    if (count_ == 0) throw std::logic_error("proportion of empty summary");
    return static_cast<double>(above_) / static_cast<double>(count_);
}

double SummaryStats::se_prob() const {
    const double p = prob_below_reference();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(count_));
}

Histogram::Histogram(double lo, double hi, std::int32_t bins) : lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw std::invalid_argument("histogram: lo must be < hi");
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    width_ = (hi - lo) / static_cast<double>(bins);
    counts_.assign(static_cast<std::size_t>(bins), 0);
}

void Histogram::add(double x) {
    if (x < lo_) {
        underflow_ += 1;
        return;
    }
    if (x >= hi_) {
        overflow_ += 1;
        return;
    }
    auto idx = static_cast<std::size_t>((x - lo_) / width_);
    if (idx >= counts_.size()) idx = counts_.size() - 1;
    counts_[idx] += 1;
}

void Histogram::merge(const Histogram& other) {
    if (other.lo_ != lo_ || other.hi_ != hi_ || other.counts_.size() != counts_.size())
        throw std::invalid_argument("merge: mismatched histogram layout");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    underflow_ += other.underflow_;
    overflow_ += other.overflow_;
}

double Histogram::bin_left(std::int32_t i) const {
    return lo_ + width_ * static_cast<double>(i);
}

double Histogram::bin_right(std::int32_t i) const {
    return i + 1 == bins() ? hi_ : lo_ + width_ * static_cast<double>(i + 1);
}

std::int64_t Histogram::total() const {
    std::int64_t t = underflow_ + overflow_;
    for (const auto c : counts_) t += c;
    return t;
}

}  // namespace hotstove
