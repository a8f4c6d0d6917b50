#pragma once

// Exact discrete distributions on consecutive integer supports: grouped
// Poisson-Binomial sums and differences of independent variables.

#include <cstdint>
#include <span>
#include <vector>

namespace dyadic {

// `count` independent Bernoulli trials sharing one success probability.
struct TrialGroup {
    std::uint64_t count = 0;
    double success_prob = 0.0;
};

// Entries below this are flushed to zero.
inline constexpr double kPmfFloor = 1e-300;
// Allowed deviation of total mass from one before NumericalError.
inline constexpr double kMassTolerance = 1e-9;

class DiscreteDistribution {
public:
    // Validates entries >= 0 and |sum - 1| <= kMassTolerance (NumericalError).
    DiscreteDistribution(std::int64_t support_min, std::vector<double> pmf);

    static DiscreteDistribution point_mass(std::int64_t value);

    std::int64_t support_min() const { return support_min_; }
    std::int64_t support_max() const { return support_min_ + static_cast<std::int64_t>(pmf_.size()) - 1; }
    std::span<const double> pmf() const { return pmf_; }

    // P(X = value); zero outside the support.
    double at(std::int64_t value) const;
    double mean() const;
    double total_mass() const;

    // P(X >= value) and P(X <= value), summed from the far end inward.
    double upper_tail(std::int64_t value) const;
    double lower_tail(std::int64_t value) const;

private:
    std::int64_t support_min_;
    std::vector<double> pmf_;
};

// Binomial(n, p) PMF on [0, n], built by the ratio recurrence outward from the mode.
DiscreteDistribution binomial_pmf(std::uint64_t n, double p);

// Exact PMF of the total number of successes over all groups, on [0, sum of counts].
// Computed by sequential convolution of the per-group binomial PMFs.
DiscreteDistribution pb_pmf(std::span<const TrialGroup> groups);

// Exact PMF of X - Y for independent X ~ pos, Y ~ neg.
DiscreteDistribution difference_distribution(const DiscreteDistribution& pos, const DiscreteDistribution& neg);

}  // namespace dyadic
