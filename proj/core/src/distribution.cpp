#include "dyadic/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

// Indices [first, last) outside of which every entry is zero.
std::pair<std::size_t, std::size_t> nonzero_range(std::span<const double> v) {
    std::size_t first = 0;
    while (first < v.size() && v[first] == 0.0) ++first;
    std::size_t last = v.size();
    while (last > first && v[last - 1] == 0.0) --last;
    return {first, last};
}

void flush_tiny(std::vector<double>& v) {
    for (double& x : v) {
        if (x < kPmfFloor) x = 0.0;
    }
}

// Full linear convolution of a and b, touching only their nonzero windows.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    const auto [a0, a1] = nonzero_range(a);
    const auto [b0, b1] = nonzero_range(b);
    for (std::size_t i = a0; i < a1; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        double* dst = out.data() + i;
        for (std::size_t j = b0; j < b1; ++j) dst[j] += ai * b[j];
    }
    flush_tiny(out);
    return out;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::int64_t support_min, std::vector<double> pmf)
    : support_min_(support_min), pmf_(std::move(pmf)) {
    if (pmf_.empty()) throw NumericalError("distribution has empty support");
    double sum = 0.0;
    for (double v : pmf_) {
        if (!(v >= 0.0)) throw NumericalError("distribution has a negative or NaN mass entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kMassTolerance) {
        throw NumericalError("distribution mass deviates from one: total " + std::to_string(sum));
    }
}

DiscreteDistribution DiscreteDistribution::point_mass(std::int64_t value) {
    return DiscreteDistribution(value, {1.0});
}

double DiscreteDistribution::at(std::int64_t value) const {
    if (value < support_min_ || value > support_max()) return 0.0;
    return pmf_[static_cast<std::size_t>(value - support_min_)];
}

double DiscreteDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < pmf_.size(); ++i) {
        m += pmf_[i] * static_cast<double>(support_min_ + static_cast<std::int64_t>(i));
    }
    return m;
}

double DiscreteDistribution::total_mass() const {
    double sum = 0.0;
    for (double v : pmf_) sum += v;
    return sum;
}

double DiscreteDistribution::upper_tail(std::int64_t value) const {
    if (value <= support_min_) return std::min(1.0, total_mass());
    if (value > support_max()) return 0.0;
    double sum = 0.0;
    for (std::int64_t v = support_max(); v >= value; --v) sum += at(v);
    return std::min(1.0, sum);
}

double DiscreteDistribution::lower_tail(std::int64_t value) const {
    if (value >= support_max()) return std::min(1.0, total_mass());
    if (value < support_min_) return 0.0;
    double sum = 0.0;
    for (std::int64_t v = support_min_; v <= value; ++v) sum += at(v);
    return std::min(1.0, sum);
}

DiscreteDistribution binomial_pmf(std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw NumericalError("success probability outside [0,1]");
    std::vector<double> pmf(n + 1, 0.0);
    if (n == 0 || p == 0.0) {
        pmf[0] = 1.0;
        return DiscreteDistribution(0, std::move(pmf));
    }
    if (p == 1.0) {
        pmf[n] = 1.0;
        return DiscreteDistribution(0, std::move(pmf));
    }

    // Relative weights from the mode: w(k+1)/w(k) = (n-k)/(k+1) * p/(1-p).
    const double ratio = p / (1.0 - p);
    const auto mode = std::min<std::uint64_t>(n, static_cast<std::uint64_t>(std::floor((static_cast<double>(n) + 1.0) * p)));
    pmf[mode] = 1.0;
    for (std::uint64_t k = mode; k < n; ++k) {
        const double next = pmf[k] * (static_cast<double>(n - k) / static_cast<double>(k + 1)) * ratio;
        if (next < kPmfFloor) break;
        pmf[k + 1] = next;
    }
    for (std::uint64_t k = mode; k > 0; --k) {
        const double prev = pmf[k] * (static_cast<double>(k) / static_cast<double>(n - k + 1)) / ratio;
        if (prev < kPmfFloor) break;
        pmf[k - 1] = prev;
    }
    // Normalise smallest-first for accuracy.
    double sum = 0.0;
    for (std::uint64_t k = 0; k < mode; ++k) sum += pmf[k];
    for (std::uint64_t k = n + 1; k-- > mode;) sum += pmf[k];
    for (double& v : pmf) v /= sum;
    flush_tiny(pmf);
    return DiscreteDistribution(0, std::move(pmf));
}

DiscreteDistribution pb_pmf(std::span<const TrialGroup> groups) {
    std::vector<double> acc{1.0};
    for (const auto& group : groups) {
        if (group.count == 0) continue;
        const auto term = binomial_pmf(group.count, group.success_prob);
        acc = convolve(acc, term.pmf());
    }
    return DiscreteDistribution(0, std::move(acc));
}

DiscreteDistribution difference_distribution(const DiscreteDistribution& pos, const DiscreteDistribution& neg) {
    // X - Y = X + (-Y); -Y has support [-max, -min] with the pmf reversed.
    std::vector<double> reversed(neg.pmf().rbegin(), neg.pmf().rend());
    auto pmf = convolve(pos.pmf(), reversed);
    return DiscreteDistribution(pos.support_min() - neg.support_max(), std::move(pmf));
}

}  // namespace dyadic
