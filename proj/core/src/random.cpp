#include "dyadic/random.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadic {

std::uint64_t mix_seed(std::uint64_t value) {
    value += 0x9e3779b97f4a7c15ULL;
    value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
    value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
    return value ^ (value >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below requires n > 0");
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
        const std::uint64_t value = engine_();
        if (value >= threshold) return value % n;
    }
}

std::uint64_t Rng::binomial(std::uint64_t n, double p) {
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;

    if (n <= kDirectBinomialLimit) {
        std::uint64_t k = 0;
        for (std::uint64_t i = 0; i < n; ++i) k += uniform() < p ? 1 : 0;
        return k;
    }

    // Inversion searching outward from the mode; expected O(sqrt(n p (1-p))) steps.
    const double q = 1.0 - p;
    const double nd = static_cast<double>(n);
    auto mode = static_cast<std::uint64_t>(std::floor((nd + 1.0) * p));
    if (mode > n) mode = n;
    const double md = static_cast<double>(mode);
    const double log_pmf = std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) - std::lgamma(nd - md + 1.0) +
                           md * std::log(p) + (nd - md) * std::log1p(-p);
    const double p_mode = std::exp(log_pmf);
    const double ratio = p / q;

    double u = uniform();
    if (u < p_mode) return mode;
    u -= p_mode;

    std::uint64_t lo = mode, hi = mode;
    double p_lo = p_mode, p_hi = p_mode;
    while (lo > 0 || hi < n) {
        if (hi < n) {
            p_hi *= static_cast<double>(n - hi) / static_cast<double>(hi + 1) * ratio;
            ++hi;
            if (u < p_hi) return hi;
            u -= p_hi;
        }
        if (lo > 0) {
            p_lo *= static_cast<double>(lo) / static_cast<double>(n - lo + 1) / ratio;
            --lo;
            if (u < p_lo) return lo;
            u -= p_lo;
        }
        if (p_hi < 1e-300 && p_lo < 1e-300) break;
    }
    // Residual mass lost to rounding.
    return mode;
}

std::uint64_t Rng::poisson(double mean) {
    if (!(mean >= 0.0) || mean > 500.0) throw std::invalid_argument("Rng::poisson mean out of range");
    // Sequential inversion of the CDF.
    const double u = uniform();
    double pmf = std::exp(-mean);
    double cdf = pmf;
    std::uint64_t k = 0;
    while (u >= cdf && pmf > 0.0) {
        ++k;
        pmf *= mean / static_cast<double>(k);
        cdf += pmf;
    }
    return k;
}

std::size_t Rng::categorical(std::span<const double> cumulative) {
    const double u = uniform();
    for (std::size_t i = 0; i + 1 < cumulative.size(); ++i) {
        if (u < cumulative[i]) return i;
    }
    return cumulative.size() - 1;
}

}  // namespace dyadic
