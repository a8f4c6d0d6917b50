#pragma once

// Seeded random streams.
//
// All randomness flows through Rng, a thin wrapper over std::mt19937_64 whose
// output sequence is fixed by the C++ standard. The distributions below are
// implemented here rather than taken from <random>, whose distribution
// algorithms are implementation-defined; uniform, Bernoulli and categorical
// draws therefore reproduce bit-for-bit on every conforming platform.
// Binomial draws with n above kDirectBinomialLimit use a mode-centred
// inversion that calls std::lgamma/std::exp once per draw.

#include <cstdint>
#include <random>
#include <span>

namespace dyadic {

// SplitMix64 finaliser; used to derive independent substream seeds.
std::uint64_t mix_seed(std::uint64_t value);

// Seed for substream `stream` of a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer on [0, n); n > 0. Rejects the biased low range before reducing.
    std::uint64_t below(std::uint64_t n);

    std::uint64_t binomial(std::uint64_t n, double p);

    // Poisson with small-to-moderate mean (CDF inversion, mean <= 500).
    std::uint64_t poisson(double mean);

    // Index drawn from a cumulative probability vector whose last entry is 1.
    std::size_t categorical(std::span<const double> cumulative);

private:
    std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDirectBinomialLimit = 64;

}  // namespace dyadic
