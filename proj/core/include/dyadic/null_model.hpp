#pragma once

// Pooled-transition null model.
//
// Under the null hypothesis the four participation quadrants (x,y) share one
// behavior transition matrix P0. Rows are the pre-states (p,q), columns the
// post-states (r,s), both ordered (0,0),(0,1),(1,0),(1,1); each defined row sums
// to one. Every (x,y,p,q) group keeps its observed mass 0N^{x,y}_{p,q} and its
// post-states are redrawn as a multinomial over the (p,q) row.

#include <array>
#include <cstdint>

#include "dyadic/dyad.hpp"
#include "dyadic/random.hpp"

namespace dyadic {

using TransitionMatrix = std::array<std::array<double, 4>, 4>;

// Subset of the four (r,s) outcomes as a bit mask, bit pair_index(r,s).
class OutcomeSet {
public:
    constexpr OutcomeSet() = default;
    constexpr explicit OutcomeSet(std::uint8_t bits) : bits_(bits & 0xF) {}

    static constexpr OutcomeSet all() { return OutcomeSet(0xF); }
    constexpr OutcomeSet with(int r, int s) const {
        return OutcomeSet(static_cast<std::uint8_t>(bits_ | (1u << pair_index(r, s))));
    }
    constexpr bool contains(int rs) const { return (bits_ >> rs) & 1; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::uint8_t bits() const { return bits_; }

    constexpr bool operator==(const OutcomeSet&) const = default;

private:
    std::uint8_t bits_ = 0;
};

class NullModel {
public:
    // User-supplied model. Defined rows must lie in [0,1] and sum to 1 within
    // 1e-12; undefined rows must carry no mass. Throws InputError otherwise.
    NullModel(const TransitionMatrix& p0, const std::array<bool, 4>& row_defined,
              const std::array<Count, 16>& masses);

    double probability(int pq, int rs) const { return p0_[pq][rs]; }
    const TransitionMatrix& matrix() const { return p0_; }
    bool row_defined(int pq) const { return row_defined_[pq]; }
    Count mass(int group) const { return masses_[group]; }
    Count mass(int x, int y, int p, int q) const { return masses_[group_index(x, y, p, q)]; }
    const std::array<Count, 16>& masses() const { return masses_; }
    Count total_mass() const;

    // True when every group with positive mass has a defined row.
    bool sampleable() const;
    // Throws InputError naming the first group with mass on an undefined row.
    void require_sampleable() const;

private:
    NullModel() = default;
    friend NullModel fit(const DyadTable& table);

    TransitionMatrix p0_{};
    std::array<bool, 4> row_defined_{};
    std::array<Count, 16> masses_{};
};

// P0[p,q][r,s] = N_{p,q,r,s} / 0N_{p,q}; rows with 0N_{p,q} = 0 are undefined.
NullModel fit(const DyadTable& table);

struct NullSample {
    DyadTable table;
};

// One multinomial redraw of every group; deterministic in `seed`.
NullSample sample(const NullModel& model, std::uint64_t seed);

// Reusable sampler: precomputes cumulative rows once.
class NullSampler {
public:
    explicit NullSampler(const NullModel& model);

    // Groups at or below this mass are drawn dyad by dyad (one uniform each);
    // larger groups use a chain of conditional binomials.
    static constexpr Count kPerDyadLimit = 4096;

    DyadTable draw(Rng& rng) const;

private:
    struct Group {
        int index;  // group_index(x,y,p,q)
        Count mass;
        std::array<double, 4> cumulative;
        std::array<double, 4> probs;
    };
    std::vector<Group> groups_;
};

// Sum of row (p,q) of P0 over the outcome set; InputError on an undefined row.
double group_event_probability(const NullModel& model, int p, int q, OutcomeSet outcomes);

}  // namespace dyadic
