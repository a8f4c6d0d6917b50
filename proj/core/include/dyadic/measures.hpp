#pragma once

// The eight difference-of-sums measures M1..M8.
//
// Each measure is a positive and a negative cell set; its value on a census is
// sum(positive cells) - sum(negative cells). The cell sets are the formulas as
// printed, e.g. M1 = sum_{y,q,s} C(1,y,1,q,0,s) - sum_{y,q,s} C(0,y,1,q,0,s).
// Note that M1 and M2 fix r = 0 (ego lacks the behavior at t1): they count
// transitions *into* absence. Use invert_behavior() on the records (or the
// `invert_behavior` config key) to score transitions into presence instead.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dyadic/dyad.hpp"

namespace dyadic {

enum class MeasureId : std::uint8_t { M1 = 1, M2, M3, M4, M5, M6, M7, M8 };

inline constexpr std::array<MeasureId, 8> kAllMeasures = {
    MeasureId::M1, MeasureId::M2, MeasureId::M3, MeasureId::M4,
    MeasureId::M5, MeasureId::M6, MeasureId::M7, MeasureId::M8};

constexpr int measure_number(MeasureId id) { return static_cast<int>(id); }
std::string_view measure_code(MeasureId id);   // "M1"
std::string_view measure_label(MeasureId id);  // "Direct Treatment Success in a Social Context"
std::optional<MeasureId> parse_measure(std::string_view code);

// 64-bit membership mask over cell indices.
using CellMask = std::uint64_t;

class MeasureSpec {
public:
    // Throws InputError if a cell appears on both sides.
    MeasureSpec(std::vector<CellIndex> positive, std::vector<CellIndex> negative);

    const std::vector<CellIndex>& positive_cells() const { return positive_; }
    const std::vector<CellIndex>& negative_cells() const { return negative_; }
    CellMask positive_mask() const { return positive_mask_; }
    CellMask negative_mask() const { return negative_mask_; }

    // True when no (x,y) participation quadrant holds cells of both sides.
    bool quadrants_disjoint() const;
    // True when no (x,y,p,q) group holds cells of both sides. This is what
    // makes the two sums independent under the null model.
    bool groups_disjoint() const;

    // The same spec with all four behavior bits of every cell flipped.
    MeasureSpec behavior_conjugate() const;

private:
    std::vector<CellIndex> positive_;
    std::vector<CellIndex> negative_;
    CellMask positive_mask_ = 0;
    CellMask negative_mask_ = 0;
};

const MeasureSpec& spec_for(MeasureId id);

struct MeasureValue {
    std::int64_t value = 0;
    Count positive_sum = 0;
    Count negative_sum = 0;

    bool operator==(const MeasureValue&) const = default;
};

MeasureValue evaluate(const DyadTable& table, const MeasureSpec& spec);
MeasureValue evaluate(const DyadTable& table, MeasureId id);

}  // namespace dyadic
