#include "dyadic/measures.hpp"

#include <algorithm>
#include <bit>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

constexpr std::array<std::string_view, 8> kCodes = {"M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8"};

constexpr std::array<std::string_view, 8> kLabels = {
    "Direct Treatment Success in a Social Context",
    "Direct Prevention in a Social Context",
    "Social Effect of Treatment",
    "Social Effect of Prevention",
    "Reinforcement of Change",
    "Reinforcement of Prevention",
    "Diffusion of Change",
    "Diffusion of Prevention",
};

// Coordinates fixed by a cell-set pattern; -1 means "summed over".
struct Pattern {
    int x, y, p, q, r, s;
};

std::vector<CellIndex> expand(const Pattern& pat) {
    std::vector<CellIndex> cells;
    auto matches = [](int fixed, int bit) { return fixed < 0 || fixed == bit; };
    for (int i = 0; i < CellIndex::kCount; ++i) {
        const auto c = CellIndex::from_index(i);
        if (matches(pat.x, c.x()) && matches(pat.y, c.y()) && matches(pat.p, c.p()) &&
            matches(pat.q, c.q()) && matches(pat.r, c.r()) && matches(pat.s, c.s())) {
            cells.push_back(c);
        }
    }
    return cells;
}

constexpr int F = -1;

MeasureSpec make(const Pattern& pos, const Pattern& neg) { return MeasureSpec(expand(pos), expand(neg)); }

std::array<MeasureSpec, 8> build_specs() {
    return {
        // M1: sum_{y,q,s} C(1,y,1,q,0,s) - sum_{y,q,s} C(0,y,1,q,0,s)
        make({1, F, 1, F, 0, F}, {0, F, 1, F, 0, F}),
        // M2: sum_{y,q,s} C(1,y,0,q,0,s) - sum_{y,q,s} C(0,y,0,q,0,s)
        make({1, F, 0, F, 0, F}, {0, F, 0, F, 0, F}),
        // M3: sum_{y,p,r} C(1,y,p,1,r,0) - sum_{y,p,r} C(0,y,p,1,r,0)
        make({1, F, F, 1, F, 0}, {0, F, F, 1, F, 0}),
        // M4: sum_{y,p,r} C(1,y,p,0,r,0) - sum_{y,p,r} C(0,y,p,0,r,0)
        make({1, F, F, 0, F, 0}, {0, F, F, 0, F, 0}),
        // M5: sum_{q,s} C(1,1,1,q,0,s) - sum_{q,s} C(1,0,1,q,0,s)
        make({1, 1, 1, F, 0, F}, {1, 0, 1, F, 0, F}),
        // M6: sum_{q,s} C(1,1,0,q,0,s) - sum_{q,s} C(1,0,0,q,0,s)
        make({1, 1, 0, F, 0, F}, {1, 0, 0, F, 0, F}),
        // M7: sum_{p,r} C(1,0,p,1,r,0) - sum_{p,r} C(0,0,p,1,r,0)
        make({1, 0, F, 1, F, 0}, {0, 0, F, 1, F, 0}),
        // M8: sum_{p,r} C(1,0,p,0,r,0) - sum_{p,r} C(0,0,p,0,r,0)
        make({1, 0, F, 0, F, 0}, {0, 0, F, 0, F, 0}),
    };
}

CellMask mask_of(const std::vector<CellIndex>& cells) {
    CellMask mask = 0;
    for (auto c : cells) mask |= CellMask{1} << c.index();
    return mask;
}

Count masked_sum(const DyadTable& table, CellMask mask) {
    Count sum = 0;
    while (mask != 0) {
        const int i = std::countr_zero(mask);
        sum += table.counts()[static_cast<std::size_t>(i)];
        mask &= mask - 1;
    }
    return sum;
}

}  // namespace

std::string_view measure_code(MeasureId id) { return kCodes[static_cast<std::size_t>(measure_number(id) - 1)]; }

std::string_view measure_label(MeasureId id) {
    return kLabels[static_cast<std::size_t>(measure_number(id) - 1)];
}

std::optional<MeasureId> parse_measure(std::string_view code) {
    for (auto id : kAllMeasures) {
        if (measure_code(id) == code) return id;
    }
    return std::nullopt;
}

MeasureSpec::MeasureSpec(std::vector<CellIndex> positive, std::vector<CellIndex> negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {
    std::sort(positive_.begin(), positive_.end());
    positive_.erase(std::unique(positive_.begin(), positive_.end()), positive_.end());
    std::sort(negative_.begin(), negative_.end());
    negative_.erase(std::unique(negative_.begin(), negative_.end()), negative_.end());
    positive_mask_ = mask_of(positive_);
    negative_mask_ = mask_of(negative_);
    if ((positive_mask_ & negative_mask_) != 0) {
        throw InputError("measure cell sets overlap");
    }
}

bool MeasureSpec::quadrants_disjoint() const {
    unsigned pos = 0, neg = 0;
    for (auto c : positive_) pos |= 1u << (c.index() >> 4);
    for (auto c : negative_) neg |= 1u << (c.index() >> 4);
    return (pos & neg) == 0;
}

bool MeasureSpec::groups_disjoint() const {
    unsigned pos = 0, neg = 0;
    for (auto c : positive_) pos |= 1u << c.group();
    for (auto c : negative_) neg |= 1u << c.group();
    return (pos & neg) == 0;
}

MeasureSpec MeasureSpec::behavior_conjugate() const {
    std::vector<CellIndex> pos, neg;
    for (auto c : positive_) pos.push_back(invert_behavior(c));
    for (auto c : negative_) neg.push_back(invert_behavior(c));
    return MeasureSpec(std::move(pos), std::move(neg));
}

const MeasureSpec& spec_for(MeasureId id) {
    static const std::array<MeasureSpec, 8> specs = [] {
        auto built = build_specs();
        for (const auto& spec : built) {
            if (!spec.quadrants_disjoint()) throw std::logic_error("built-in measure shares a quadrant");
        }
        return built;
    }();
    return specs[static_cast<std::size_t>(measure_number(id) - 1)];
}

MeasureValue evaluate(const DyadTable& table, const MeasureSpec& spec) {
    MeasureValue v;
    v.positive_sum = masked_sum(table, spec.positive_mask());
    v.negative_sum = masked_sum(table, spec.negative_mask());
    v.value = static_cast<std::int64_t>(v.positive_sum) - static_cast<std::int64_t>(v.negative_sum);
    return v;
}

MeasureValue evaluate(const DyadTable& table, MeasureId id) { return evaluate(table, spec_for(id)); }

}  // namespace dyadic
