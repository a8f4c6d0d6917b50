#pragma once

// Dyad census primitives.
//
// A dyad is an ordered ego -> alter pair carrying six bits:
//   x  ego participated in the intervention
//   y  alter participated
//   p  ego had the behavior before (t0)
//   q  alter had the behavior before (t0)
//   r  ego has the behavior after (t1)
//   s  alter has the behavior after (t1)
// The census C(x,y,p,q,r,s) counts dyads per 6-bit state. Cells are indexed
// 0..63 with x as the most significant bit: index = 32x + 16y + 8p + 4q + 2r + s.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dyadic {

using Count = std::uint64_t;

class CellIndex {
public:
    static constexpr int kCount = 64;

    constexpr CellIndex() = default;

    static constexpr CellIndex from_bits(int x, int y, int p, int q, int r, int s) {
        return CellIndex(static_cast<std::uint8_t>(((x & 1) << 5) | ((y & 1) << 4) | ((p & 1) << 3) |
                                                   ((q & 1) << 2) | ((r & 1) << 1) | (s & 1)));
    }
    // Throws InputError when index is outside 0..63.
    static CellIndex from_index(int index);

    constexpr int index() const { return value_; }
    constexpr int x() const { return (value_ >> 5) & 1; }
    constexpr int y() const { return (value_ >> 4) & 1; }
    constexpr int p() const { return (value_ >> 3) & 1; }
    constexpr int q() const { return (value_ >> 2) & 1; }
    constexpr int r() const { return (value_ >> 1) & 1; }
    constexpr int s() const { return value_ & 1; }

    // (x,y,p,q) group index 0..15 and (r,s) outcome index 0..3.
    constexpr int group() const { return value_ >> 2; }
    constexpr int outcome() const { return value_ & 3; }

    // Six-character bit label in x,y,p,q,r,s order, e.g. "101101".
    std::string label() const;

    constexpr auto operator<=>(const CellIndex&) const = default;

private:
    constexpr explicit CellIndex(std::uint8_t v) : value_(v) {}
    std::uint8_t value_ = 0;
};

// Index helpers for the marginal families.
constexpr int pair_index(int a, int b) { return ((a & 1) << 1) | (b & 1); }
constexpr int group_index(int x, int y, int p, int q) {
    return ((x & 1) << 3) | ((y & 1) << 2) | ((p & 1) << 1) | (q & 1);
}

struct DyadRecord {
    std::string ego_id;
    std::string alter_id;
    std::uint8_t x = 0;
    std::uint8_t y = 0;
    std::uint8_t p = 0;
    std::uint8_t q = 0;
    std::uint8_t r = 0;
    std::uint8_t s = 0;
    std::string item_id;

    bool operator==(const DyadRecord&) const = default;
};

// Throws InputError if a bit is not 0/1 or ego_id == alter_id.
void validate(const DyadRecord& record);

CellIndex classify_dyad(const DyadRecord& record);

// A record whose bits are the cell's coordinates (ids "ego"/"alter").
DyadRecord canonical_record(CellIndex cell, std::string_view item = {});

// Recodes all four behavior bits (p,q,r,s -> 1 - bit).
DyadRecord invert_behavior(DyadRecord record);
CellIndex invert_behavior(CellIndex cell);

class DyadTable {
public:
    DyadTable() = default;
    explicit DyadTable(const std::array<Count, 64>& counts);

    Count operator[](CellIndex cell) const { return counts_[static_cast<std::size_t>(cell.index())]; }
    Count at(int x, int y, int p, int q, int r, int s) const {
        return (*this)[CellIndex::from_bits(x, y, p, q, r, s)];
    }
    const std::array<Count, 64>& counts() const { return counts_; }
    Count total() const { return total_; }
    bool empty() const { return total_ == 0; }

    void add(CellIndex cell, Count n = 1);

    DyadTable& operator+=(const DyadTable& other);
    friend DyadTable operator+(DyadTable lhs, const DyadTable& rhs) { return lhs += rhs; }
    bool operator==(const DyadTable&) const = default;

private:
    std::array<Count, 64> counts_{};
    Count total_ = 0;
};

DyadTable invert_behavior(const DyadTable& table);

// Builds the census for one behavioral item. Every record must carry
// item_id == item; otherwise InputError. Large inputs are sharded across
// threads; the result is identical to a sequential tally.
DyadTable build_table(std::span<const DyadRecord> records, std::string_view item);

struct MarginalSet {
    std::array<Count, 4> n0{};         // 0N_{p,q}, index pair_index(p,q)
    std::array<Count, 4> n1{};         // 1N_{r,s}, index pair_index(r,s)
    std::array<Count, 16> n_pqrs{};    // N_{p,q,r,s}, index 4*pair(p,q) + pair(r,s)
    std::array<Count, 16> n0_group{};  // 0N^{x,y}_{p,q}, index group_index(x,y,p,q)
    std::array<Count, 16> n1_group{};  // 1N^{x,y}_{r,s}, index group_index(x,y,r,s)

    Count pre(int p, int q) const { return n0[pair_index(p, q)]; }
    Count post(int r, int s) const { return n1[pair_index(r, s)]; }
    Count transition(int p, int q, int r, int s) const {
        return n_pqrs[4 * pair_index(p, q) + pair_index(r, s)];
    }
    Count group_pre(int x, int y, int p, int q) const { return n0_group[group_index(x, y, p, q)]; }
    Count group_post(int x, int y, int r, int s) const { return n1_group[group_index(x, y, r, s)]; }
};

MarginalSet marginals(const DyadTable& table);

}  // namespace dyadic
