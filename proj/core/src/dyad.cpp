#include "dyadic/dyad.hpp"

#include <algorithm>
#include <thread>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

constexpr std::size_t kParallelThreshold = std::size_t{1} << 16;

void check_bit(std::uint8_t bit, const char* name) {
    if (bit > 1) {
        throw InputError(std::string("dyad bit '") + name + "' must be 0 or 1, got " +
                         std::to_string(static_cast<int>(bit)));
    }
}

DyadTable tally(std::span<const DyadRecord> records) {
    DyadTable table;
    for (const auto& record : records) {
        table.add(classify_dyad(record));
    }
    return table;
}

}  // namespace

CellIndex CellIndex::from_index(int index) {
    if (index < 0 || index >= kCount) {
        throw InputError("cell index out of range: " + std::to_string(index));
    }
    return CellIndex(static_cast<std::uint8_t>(index));
}

std::string CellIndex::label() const {
    std::string out(6, '0');
    for (int bit = 0; bit < 6; ++bit) {
        if ((value_ >> (5 - bit)) & 1) out[static_cast<std::size_t>(bit)] = '1';
    }
    return out;
}

void validate(const DyadRecord& record) {
    check_bit(record.x, "x");
    check_bit(record.y, "y");
    check_bit(record.p, "p");
    check_bit(record.q, "q");
    check_bit(record.r, "r");
    check_bit(record.s, "s");
    if (record.ego_id == record.alter_id) {
        throw InputError("dyad has identical ego and alter id '" + record.ego_id + "'");
    }
}

CellIndex classify_dyad(const DyadRecord& record) {
    return CellIndex::from_bits(record.x, record.y, record.p, record.q, record.r, record.s);
}

DyadRecord canonical_record(CellIndex cell, std::string_view item) {
    DyadRecord record;
    record.ego_id = "ego";
    record.alter_id = "alter";
    record.x = static_cast<std::uint8_t>(cell.x());
    record.y = static_cast<std::uint8_t>(cell.y());
    record.p = static_cast<std::uint8_t>(cell.p());
    record.q = static_cast<std::uint8_t>(cell.q());
    record.r = static_cast<std::uint8_t>(cell.r());
    record.s = static_cast<std::uint8_t>(cell.s());
    record.item_id = std::string(item);
    return record;
}

DyadRecord invert_behavior(DyadRecord record) {
    record.p ^= 1;
    record.q ^= 1;
    record.r ^= 1;
    record.s ^= 1;
    return record;
}

CellIndex invert_behavior(CellIndex cell) {
    return CellIndex::from_index(cell.index() ^ 0b001111);
}

DyadTable::DyadTable(const std::array<Count, 64>& counts) : counts_(counts) {
    for (Count c : counts_) total_ += c;
}

void DyadTable::add(CellIndex cell, Count n) {
    counts_[static_cast<std::size_t>(cell.index())] += n;
    total_ += n;
}

DyadTable& DyadTable::operator+=(const DyadTable& other) {
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
    return *this;
}

DyadTable invert_behavior(const DyadTable& table) {
    DyadTable out;
    for (int i = 0; i < CellIndex::kCount; ++i) {
        const auto cell = CellIndex::from_index(i);
        out.add(invert_behavior(cell), table[cell]);
    }
    return out;
}

DyadTable build_table(std::span<const DyadRecord> records, std::string_view item) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& record = records[i];
        if (record.item_id != item) {
            throw InputError("record " + std::to_string(i) + " has item '" + record.item_id +
                             "' but the census is for item '" + std::string(item) + "'");
        }
        validate(record);
    }

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (records.size() < kParallelThreshold || hw == 1) return tally(records);

    const std::size_t shards = std::min<std::size_t>(hw, records.size() / (kParallelThreshold / 4));
    const std::size_t chunk = (records.size() + shards - 1) / shards;
    std::vector<DyadTable> partial(shards);
    {
        std::vector<std::jthread> workers;
        for (std::size_t k = 0; k < shards; ++k) {
            const std::size_t begin = k * chunk;
            const std::size_t end = std::min(records.size(), begin + chunk);
            workers.emplace_back([&, k, begin, end] { partial[k] = tally(records.subspan(begin, end - begin)); });
        }
    }
    DyadTable table;
    for (const auto& t : partial) table += t;
    return table;
}

MarginalSet marginals(const DyadTable& table) {
    MarginalSet m;
    for (int i = 0; i < CellIndex::kCount; ++i) {
        const auto cell = CellIndex::from_index(i);
        const Count c = table[cell];
        const int pq = pair_index(cell.p(), cell.q());
        const int rs = pair_index(cell.r(), cell.s());
        m.n0[pq] += c;
        m.n1[rs] += c;
        m.n_pqrs[4 * pq + rs] += c;
        m.n0_group[group_index(cell.x(), cell.y(), cell.p(), cell.q())] += c;
        m.n1_group[group_index(cell.x(), cell.y(), cell.r(), cell.s())] += c;
    }
    return m;
}

}  // namespace dyadic
