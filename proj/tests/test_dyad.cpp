#include <doctest.h>

#include <algorithm>
#include <random>

#include "dyadic/dyad.hpp"
#include "dyadic/errors.hpp"
#include "oracles.hpp"

using namespace dyadic;

namespace {

DyadRecord rec(int x, int y, int p, int q, int r, int s, std::string item = "i") {
    DyadRecord d;
    d.ego_id = "a";
    d.alter_id = "b";
    d.x = static_cast<std::uint8_t>(x);
    d.y = static_cast<std::uint8_t>(y);
    d.p = static_cast<std::uint8_t>(p);
    d.q = static_cast<std::uint8_t>(q);
    d.r = static_cast<std::uint8_t>(r);
    d.s = static_cast<std::uint8_t>(s);
    d.item_id = std::move(item);
    return d;
}

}  // namespace

TEST_CASE("classify_dyad maps bits to the documented cell order") {
    const auto c = classify_dyad(rec(1, 0, 1, 1, 0, 1));
    CHECK(c == CellIndex::from_bits(1, 0, 1, 1, 0, 1));
    CHECK(c.index() == 32 + 8 + 4 + 1);
    CHECK(c.label() == "101101");
    CHECK(classify_dyad(rec(0, 0, 0, 0, 0, 0)).index() == 0);
    CHECK(classify_dyad(rec(1, 1, 1, 1, 1, 1)).index() == 63);
}

TEST_CASE("cell coordinates round-trip through canonical records") {
    for (int i = 0; i < 64; ++i) {
        const auto cell = CellIndex::from_index(i);
        CHECK(classify_dyad(canonical_record(cell)) == cell);
        CHECK(cell.group() * 4 + cell.outcome() == i);
        CHECK(cell.group() == group_index(cell.x(), cell.y(), cell.p(), cell.q()));
    }
    CHECK_THROWS_AS(CellIndex::from_index(64), InputError);
    CHECK_THROWS_AS(CellIndex::from_index(-1), InputError);
}

TEST_CASE("validate rejects bad bits and self dyads") {
    auto bad = rec(0, 0, 2, 0, 0, 0);
    CHECK_THROWS_AS(validate(bad), InputError);
    auto self = rec(0, 0, 0, 0, 0, 0);
    self.alter_id = self.ego_id;
    CHECK_THROWS_AS(validate(self), InputError);
}

TEST_CASE("build_table counts records per cell") {
    CHECK(build_table({}, "i").total() == 0);

    const std::vector<DyadRecord> two = {rec(1, 0, 0, 0, 0, 0), rec(0, 1, 1, 1, 1, 1)};
    const auto t = build_table(two, "i");
    CHECK(t.total() == 2);
    CHECK(t.at(1, 0, 0, 0, 0, 0) == 1);
    CHECK(t.at(0, 1, 1, 1, 1, 1) == 1);
    CHECK(std::count(t.counts().begin(), t.counts().end(), 0u) == 62);

    const std::vector<DyadRecord> mixed = {rec(0, 0, 0, 0, 0, 0, "i"), rec(0, 0, 0, 0, 0, 0, "j")};
    CHECK_THROWS_AS(build_table(mixed, "i"), InputError);
}

TEST_CASE("build_table agrees with a per-record tally") {
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<int> bit(0, 1);
    for (std::size_t n : {100u, 70000u}) {
        std::vector<DyadRecord> records;
        oracle::Counts tally{};
        for (std::size_t i = 0; i < n; ++i) {
            auto r = rec(bit(gen), bit(gen), bit(gen), bit(gen), bit(gen), bit(gen));
            ++tally[oracle::cell(r.x, r.y, r.p, r.q, r.r, r.s)];
            records.push_back(std::move(r));
        }
        const auto t = build_table(records, "i");
        CHECK(oracle::counts_of(t) == tally);
        CHECK(t.total() == n);

        std::shuffle(records.begin(), records.end(), gen);
        CHECK(build_table(records, "i") == t);
    }
}

TEST_CASE("marginals of a single dyad") {
    DyadTable t;
    t.add(CellIndex::from_bits(1, 0, 0, 1, 1, 0));
    const auto m = marginals(t);
    CHECK(m.pre(0, 1) == 1);
    CHECK(m.post(1, 0) == 1);
    CHECK(m.transition(0, 1, 1, 0) == 1);
    CHECK(m.group_pre(1, 0, 0, 1) == 1);
    CHECK(m.group_post(1, 0, 1, 0) == 1);
    Count sum = 0;
    for (auto v : m.n0) sum += v;
    for (auto v : m.n1) sum += v;
    for (auto v : m.n_pqrs) sum += v;
    for (auto v : m.n0_group) sum += v;
    for (auto v : m.n1_group) sum += v;
    CHECK(sum == 5);
}

TEST_CASE("marginals match brute-force sums") {
    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 200; ++rep) {
        const auto c = oracle::random_table(gen, 500);
        const auto m = marginals(oracle::table_of(c));
        const auto o = oracle::marginals(c);
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
                CHECK(m.pre(p, q) == o.n0[2 * p + q]);
                CHECK(m.post(p, q) == o.n1[2 * p + q]);
                for (int r = 0; r < 2; ++r)
                    for (int s = 0; s < 2; ++s) CHECK(m.transition(p, q, r, s) == o.n_pqrs[2 * p + q][2 * r + s]);
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y) CHECK(m.group_pre(x, y, p, q) == o.n0_group[x][y][2 * p + q]);
            }
    }
}

TEST_CASE("invert_behavior flips the four behavior bits") {
    const auto r = invert_behavior(rec(1, 0, 1, 0, 0, 1));
    CHECK(classify_dyad(r) == CellIndex::from_bits(1, 0, 0, 1, 1, 0));
    DyadTable t;
    t.add(CellIndex::from_bits(0, 1, 1, 1, 1, 1), 4);
    const auto inv = invert_behavior(t);
    CHECK(inv.at(0, 1, 0, 0, 0, 0) == 4);
    CHECK(invert_behavior(inv) == t);
}

TEST_CASE("table addition is cellwise") {
    std::mt19937_64 gen(2);
    const auto a = oracle::table_of(oracle::random_table(gen, 50));
    const auto b = oracle::table_of(oracle::random_table(gen, 50));
    const auto s = a + b;
    CHECK(s.total() == a.total() + b.total());
    for (int i = 0; i < 64; ++i) CHECK(s.counts()[i] == a.counts()[i] + b.counts()[i]);
}
