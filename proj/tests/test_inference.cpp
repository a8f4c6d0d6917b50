#include <doctest.h>

#include <cmath>
#include <random>

#include "dyadic/errors.hpp"
#include "dyadic/inference.hpp"
#include "dyadic/sim.hpp"
#include "oracles.hpp"

using namespace dyadic;

TEST_CASE("enum names round-trip") {
    for (auto d : {Direction::positive, Direction::negative, Direction::none}) CHECK(parse_direction(to_string(d)) == d);
    for (auto m : {Method::bootstrap, Method::exact}) CHECK(parse_method(to_string(m)) == m);
    for (auto m : {MethodSelection::bootstrap, MethodSelection::exact, MethodSelection::both}) {
        CHECK(parse_method_selection(to_string(m)) == m);
    }
    CHECK_FALSE(parse_method("both").has_value());
}

TEST_CASE("classify_direction uses a relative tie tolerance") {
    CHECK(classify_direction(5, 4.0) == Direction::positive);
    CHECK(classify_direction(3, 4.0) == Direction::negative);
    CHECK(classify_direction(4, 4.0) == Direction::none);
    CHECK(classify_direction(4, 4.0 + 1e-12) == Direction::none);
}

TEST_CASE("exact_test on an empty table is an input error") {
    CHECK_THROWS_AS(exact_test(DyadTable{}, MeasureId::M1), InputError);
    BootstrapOptions opt;
    opt.trials = 10;
    CHECK_THROWS_AS(bootstrap_test(DyadTable{}, MeasureId::M1, opt), InputError);
    opt.trials = 0;
    DyadTable t;
    t.add(CellIndex::from_index(5));
    CHECK_THROWS_AS(bootstrap_test(t, MeasureId::M1, opt), InputError);
}

TEST_CASE("deterministic rows give point masses and p = 1") {
    DyadTable t;
    t.add(CellIndex::from_bits(1, 0, 1, 0, 0, 0), 6);
    t.add(CellIndex::from_bits(0, 1, 1, 0, 0, 0), 2);
    t.add(CellIndex::from_bits(1, 1, 0, 1, 0, 1), 3);
    for (auto m : kAllMeasures) {
        const auto r = exact_test(t, m);
        CHECK(r.p_value == doctest::Approx(1.0));
        CHECK(r.direction == Direction::none);
        CHECK_FALSE(r.significant);
        BootstrapOptions opt;
        opt.trials = 200;
        opt.seed = 3;
        const auto b = bootstrap_test(t, m, opt);
        CHECK(b.p_value == 1.0);
        CHECK(b.direction == Direction::none);
    }
}

TEST_CASE("exact_test equals exhaustive multinomial enumeration on small tables") {
    std::mt19937_64 gen(101);
    std::uniform_int_distribution<int> size(1, 10);
    for (int rep = 0; rep < 30; ++rep) {
        const auto c = oracle::random_small_table(gen, static_cast<std::uint64_t>(size(gen)));
        const auto t = oracle::table_of(c);
        const auto all = oracle::enumerate_null_all(c);
        for (auto m : kAllMeasures) {
            const auto& dist = all[static_cast<std::size_t>(measure_number(m) - 1)];
            const auto observed = oracle::measure(c, measure_number(m));
            const auto ref = oracle::directional_tail(dist, observed);
            const auto r = exact_test(t, m);
            CHECK(r.observed == observed);
            CHECK(std::abs(r.null_mean - ref.mean) <= 1e-12);
            CHECK(std::abs(r.p_value - ref.p) <= 1e-12);
            const auto d = exact_null_distribution(fit(t), spec_for(m));
            for (const auto& [v, p] : dist) CHECK(std::abs(d.at(v) - p) <= 1e-12);
        }
    }
}

TEST_CASE("two-sided doubles and caps") {
    const auto sim = simulate_reference(21);
    for (auto m : kAllMeasures) {
        const auto one = exact_test(sim.table, m);
        const auto two = exact_test(sim.table, m, {0.05, true});
        CHECK(two.p_value == doctest::Approx(std::min(1.0, 2.0 * one.p_value)));
        CHECK(two.significant == (two.p_value < 0.05));
    }
}

TEST_CASE("bootstrap agrees with enumeration within Monte Carlo error") {
    DyadTable t;
    t.add(CellIndex::from_bits(1, 0, 1, 0, 0, 0), 9);
    t.add(CellIndex::from_bits(1, 0, 1, 0, 1, 0), 3);
    t.add(CellIndex::from_bits(0, 1, 1, 0, 1, 0), 10);
    t.add(CellIndex::from_bits(0, 1, 1, 0, 0, 1), 4);
    const auto c = oracle::counts_of(t);
    BootstrapOptions opt;
    opt.trials = 20000;
    opt.seed = 77;
    const auto ref = oracle::directional_tail(oracle::enumerate_null_all(c)[0], oracle::measure(c, 1));
    const auto b = bootstrap_test(t, MeasureId::M1, opt);
    const double se = std::sqrt(ref.p * (1 - ref.p) / static_cast<double>(opt.trials));
    CHECK(std::abs(b.p_value - ref.p) <= 3.0 * se);
    CHECK(b.trials == opt.trials);
    CHECK(b.seed == opt.seed);
    REQUIRE(b.p_value_add_one.has_value());
    const double k = b.p_value * static_cast<double>(opt.trials);
    CHECK(*b.p_value_add_one == doctest::Approx((k + 1) / (static_cast<double>(opt.trials) + 1)));
}

TEST_CASE("bootstrap is deterministic and thread-count independent") {
    const auto sim = simulate_reference(5);
    BootstrapOptions opt;
    opt.trials = 3000;
    opt.seed = 12;
    opt.threads = 1;
    const auto a = bootstrap_tests(sim.table, kAllMeasures, opt);
    const auto b = bootstrap_tests(sim.table, kAllMeasures, opt);
    opt.threads = 3;
    const auto c = bootstrap_tests(sim.table, kAllMeasures, opt);
    CHECK(a == b);
    CHECK(a == c);
    for (std::size_t i = 0; i < kAllMeasures.size(); ++i) {
        CHECK(a[i] == bootstrap_test(sim.table, kAllMeasures[i], {3000, 12, 1, {}}));
    }
}

TEST_CASE("run_all ordering and method selection") {
    const auto sim = simulate_reference(6);
    InferenceSettings s;
    s.trials = 500;
    s.seed = 2;
    s.method = MethodSelection::both;
    const auto both = run_all(sim.table, s);
    REQUIRE(both.size() == 16);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(both[2 * i].measure == kAllMeasures[i]);
        CHECK(both[2 * i].method == Method::bootstrap);
        CHECK(both[2 * i + 1].measure == kAllMeasures[i]);
        CHECK(both[2 * i + 1].method == Method::exact);
        CHECK(both[2 * i].observed == both[2 * i + 1].observed);
    }
    CHECK(max_method_disagreement(both).has_value());
    s.method = MethodSelection::exact;
    const auto exact = run_all(sim.table, s);
    CHECK(exact.size() == 8);
    CHECK_FALSE(max_method_disagreement(exact).has_value());
    s.method = MethodSelection::bootstrap;
    CHECK(run_all(sim.table, s).size() == 8);
}

TEST_CASE("result invariants hold on simulated data") {
    for (std::uint64_t seed = 30; seed < 35; ++seed) {
        const auto sim = simulate_reference(seed);
        InferenceSettings s;
        s.trials = 2000;
        s.seed = seed;
        for (const auto& r : run_all(sim.table, s)) {
            CHECK(r.p_value >= 0.0);
            CHECK(r.p_value <= 1.0);
            CHECK(r.significant == (r.p_value < r.alpha));
            CHECK(r.direction == classify_direction(r.observed, r.null_mean));
            CHECK(r.observed == evaluate(sim.table, r.measure).value);
        }
    }
}

TEST_CASE("reference simulation shows the direct effect") {
    const auto sim = simulate_reference(1);
    const auto m1 = exact_test(sim.table, MeasureId::M1);
    CHECK(m1.direction == Direction::positive);
    CHECK(m1.p_value < 1e-6);
    CHECK(m1.significant);
}
