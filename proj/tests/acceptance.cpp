// Acceptance run: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dyadic/distribution.hpp"
#include "dyadic/dyad.hpp"
#include "dyadic/ingest.hpp"
#include "dyadic/inference.hpp"
#include "dyadic/measures.hpp"
#include "dyadic/null_model.hpp"
#include "dyadic/random.hpp"
#include "dyadic/sim.hpp"
#include "dyadic/text.hpp"
#include "oracles.hpp"

using namespace dyadic;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream out;
    out.precision(precision);
    out << v;
    return out.str();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
}

// 1. Exact and bootstrap p-values agree on simulated reference datasets.
void agreement() {
    constexpr int kDatasets = 20;
    constexpr double kTolerance = 2e-3;
    int within = 0;
    double slowest = 0.0;
    double worst = 0.0;
    std::vector<std::string> gaps;
    for (int d = 0; d < kDatasets; ++d) {
        const auto sim = simulate_reference(derive_seed(2024, static_cast<std::uint64_t>(d)));
        InferenceSettings s;
        s.method = MethodSelection::both;
        s.trials = 100000;
        s.seed = derive_seed(7, static_cast<std::uint64_t>(d));
        s.threads = 1;
        const auto start = Clock::now();
        const auto results = run_all(sim.table, s);
        slowest = std::max(slowest, seconds_since(start));
        const double gap = max_method_disagreement(results).value_or(1.0);
        worst = std::max(worst, gap);
        within += gap <= kTolerance;
        gaps.push_back(fmt(gap, 2));
    }
    std::string list;
    for (const auto& g : gaps) list += (list.empty() ? "" : ",") + g;
    report(1, within >= 19 && slowest < 60.0,
           std::to_string(within) + "/20 datasets with max|p_exact-p_boot| <= 2e-3 (need 19); worst " + fmt(worst, 3) +
               "; slowest dataset " + fmt(slowest, 3) + " s (limit 60); gaps [" + list + "]");
}

// 2. pb_pmf equals literal subset enumeration.
void pb_oracle() {
    std::mt19937_64 gen(2);
    std::uniform_int_distribution<int> n_groups(1, 6);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    std::uniform_int_distribution<int> special(0, 9);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::uniform_int_distribution<std::uint64_t> total_dist(0, 15);
        std::uint64_t remaining = total_dist(gen);
        std::vector<TrialGroup> groups;
        const int k = n_groups(gen);
        for (int i = 0; i < k; ++i) {
            std::uniform_int_distribution<std::uint64_t> count(0, remaining);
            const auto c = i + 1 == k ? remaining : count(gen);
            remaining -= c;
            double p = prob(gen);
            const int sp = special(gen);
            if (sp == 0) p = 0.0;
            if (sp == 1) p = 1.0;
            groups.push_back({c, p});
        }
        std::vector<double> probs;
        for (const auto& g : groups)
            for (std::uint64_t i = 0; i < g.count; ++i) probs.push_back(g.success_prob);
        const auto expected = oracle::pb_subsets(probs);
        const auto got = pb_pmf(groups);
        for (std::size_t j = 0; j < expected.size(); ++j) {
            worst = std::max(worst, std::abs(got.at(static_cast<std::int64_t>(j)) - expected[j]));
        }
        for (auto v = got.support_min(); v <= got.support_max(); ++v) {
            if (v < 0 || v >= static_cast<std::int64_t>(expected.size())) worst = std::max(worst, got.at(v));
        }
    }
    report(2, worst <= 1e-12, "1000 cases, max abs pmf diff " + fmt(worst, 3) + " (limit 1e-12)");
}

// 3. exact_test tails equal exhaustive enumeration on tables of at most 12 dyads.
void small_exhaustive() {
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> size(1, 12);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const auto c = oracle::random_small_table(gen, static_cast<std::uint64_t>(size(gen)));
        const auto table = oracle::table_of(c);
        const auto all = oracle::enumerate_null_all(c);
        for (auto m : kAllMeasures) {
            const auto& dist = all[static_cast<std::size_t>(measure_number(m) - 1)];
            const auto ref = oracle::directional_tail(dist, oracle::measure(c, measure_number(m)));
            const auto r = exact_test(table, m);
            worst = std::max(worst, std::abs(r.p_value - ref.p));
        }
    }
    report(3, worst <= 1e-12, "100 tables x 8 measures, max abs tail diff " + fmt(worst, 3) + " (limit 1e-12)");
}

// 4. Rejection rate of M1 on data drawn from a fitted null model.
void calibration() {
    const auto base = simulate_reference(4044).table;
    const auto model = fit(base);
    const auto start = Clock::now();
    int rejected = 0;
    int rejected_two_sided = 0;
    constexpr int kReplicates = 500;
    for (int i = 0; i < kReplicates; ++i) {
        const auto t = sample(model, derive_seed(404, static_cast<std::uint64_t>(i))).table;
        const auto r = exact_test(t, MeasureId::M1);
        rejected += r.p_value <= 0.05;
        rejected_two_sided += std::min(1.0, 2.0 * r.p_value) <= 0.05;
    }
    const double elapsed = seconds_since(start);
    const double rate = static_cast<double>(rejected) / kReplicates;
    report(4, rate >= 0.02 && rate <= 0.09 && elapsed < 300.0,
           "M1 fraction p <= 0.05 over 500 null replicates of a " + std::to_string(base.total()) +
               "-dyad table: " + fmt(rate) + " (window [0.02, 0.09]); two-sided rate " +
               fmt(static_cast<double>(rejected_two_sided) / kReplicates) + "; " + fmt(elapsed, 3) + " s");
}

// 5. Qualitative pattern of the reference simulation.
void reference_pattern() {
    int m1_hits = 0;
    std::vector<double> m3;
    std::vector<double> m5;
    constexpr int kRuns = 100;
    for (int run = 0; run < kRuns; ++run) {
        const auto sim = simulate_reference(derive_seed(5005, static_cast<std::uint64_t>(run)));
        m1_hits += exact_test(sim.table, MeasureId::M1).p_value < 0.01;
        m3.push_back(exact_test(sim.table, MeasureId::M3).p_value);
        m5.push_back(exact_test(sim.table, MeasureId::M5).p_value);
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    };
    const double med3 = median(m3);
    const double med5 = median(m5);
    report(5, m1_hits >= 95 && med3 > 0.05 && med5 > 0.05,
           "M1 p < 0.01 in " + std::to_string(m1_hits) + "/100 runs (need 95); median p M3 " + fmt(med3) + ", M5 " +
               fmt(med5) + " (need > 0.05)");
}

// 6. Marginal identities and fitted row sums.
void structural() {
    std::mt19937_64 gen(6);
    int bad = 0;
    double worst_row = 0.0;
    for (int rep = 0; rep < 10000; ++rep) {
        const auto c = oracle::random_table(gen, rep % 10 == 0 ? 3 : 100000);
        const auto table = oracle::table_of(c);
        const auto m = marginals(table);
        const auto o = oracle::marginals(c);
        Count sum_n0 = 0;
        Count sum_n1 = 0;
        for (int pq = 0; pq < 4; ++pq) {
            Count row = 0;
            for (int rs = 0; rs < 4; ++rs) row += m.n_pqrs[static_cast<std::size_t>(4 * pq + rs)];
            Count groups = 0;
            for (int xy = 0; xy < 4; ++xy) groups += m.n0_group[static_cast<std::size_t>(4 * xy + pq)];
            bad += row != m.n0[static_cast<std::size_t>(pq)];
            bad += groups != m.n0[static_cast<std::size_t>(pq)];
            bad += m.n0[static_cast<std::size_t>(pq)] != o.n0[static_cast<std::size_t>(pq)];
            sum_n0 += m.n0[static_cast<std::size_t>(pq)];
            sum_n1 += m.n1[static_cast<std::size_t>(pq)];
        }
        bad += sum_n0 != table.total() || sum_n1 != table.total() || o.total != table.total();
        const auto model = fit(table);
        for (int pq = 0; pq < 4; ++pq) {
            if (!model.row_defined(pq)) continue;
            double s = 0.0;
            for (int rs = 0; rs < 4; ++rs) s += model.probability(pq, rs);
            worst_row = std::max(worst_row, std::abs(s - 1.0));
        }
    }
    report(6, bad == 0 && worst_row <= 1e-12,
           "10000 tables, " + std::to_string(bad) + " identity violations; max |row sum - 1| " + fmt(worst_row, 3) +
               " (limit 1e-12)");
}

// 7. Measures equal the brute-force formula evaluator.
void formulas() {
    std::mt19937_64 gen(7);
    int mismatches = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto c = oracle::random_table(gen, 50000);
        const auto table = oracle::table_of(c);
        for (auto m : kAllMeasures) mismatches += evaluate(table, m).value != oracle::measure(c, measure_number(m));
    }
    report(7, mismatches == 0, "1000 tables x 8 measures, " + std::to_string(mismatches) + " mismatches");
}

// 8. Two CLI runs produce byte-identical outputs.
void determinism() {
#ifdef DYADIC_CLI_PATH
    const fs::path dir = fs::temp_directory_path() / "dyadic_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string csv = "ego_id,alter_id,ego_part,alter_part,ego_b0,alter_b0,ego_b1,alter_b1,item_id\n";
    for (int k = 0; k < 3; ++k) {
        SimParams p;
        p.seed = 80 + static_cast<std::uint64_t>(k);
        const auto sim = simulate(200, edge_model::MeanDegree{5.0}, p, Orientation::symmetrize, "q" + std::to_string(k));
        const auto body = dyad_csv_text(sim.records);
        csv += body.substr(body.find('\n') + 1);
    }
    write_text_file(dir / "dyads.csv", csv);
    write_text_file(dir / "run.cfg",
                    "method = both\ntrials = 20000\nseed = 99\nthreads = 0\ndyads = dyads.csv\n"
                    "item = q0|First item\nitem = q1|Second item\nitem = q2|Third item\n");
    bool ok = true;
    for (const char* run : {"a", "b"}) {
        const auto out = dir / run;
        fs::create_directories(out);
        const std::string cmd = std::string("\"") + DYADIC_CLI_PATH + "\" evaluate --config \"" +
                                (dir / "run.cfg").string() + "\" --out-csv \"" + (out / "r.csv").string() +
                                "\" --out-json \"" + (out / "r.json").string() + "\" --out-svg \"" +
                                (out / "r.svg").string() + "\"";
        ok = ok && std::system(cmd.c_str()) == 0;
    }
    std::string detail;
    for (const char* name : {"r.csv", "r.json", "r.svg"}) {
        bool same = false;
        try {
            const auto a = read_text_file(dir / "a" / name);
            const auto b = read_text_file(dir / "b" / name);
            same = !a.empty() && a == b;
        } catch (const std::exception&) {
            same = false;
        }
        ok = ok && same;
        detail += std::string(name) + (same ? " identical; " : " differs; ");
    }
    report(8, ok, "two evaluate runs: " + detail);
#else
    report(8, false, "command line tool not built");
#endif
}

// 9. Throughput on a 2397-dyad table.
void throughput() {
    const auto sim = simulate_reference(909);
    std::mt19937_64 gen(9);
    std::uniform_int_distribution<std::size_t> pick(0, sim.records.size() - 1);
    DyadTable table;
    for (int i = 0; i < 2397; ++i) table.add(classify_dyad(sim.records[pick(gen)]));

    auto start = Clock::now();
    for (auto m : kAllMeasures) (void)exact_test(table, m);
    const double exact_s = seconds_since(start);

    BootstrapOptions opt;
    opt.trials = 100000;
    opt.seed = 9;
    opt.threads = 1;
    start = Clock::now();
    (void)bootstrap_tests(table, kAllMeasures, opt);
    const double boot_s = seconds_since(start);
    report(9, exact_s < 1.0 && boot_s < 30.0,
           "2397 dyads: exact 8 measures " + fmt(exact_s, 3) + " s (limit 1), bootstrap 100000 trials " +
               fmt(boot_s, 3) + " s (limit 30), single thread");
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria = {agreement,  pb_oracle, small_exhaustive,
                                                         calibration, reference_pattern, structural,
                                                         formulas,   determinism, throughput};
    for (const auto& c : criteria) {
        try {
            c();
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "criterion error: " << e.what() << std::endl;
        }
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
