#include "dyadic/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include "dyadic/errors.hpp"
#include "dyadic/random.hpp"

namespace dyadic {

namespace {

double finish_p(double one_sided, bool two_sided) {
    const double p = two_sided ? 2.0 * one_sided : one_sided;
    return std::clamp(p, 0.0, 1.0);
}

void require_fittable(const DyadTable& table) {
    if (table.empty()) throw InputError("cannot fit a null model to an empty census");
}

struct Tally {
    std::uint64_t at_least = 0;  // null values >= observed
    std::uint64_t at_most = 0;   // null values <= observed
    std::int64_t sum = 0;
};

}  // namespace

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::positive: return "positive";
        case Direction::negative: return "negative";
        case Direction::none: return "none";
    }
    return "none";
}

std::string_view to_string(Method m) { return m == Method::bootstrap ? "bootstrap" : "exact"; }

std::string_view to_string(MethodSelection m) {
    switch (m) {
        case MethodSelection::bootstrap: return "bootstrap";
        case MethodSelection::exact: return "exact";
        case MethodSelection::both: return "both";
    }
    return "both";
}

std::optional<Direction> parse_direction(std::string_view s) {
    if (s == "positive") return Direction::positive;
    if (s == "negative") return Direction::negative;
    if (s == "none") return Direction::none;
    return std::nullopt;
}

std::optional<Method> parse_method(std::string_view s) {
    if (s == "bootstrap") return Method::bootstrap;
    if (s == "exact") return Method::exact;
    return std::nullopt;
}

std::optional<MethodSelection> parse_method_selection(std::string_view s) {
    if (s == "bootstrap") return MethodSelection::bootstrap;
    if (s == "exact") return MethodSelection::exact;
    if (s == "both") return MethodSelection::both;
    return std::nullopt;
}

Direction classify_direction(std::int64_t observed, double mean) {
    const double diff = static_cast<double>(observed) - mean;
    const double tol = 1e-9 * std::max(1.0, std::abs(mean));
    if (diff > tol) return Direction::positive;
    if (diff < -tol) return Direction::negative;
    return Direction::none;
}

std::vector<TrialGroup> trial_groups(const NullModel& model, CellMask side) {
    std::vector<TrialGroup> groups;
    for (int g = 0; g < 16; ++g) {
        const auto event = OutcomeSet(static_cast<std::uint8_t>((side >> (4 * g)) & 0xF));
        if (event.empty() || model.mass(g) == 0) continue;
        const int pq = g & 3;
        groups.push_back({model.mass(g), group_event_probability(model, pq >> 1, pq & 1, event)});
    }
    return groups;
}

DiscreteDistribution exact_null_distribution(const NullModel& model, const MeasureSpec& spec) {
    if (!spec.groups_disjoint()) {
        throw InputError("exact engine needs positive and negative cells in distinct (x,y,p,q) groups");
    }
    const auto pos = trial_groups(model, spec.positive_mask());
    const auto neg = trial_groups(model, spec.negative_mask());
    return difference_distribution(pb_pmf(pos), pb_pmf(neg));
}

TestResult exact_test(const DyadTable& table, MeasureId measure, const TestOptions& options) {
    require_fittable(table);
    const NullModel model = fit(table);
    const MeasureSpec& spec = spec_for(measure);

    double mean = 0.0;
    for (const auto& g : trial_groups(model, spec.positive_mask())) mean += static_cast<double>(g.count) * g.success_prob;
    for (const auto& g : trial_groups(model, spec.negative_mask())) mean -= static_cast<double>(g.count) * g.success_prob;

    const auto null = exact_null_distribution(model, spec);

    TestResult result;
    result.measure = measure;
    result.method = Method::exact;
    result.observed = evaluate(table, spec).value;
    result.null_mean = mean;
    result.direction = classify_direction(result.observed, mean);
    const double tail = result.direction == Direction::negative ? null.lower_tail(result.observed)
                                                                : null.upper_tail(result.observed);
    result.p_value = finish_p(tail, options.two_sided);
    result.alpha = options.alpha;
    result.significant = result.p_value < options.alpha;
    return result;
}

std::vector<TestResult> bootstrap_tests(const DyadTable& table, std::span<const MeasureId> measures,
                                        const BootstrapOptions& options) {
    if (options.trials == 0) throw InputError("bootstrap needs at least one trial");
    require_fittable(table);
    const NullModel model = fit(table);
    const NullSampler sampler(model);

    const std::size_t m = measures.size();
    std::vector<const MeasureSpec*> specs;
    std::vector<std::int64_t> observed;
    for (auto id : measures) {
        specs.push_back(&spec_for(id));
        observed.push_back(evaluate(table, id).value);
    }

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, std::vector<Tally>& tally) {
        for (std::uint64_t t = begin; t < end; ++t) {
            Rng rng(derive_seed(options.seed, t));
            const DyadTable draw = sampler.draw(rng);
            for (std::size_t k = 0; k < m; ++k) {
                const std::int64_t v = evaluate(draw, *specs[k]).value;
                tally[k].at_least += v >= observed[k] ? 1 : 0;
                tally[k].at_most += v <= observed[k] ? 1 : 0;
                tally[k].sum += v;
            }
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, options.trials));

    std::vector<std::vector<Tally>> partial(threads, std::vector<Tally>(m));
    if (threads == 1) {
        run_range(0, options.trials, partial[0]);
    } else {
        const std::uint64_t chunk = (options.trials + threads - 1) / threads;
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t begin = std::min(options.trials, w * chunk);
            const std::uint64_t end = std::min(options.trials, begin + chunk);
            workers.emplace_back([&, w, begin, end] { run_range(begin, end, partial[w]); });
        }
    }

    std::vector<TestResult> results;
    const double trials = static_cast<double>(options.trials);
    for (std::size_t k = 0; k < m; ++k) {
        Tally total;
        for (const auto& part : partial) {
            total.at_least += part[k].at_least;
            total.at_most += part[k].at_most;
            total.sum += part[k].sum;
        }
        TestResult r;
        r.measure = measures[k];
        r.method = Method::bootstrap;
        r.observed = observed[k];
        r.null_mean = static_cast<double>(total.sum) / trials;
        r.direction = classify_direction(r.observed, r.null_mean);
        const std::uint64_t extreme = r.direction == Direction::negative ? total.at_most : total.at_least;
        r.p_value = finish_p(static_cast<double>(extreme) / trials, options.test.two_sided);
        r.p_value_add_one = finish_p(static_cast<double>(extreme + 1) / (trials + 1.0), options.test.two_sided);
        r.trials = options.trials;
        r.seed = options.seed;
        r.alpha = options.test.alpha;
        r.significant = r.p_value < options.test.alpha;
        results.push_back(r);
    }
    return results;
}

TestResult bootstrap_test(const DyadTable& table, MeasureId measure, const BootstrapOptions& options) {
    const std::array<MeasureId, 1> one{measure};
    return bootstrap_tests(table, one, options).front();
}

std::vector<TestResult> run_all(const DyadTable& table, const InferenceSettings& settings) {
    const TestOptions test{settings.alpha, settings.two_sided};
    std::vector<TestResult> boot;
    if (settings.method != MethodSelection::exact) {
        BootstrapOptions options;
        options.trials = settings.trials;
        options.seed = settings.seed;
        options.threads = settings.threads;
        options.test = test;
        boot = bootstrap_tests(table, kAllMeasures, options);
    }
    std::vector<TestResult> results;
    for (std::size_t k = 0; k < kAllMeasures.size(); ++k) {
        if (!boot.empty()) results.push_back(boot[k]);
        if (settings.method != MethodSelection::bootstrap) results.push_back(exact_test(table, kAllMeasures[k], test));
    }
    return results;
}

std::optional<double> max_method_disagreement(std::span<const TestResult> results) {
    std::array<std::optional<double>, 8> boot, exact;
    for (const auto& r : results) {
        auto& slot = r.method == Method::bootstrap ? boot : exact;
        slot[static_cast<std::size_t>(measure_number(r.measure) - 1)] = r.p_value;
    }
    std::optional<double> worst;
    for (std::size_t k = 0; k < 8; ++k) {
        if (boot[k] && exact[k]) {
            const double d = std::abs(*boot[k] - *exact[k]);
            worst = worst ? std::max(*worst, d) : d;
        }
    }
    return worst;
}

}  // namespace dyadic
