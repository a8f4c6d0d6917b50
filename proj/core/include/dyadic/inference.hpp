#pragma once

// Significance of M1..M8 under the pooled-transition null model.
//
// Two engines:
//  * bootstrap: redraw the census from the null model `trials` times and read
//    the tail proportion of the simulated measure values;
//  * exact: each side of a measure is a sum of independent binomials (one per
//    (x,y,p,q) group), i.e. a Poisson-Binomial variable; the measure's null is
//    the difference of the two, obtained by convolution.
//
// Tail convention: one-sided and inclusive, in the direction of the observed
// deviation from the null mean: P(M >= obs) when obs >= mean, else P(M <= obs).
// With `two_sided` the p-value is doubled and capped at one.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dyadic/distribution.hpp"
#include "dyadic/dyad.hpp"
#include "dyadic/measures.hpp"
#include "dyadic/null_model.hpp"

namespace dyadic {

enum class Direction { positive, negative, none };
enum class Method { bootstrap, exact };
enum class MethodSelection { bootstrap, exact, both };

std::string_view to_string(Direction d);
std::string_view to_string(Method m);
std::string_view to_string(MethodSelection m);
std::optional<Direction> parse_direction(std::string_view s);
std::optional<Method> parse_method(std::string_view s);
std::optional<MethodSelection> parse_method_selection(std::string_view s);

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr std::uint64_t kDefaultTrials = 100000;

struct TestResult {
    MeasureId measure = MeasureId::M1;
    std::int64_t observed = 0;
    double null_mean = 0.0;
    Direction direction = Direction::none;
    double p_value = 1.0;
    Method method = Method::exact;
    std::uint64_t trials = 0;                // bootstrap only
    std::uint64_t seed = 0;                  // bootstrap only
    std::optional<double> p_value_add_one;   // (k+1)/(trials+1), bootstrap only
    double alpha = kDefaultAlpha;
    bool significant = false;

    bool operator==(const TestResult&) const = default;
};

struct TestOptions {
    double alpha = kDefaultAlpha;
    bool two_sided = false;
};

// Direction of `observed` relative to `mean`; values within 1e-9 (relative to
// max(1,|mean|)) of the mean count as equal.
Direction classify_direction(std::int64_t observed, double mean);

// Per-group trial structure of one side of a measure under `model`.
std::vector<TrialGroup> trial_groups(const NullModel& model, CellMask side);

// Exact null distribution of a measure. Requires spec.groups_disjoint().
DiscreteDistribution exact_null_distribution(const NullModel& model, const MeasureSpec& spec);

TestResult exact_test(const DyadTable& table, MeasureId measure, const TestOptions& options = {});

// Bootstrap engine. Trial t draws its census from the substream
// derive_seed(seed, t), so results do not depend on `threads`.
struct BootstrapOptions {
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = 0;
    unsigned threads = 1;  // 0 = hardware concurrency
    TestOptions test;
};

TestResult bootstrap_test(const DyadTable& table, MeasureId measure, const BootstrapOptions& options);

// Runs the bootstrap once for several measures, sharing the simulated tables.
std::vector<TestResult> bootstrap_tests(const DyadTable& table, std::span<const MeasureId> measures,
                                        const BootstrapOptions& options);

struct InferenceSettings {
    MethodSelection method = MethodSelection::both;
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = 0;
    double alpha = kDefaultAlpha;
    bool two_sided = false;
    unsigned threads = 1;
};

// Results for M1..M8 in measure order; with method = both, each measure yields
// its bootstrap result followed by its exact result.
std::vector<TestResult> run_all(const DyadTable& table, const InferenceSettings& settings);

// Largest |p_bootstrap - p_exact| over measures present with both methods.
std::optional<double> max_method_disagreement(std::span<const TestResult> results);

}  // namespace dyadic
