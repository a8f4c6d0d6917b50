#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/config.hpp"
#include "dyadic/inference.hpp"

namespace dyadic {

struct ItemReport {
    ItemSpec item;
    std::vector<TestResult> results;  // measure order; bootstrap before exact
    std::size_t dyads_used = 0;
    std::size_t dyads_dropped = 0;
    std::optional<std::string> error;  // set when the item could not be evaluated

    bool operator==(const ItemReport&) const = default;
};

struct RunInfo {
    std::string version;
    MethodSelection method = MethodSelection::both;
    std::uint64_t trials = 0;
    double alpha = kDefaultAlpha;
    std::uint64_t seed = 0;
    bool two_sided = false;
    bool invert_behavior = false;
    Orientation orientation = Orientation::directed;
    InputMode input_mode = InputMode::dyad_csv;

    bool operator==(const RunInfo&) const = default;
};

RunInfo run_info(const EvaluationConfig& config);

struct ReportSet {
    RunInfo info;
    std::vector<ItemReport> items;

    bool operator==(const ReportSet&) const = default;
};

enum class ReportFormat { json, csv };

std::string report_json(const ReportSet& reports);
ReportSet parse_report_json(std::string_view text);
ReportSet read_report_json(const std::filesystem::path& path);

// One row per (item, measure, method); items that failed contribute no rows.
std::string report_csv(const ReportSet& reports, char delimiter = ',');

// Writes the report; InputError if `reports` has no items or the path is unwritable.
void emit_report(const ReportSet& reports, ReportFormat format, const std::filesystem::path& path);

}  // namespace dyadic
