#pragma once

#include <cstdint>

#include "dyadic/config.hpp"
#include "dyadic/dyad.hpp"
#include "dyadic/report.hpp"

namespace dyadic {

// Tests one census. InputError from the engines (for instance an empty table)
// is stored in the report's error field.
ItemReport evaluate_table(const ItemSpec& item, const DyadTable& table, const InferenceSettings& settings,
                          std::size_t dyads_dropped = 0);

// Reads the configured inputs and evaluates every item. Item k uses the seed
// derive_seed(config.seed, k). Items run concurrently on config.threads
// workers (0 = hardware concurrency); the output follows item order.
//
// Unreadable or malformed input files raise InputError. A failure confined to
// one item is recorded on that item and the others still run. NumericalError
// is not isolated.
ReportSet evaluate_items(const EvaluationConfig& config);

}  // namespace dyadic
