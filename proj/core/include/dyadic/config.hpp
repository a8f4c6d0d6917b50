#pragma once

// Evaluation settings and the key=value config file.
//
//   # comment
//   method = both            bootstrap | exact | both
//   trials = 100000
//   alpha = 0.05
//   seed = 20240101
//   two_sided = false
//   invert_behavior = false
//   orientation = directed   directed | symmetrize
//   delimiter = ,            single character, or "tab"
//   input_mode = dyad_csv    dyad_csv | node_plus_edges | table64
//   dyads = data/dyads.csv
//   nodes = data/nodes.csv
//   edges = data/edges.txt
//   table = data/item1.txt   (repeatable)
//   table_mode = probability counts | probability
//   table_scale = 100
//   item = 11|Have you reached out to someone?   (repeatable, id|label)
//   items = 1,2,3            (ids only)
//   threads = 1
//
// Relative paths are resolved against the config file's directory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/inference.hpp"
#include "dyadic/sim.hpp"

namespace dyadic {

enum class InputMode { dyad_csv, node_plus_edges, table64 };
std::string_view to_string(InputMode m);
std::optional<InputMode> parse_input_mode(std::string_view s);

struct ItemSpec {
    std::string id;
    std::string label;
    bool operator==(const ItemSpec&) const = default;
};

struct EvaluationConfig {
    std::vector<ItemSpec> items;
    MethodSelection method = MethodSelection::both;
    std::uint64_t trials = kDefaultTrials;
    double alpha = kDefaultAlpha;
    std::uint64_t seed = 1;
    bool two_sided = false;
    bool invert_behavior = false;
    InputMode input_mode = InputMode::dyad_csv;
    Orientation orientation = Orientation::directed;
    char delimiter = ',';
    std::filesystem::path dyads;
    std::filesystem::path nodes;
    std::filesystem::path edges;
    std::vector<std::filesystem::path> tables;
    std::optional<bool> table_probability;
    std::optional<std::uint64_t> table_scale;
    unsigned threads = 1;

    // Throws InputError on inconsistent settings. Items may be empty here; they
    // are then taken from the data.
    void validate() const;
};

// Applies one setting; throws InputError for unknown keys or bad values.
void apply_setting(EvaluationConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir = {});

void apply_config_text(EvaluationConfig& config, std::string_view text, const std::filesystem::path& base_dir = {});
EvaluationConfig load_config(const std::filesystem::path& path);

// "id|label" or just "id" (label defaults to the id).
ItemSpec parse_item_spec(std::string_view text);

}  // namespace dyadic
