#pragma once

// Input formats.
//
// Dyad CSV: header naming ego_id, alter_id, ego_part, alter_part, ego_b0,
//   alter_b0, ego_b1, alter_b1, item_id (any column order, extra columns
//   ignored). Bits are 0/1; an empty cell, "NA" or "." marks a missing value
//   and the row is dropped and counted. Any other value is an error.
//
// Node CSV: header node_id, participation, then <item>_b0 and <item>_b1 for
//   each behavioral item. Missing markers as above.
//
// Edge list: two identifier columns per line; '#' starts a comment line.
//
// 64-cell table: optional "mode=counts|probability" and "scale=N" lines, then
//   either 64 lines "<xypqrs>,<value>" (six-bit label) or a grid with header
//   "xypq,00,01,10,11" and 16 rows "<xypq>,v00,v01,v10,v11". Probability
//   tables are turned into counts with probabilities_to_counts.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/dyad.hpp"
#include "dyadic/sim.hpp"

namespace dyadic {

struct DyadCsv {
    std::vector<DyadRecord> records;
    std::vector<std::string> item_order;  // items in order of first appearance
    std::size_t dropped_missing = 0;
    // Missing-data drops per item.
    std::vector<std::pair<std::string, std::size_t>> dropped_by_item;

    std::size_t dropped_for(std::string_view item) const;
};

DyadCsv parse_dyad_csv_text(std::string_view text, char delimiter = ',');
DyadCsv parse_dyad_csv(const std::filesystem::path& path, char delimiter = ',');
std::string dyad_csv_text(const std::vector<DyadRecord>& records, char delimiter = ',');

struct NodeSurveyRow {
    std::string node_id;
    std::optional<std::uint8_t> participation;
    // Aligned with NodeSurvey::items: (before, after).
    std::vector<std::pair<std::optional<std::uint8_t>, std::optional<std::uint8_t>>> behavior;
};

struct NodeSurvey {
    std::vector<std::string> items;
    std::vector<NodeSurveyRow> rows;
};

NodeSurvey parse_node_csv_text(std::string_view text, char delimiter = ',');
NodeSurvey parse_node_csv(const std::filesystem::path& path, char delimiter = ',');

struct EdgeList {
    std::vector<std::pair<std::string, std::string>> edges;
};

// A delimiter of ' ' splits on any run of whitespace.
EdgeList parse_edge_list_text(std::string_view text, char delimiter = ',');
EdgeList parse_edge_list(const std::filesystem::path& path, char delimiter = ',');

// Nodes numbered in order of first appearance; node_ids keep the identifiers.
SimNetwork network_from_edge_list(const EdgeList& edges);

struct JoinResult {
    std::vector<DyadRecord> records;
    std::size_t dropped_unknown_node = 0;
    std::size_t dropped_missing = 0;
    std::size_t dropped_self_loop = 0;

    std::size_t dropped() const { return dropped_unknown_node + dropped_missing + dropped_self_loop; }
};

JoinResult join_node_edges(const NodeSurvey& nodes, const EdgeList& edges, std::string_view item,
                           Orientation orientation);

struct Table64Options {
    char delimiter = ',';
    std::optional<bool> probability;  // overrides the file's mode line
    std::optional<std::uint64_t> scale;
};

DyadTable parse_table64_text(std::string_view text, const Table64Options& options = {});
DyadTable parse_table64(const std::filesystem::path& path, const Table64Options& options = {});
std::string table64_text(const DyadTable& table, char delimiter = ',');

}  // namespace dyadic
