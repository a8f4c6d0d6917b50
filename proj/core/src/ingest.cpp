#include "dyadic/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "dyadic/errors.hpp"
#include "dyadic/text.hpp"

namespace dyadic {

namespace {

constexpr std::array<std::string_view, 9> kDyadColumns = {
    "ego_id", "alter_id", "ego_part", "alter_part", "ego_b0", "alter_b0", "ego_b1", "alter_b1", "item_id"};

bool is_missing(std::string_view v) { return v.empty() || v == "NA" || v == "." || v == "na"; }

bool skip_line(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

std::string where(std::size_t line, std::string_view column) {
    return "line " + std::to_string(line) + ", column '" + std::string(column) + "'";
}

// nullopt for a missing marker; InputError for anything but 0/1.
std::optional<std::uint8_t> parse_bit(std::string_view v, std::size_t line, std::string_view column) {
    if (is_missing(v)) return std::nullopt;
    if (v == "0") return 0;
    if (v == "1") return 1;
    throw InputError(where(line, column) + ": expected 0 or 1, got '" + std::string(v) + "'");
}

std::map<std::string, std::size_t, std::less<>> header_index(const std::vector<std::string>& header) {
    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t i = 0; i < header.size(); ++i) index.emplace(header[i], i);
    return index;
}

std::vector<std::string> split_whitespace(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_any(std::string_view line, char delimiter) {
    return delimiter == ' ' ? split_whitespace(line) : split_fields(line, delimiter);
}

// Non-negative integer or probability value of a table cell.
double parse_value(std::string_view v, std::size_t line, bool probability) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw InputError("line " + std::to_string(line) + ": not a number: '" + std::string(v) + "'");
    }
    if (out < 0.0) throw InputError("line " + std::to_string(line) + ": negative value " + std::string(v));
    if (!probability && out != std::floor(out)) {
        throw InputError("line " + std::to_string(line) + ": counts must be integers, got " + std::string(v));
    }
    return out;
}

int parse_label(std::string_view label, std::size_t width, std::size_t line) {
    if (label.size() != width || label.find_first_not_of("01") != std::string_view::npos) {
        throw InputError("line " + std::to_string(line) + ": expected a " + std::to_string(width) +
                         "-bit label, got '" + std::string(label) + "'");
    }
    int v = 0;
    for (char c : label) v = (v << 1) | (c - '0');
    return v;
}

}  // namespace

std::size_t DyadCsv::dropped_for(std::string_view item) const {
    for (const auto& [id, n] : dropped_by_item) {
        if (id == item) return n;
    }
    return 0;
}

DyadCsv parse_dyad_csv_text(std::string_view text, char delimiter) {
    const auto lines = split_lines(text);
    DyadCsv out;
    std::size_t i = 0;
    while (i < lines.size() && skip_line(lines[i])) ++i;
    if (i == lines.size()) throw InputError("dyad csv has no header row");
    const auto header = header_index(split_fields(lines[i], delimiter));
    std::array<std::size_t, 9> col{};
    for (std::size_t c = 0; c < kDyadColumns.size(); ++c) {
        const auto it = header.find(kDyadColumns[c]);
        if (it == header.end()) throw InputError("dyad csv header lacks column '" + std::string(kDyadColumns[c]) + "'");
        col[c] = it->second;
    }
    const std::size_t needed = *std::max_element(col.begin(), col.end()) + 1;

    auto note_item = [&](const std::string& item) {
        if (std::find(out.item_order.begin(), out.item_order.end(), item) == out.item_order.end()) {
            out.item_order.push_back(item);
            out.dropped_by_item.emplace_back(item, 0);
        }
    };

    for (++i; i < lines.size(); ++i) {
        if (skip_line(lines[i])) continue;
        const std::size_t line_no = i + 1;
        const auto f = split_fields(lines[i], delimiter);
        if (f.size() < needed) {
            throw InputError("line " + std::to_string(line_no) + ": expected at least " + std::to_string(needed) +
                             " fields, got " + std::to_string(f.size()));
        }
        DyadRecord r;
        r.ego_id = f[col[0]];
        r.alter_id = f[col[1]];
        r.item_id = f[col[8]];
        if (r.ego_id.empty() || r.alter_id.empty() || r.item_id.empty()) {
            throw InputError("line " + std::to_string(line_no) + ": empty identifier");
        }
        if (r.ego_id == r.alter_id) {
            throw InputError("line " + std::to_string(line_no) + ": ego and alter are the same node");
        }
        note_item(r.item_id);
        std::array<std::optional<std::uint8_t>, 6> bits;
        for (std::size_t b = 0; b < 6; ++b) bits[b] = parse_bit(f[col[b + 2]], line_no, kDyadColumns[b + 2]);
        if (std::any_of(bits.begin(), bits.end(), [](const auto& v) { return !v; })) {
            ++out.dropped_missing;
            for (auto& [id, n] : out.dropped_by_item) {
                if (id == r.item_id) ++n;
            }
            continue;
        }
        r.x = *bits[0];
        r.y = *bits[1];
        r.p = *bits[2];
        r.q = *bits[3];
        r.r = *bits[4];
        r.s = *bits[5];
        out.records.push_back(std::move(r));
    }
    return out;
}

DyadCsv parse_dyad_csv(const std::filesystem::path& path, char delimiter) {
    return parse_dyad_csv_text(read_text_file(path), delimiter);
}

std::string dyad_csv_text(const std::vector<DyadRecord>& records, char delimiter) {
    std::string out;
    for (std::size_t c = 0; c < kDyadColumns.size(); ++c) {
        if (c) out.push_back(delimiter);
        out += kDyadColumns[c];
    }
    out.push_back('\n');
    for (const auto& r : records) {
        out += escape_field(r.ego_id, delimiter);
        out.push_back(delimiter);
        out += escape_field(r.alter_id, delimiter);
        for (auto bit : {r.x, r.y, r.p, r.q, r.r, r.s}) {
            out.push_back(delimiter);
            out.push_back(static_cast<char>('0' + bit));
        }
        out.push_back(delimiter);
        out += escape_field(r.item_id, delimiter);
        out.push_back('\n');
    }
    return out;
}

NodeSurvey parse_node_csv_text(std::string_view text, char delimiter) {
    const auto lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && skip_line(lines[i])) ++i;
    if (i == lines.size()) throw InputError("node csv has no header row");
    const auto header = split_fields(lines[i], delimiter);
    const auto index = header_index(header);
    const auto id_it = index.find("node_id");
    const auto part_it = index.find("participation");
    if (id_it == index.end() || part_it == index.end()) {
        throw InputError("node csv header needs node_id and participation columns");
    }

    NodeSurvey survey;
    std::vector<std::pair<std::size_t, std::size_t>> item_cols;
    for (const auto& name : header) {
        if (name.size() > 3 && name.ends_with("_b0")) {
            const std::string item = name.substr(0, name.size() - 3);
            const auto after = index.find(item + "_b1");
            if (after == index.end()) throw InputError("node csv has '" + name + "' without '" + item + "_b1'");
            survey.items.push_back(item);
            item_cols.emplace_back(index.at(name), after->second);
        }
    }

    for (++i; i < lines.size(); ++i) {
        if (skip_line(lines[i])) continue;
        const std::size_t line_no = i + 1;
        const auto f = split_fields(lines[i], delimiter);
        if (f.size() != header.size()) {
            throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(f.size()));
        }
        NodeSurveyRow row;
        row.node_id = f[id_it->second];
        if (row.node_id.empty()) throw InputError("line " + std::to_string(line_no) + ": empty node_id");
        row.participation = parse_bit(f[part_it->second], line_no, "participation");
        for (std::size_t k = 0; k < item_cols.size(); ++k) {
            row.behavior.emplace_back(parse_bit(f[item_cols[k].first], line_no, header[item_cols[k].first]),
                                      parse_bit(f[item_cols[k].second], line_no, header[item_cols[k].second]));
        }
        survey.rows.push_back(std::move(row));
    }
    return survey;
}

NodeSurvey parse_node_csv(const std::filesystem::path& path, char delimiter) {
    return parse_node_csv_text(read_text_file(path), delimiter);
}

EdgeList parse_edge_list_text(std::string_view text, char delimiter) {
    EdgeList out;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (skip_line(lines[i])) continue;
        const auto f = split_any(lines[i], delimiter);
        if (f.size() < 2 || f[0].empty() || f[1].empty()) {
            throw InputError("edge list line " + std::to_string(i + 1) + ": expected two identifiers");
        }
        out.edges.emplace_back(f[0], f[1]);
    }
    return out;
}

EdgeList parse_edge_list(const std::filesystem::path& path, char delimiter) {
    return parse_edge_list_text(read_text_file(path), delimiter);
}

SimNetwork network_from_edge_list(const EdgeList& edges) {
    SimNetwork net;
    std::unordered_map<std::string, std::uint32_t> ids;
    auto id_of = [&](const std::string& name) {
        auto [it, inserted] = ids.emplace(name, static_cast<std::uint32_t>(net.node_ids.size()));
        if (inserted) net.node_ids.push_back(name);
        return it->second;
    };
    for (const auto& [a, b] : edges.edges) {
        if (a == b) throw InputError("self-loop on node '" + a + "' in edge list");
        const auto u = id_of(a);
        const auto v = id_of(b);
        net.edges.push_back({u, v});
    }
    net.node_count = net.node_ids.size();
    net.states.assign(net.node_count, NodeState{});
    return net;
}

JoinResult join_node_edges(const NodeSurvey& nodes, const EdgeList& edges, std::string_view item,
                           Orientation orientation) {
    const auto item_it = std::find(nodes.items.begin(), nodes.items.end(), item);
    if (item_it == nodes.items.end()) throw InputError("node csv has no columns for item '" + std::string(item) + "'");
    const auto k = static_cast<std::size_t>(item_it - nodes.items.begin());

    std::unordered_map<std::string, const NodeSurveyRow*> by_id;
    for (const auto& row : nodes.rows) by_id.emplace(row.node_id, &row);

    JoinResult out;
    const std::size_t per_edge = orientation == Orientation::symmetrize ? 2 : 1;
    for (const auto& [a, b] : edges.edges) {
        if (a == b) {
            out.dropped_self_loop += per_edge;
            continue;
        }
        const auto ia = by_id.find(a);
        const auto ib = by_id.find(b);
        if (ia == by_id.end() || ib == by_id.end()) {
            out.dropped_unknown_node += per_edge;
            continue;
        }
        const NodeSurveyRow& u = *ia->second;
        const NodeSurveyRow& v = *ib->second;
        const auto& bu = u.behavior[k];
        const auto& bv = v.behavior[k];
        if (!u.participation || !v.participation || !bu.first || !bu.second || !bv.first || !bv.second) {
            out.dropped_missing += per_edge;
            continue;
        }
        auto emit = [&](const NodeSurveyRow& ego, const NodeSurveyRow& alter) {
            const auto& be = ego.behavior[k];
            const auto& ba = alter.behavior[k];
            DyadRecord r;
            r.ego_id = ego.node_id;
            r.alter_id = alter.node_id;
            r.x = *ego.participation;
            r.y = *alter.participation;
            r.p = *be.first;
            r.q = *ba.first;
            r.r = *be.second;
            r.s = *ba.second;
            r.item_id = std::string(item);
            out.records.push_back(std::move(r));
        };
        emit(u, v);
        if (orientation == Orientation::symmetrize) emit(v, u);
    }
    return out;
}

DyadTable parse_table64_text(std::string_view text, const Table64Options& options) {
    const auto lines = split_lines(text);
    bool probability = false;
    std::uint64_t scale = 100;
    std::array<double, 64> values{};
    std::array<bool, 64> seen{};
    std::size_t filled = 0;
    bool grid = false;
    bool labeled = false;

    auto put = [&](int cell, double v, std::size_t line) {
        if (seen[static_cast<std::size_t>(cell)]) {
            throw InputError("line " + std::to_string(line) + ": cell " + CellIndex::from_index(cell).label() +
                             " given twice");
        }
        seen[static_cast<std::size_t>(cell)] = true;
        values[static_cast<std::size_t>(cell)] = v;
        ++filled;
    };

    std::vector<std::pair<std::size_t, std::vector<std::string>>> data;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (skip_line(lines[i])) continue;
        const auto t = trim(lines[i]);
        if (const auto eq = t.find('='); eq != std::string::npos) {
            const auto key = trim(std::string_view(t).substr(0, eq));
            const auto value = trim(std::string_view(t).substr(eq + 1));
            if (key == "mode") {
                if (value == "probability") probability = true;
                else if (value == "counts") probability = false;
                else throw InputError("line " + std::to_string(i + 1) + ": unknown mode '" + value + "'");
            } else if (key == "scale") {
                std::uint64_t s = 0;
                const auto res = std::from_chars(value.data(), value.data() + value.size(), s);
                if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || s == 0) {
                    throw InputError("line " + std::to_string(i + 1) + ": scale must be a positive integer");
                }
                scale = s;
            } else {
                throw InputError("line " + std::to_string(i + 1) + ": unknown setting '" + key + "'");
            }
            continue;
        }
        data.emplace_back(i + 1, split_any(t, options.delimiter));
    }
    if (options.probability) probability = *options.probability;
    if (options.scale) scale = *options.scale;

    for (const auto& [line, f] : data) {
        if (!f.empty() && f[0] == "xypq") {
            if (grid || labeled) throw InputError("line " + std::to_string(line) + ": unexpected grid header");
            if (f.size() != 5 || f[1] != "00" || f[2] != "01" || f[3] != "10" || f[4] != "11") {
                throw InputError("line " + std::to_string(line) + ": grid header must be xypq,00,01,10,11");
            }
            grid = true;
            continue;
        }
        if (grid) {
            if (f.size() != 5) throw InputError("line " + std::to_string(line) + ": grid rows need 5 fields");
            const int g = parse_label(f[0], 4, line);
            for (int rs = 0; rs < 4; ++rs) {
                put(4 * g + rs, parse_value(f[static_cast<std::size_t>(rs + 1)], line, probability), line);
            }
        } else {
            if (f.size() != 2) throw InputError("line " + std::to_string(line) + ": expected '<xypqrs>,<value>'");
            labeled = true;
            put(parse_label(f[0], 6, line), parse_value(f[1], line, probability), line);
        }
    }
    if (filled != 64) throw InputError("table has " + std::to_string(filled) + " cells; 64 are required");

    if (probability) return probabilities_to_counts(std::span<const double, 64>(values), scale);
    std::array<Count, 64> counts{};
    for (std::size_t c = 0; c < 64; ++c) counts[c] = static_cast<Count>(values[c]);
    return DyadTable(counts);
}

DyadTable parse_table64(const std::filesystem::path& path, const Table64Options& options) {
    return parse_table64_text(read_text_file(path), options);
}

std::string table64_text(const DyadTable& table, char delimiter) {
    std::string out = "xypq";
    for (const char* h : {"00", "01", "10", "11"}) {
        out.push_back(delimiter);
        out += h;
    }
    out.push_back('\n');
    for (int g = 0; g < 16; ++g) {
        out += CellIndex::from_index(4 * g).label().substr(0, 4);
        for (int rs = 0; rs < 4; ++rs) {
            out.push_back(delimiter);
            out += std::to_string(table[CellIndex::from_index(4 * g + rs)]);
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace dyadic
