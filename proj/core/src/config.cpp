#include "dyadic/config.hpp"

#include <charconv>

#include "dyadic/errors.hpp"
#include "dyadic/text.hpp"

namespace dyadic {

namespace {

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw InputError("setting '" + std::string(key) + "' needs a non-negative integer, got '" + std::string(v) + "'");
    }
    return out;
}

double parse_real(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw InputError("setting '" + std::string(key) + "' needs a number, got '" + std::string(v) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw InputError("setting '" + std::string(key) + "' needs true/false, got '" + std::string(v) + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view v) {
    std::filesystem::path p{std::string(v)};
    if (p.is_relative() && !base.empty()) return base / p;
    return p;
}

}  // namespace

std::string_view to_string(InputMode m) {
    switch (m) {
        case InputMode::dyad_csv: return "dyad_csv";
        case InputMode::node_plus_edges: return "node_plus_edges";
        case InputMode::table64: return "table64";
    }
    return "dyad_csv";
}

std::optional<InputMode> parse_input_mode(std::string_view s) {
    if (s == "dyad_csv") return InputMode::dyad_csv;
    if (s == "node_plus_edges") return InputMode::node_plus_edges;
    if (s == "table64") return InputMode::table64;
    return std::nullopt;
}

ItemSpec parse_item_spec(std::string_view text) {
    const auto bar = text.find('|');
    ItemSpec item;
    item.id = trim(text.substr(0, bar));
    item.label = bar == std::string_view::npos ? item.id : trim(text.substr(bar + 1));
    if (item.id.empty()) throw InputError("item specification has an empty id");
    return item;
}

void EvaluationConfig::validate() const {
    if (method != MethodSelection::exact && trials == 0) throw InputError("trials must be at least 1 for bootstrap");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0,1)");
    switch (input_mode) {
        case InputMode::dyad_csv:
            if (dyads.empty()) throw InputError("dyad_csv mode needs a dyads file");
            break;
        case InputMode::node_plus_edges:
            if (nodes.empty() || edges.empty()) throw InputError("node_plus_edges mode needs nodes and edges files");
            break;
        case InputMode::table64:
            if (tables.empty()) throw InputError("table64 mode needs at least one table file");
            if (!items.empty() && items.size() != tables.size()) {
                throw InputError("table64 mode needs one item per table file");
            }
            break;
    }
}

void apply_setting(EvaluationConfig& config, std::string_view key, std::string_view raw,
                   const std::filesystem::path& base_dir) {
    const std::string value = trim(raw);
    if (key == "method") {
        const auto m = parse_method_selection(value);
        if (!m) throw InputError("method must be bootstrap, exact or both");
        config.method = *m;
    } else if (key == "trials") {
        config.trials = parse_uint(key, value);
    } else if (key == "alpha") {
        config.alpha = parse_real(key, value);
    } else if (key == "seed") {
        config.seed = parse_uint(key, value);
    } else if (key == "two_sided") {
        config.two_sided = parse_bool(key, value);
    } else if (key == "invert_behavior") {
        config.invert_behavior = parse_bool(key, value);
    } else if (key == "orientation") {
        const auto o = parse_orientation(value);
        if (!o) throw InputError("orientation must be directed or symmetrize");
        config.orientation = *o;
    } else if (key == "delimiter") {
        if (value == "tab" || value == "\\t") config.delimiter = '\t';
        else if (value == "space") config.delimiter = ' ';
        else if (value.size() == 1) config.delimiter = value[0];
        else throw InputError("delimiter must be a single character, 'tab' or 'space'");
    } else if (key == "input_mode") {
        const auto m = parse_input_mode(value);
        if (!m) throw InputError("input_mode must be dyad_csv, node_plus_edges or table64");
        config.input_mode = *m;
    } else if (key == "dyads") {
        config.dyads = resolve(base_dir, value);
    } else if (key == "nodes") {
        config.nodes = resolve(base_dir, value);
    } else if (key == "edges") {
        config.edges = resolve(base_dir, value);
    } else if (key == "table") {
        config.tables.push_back(resolve(base_dir, value));
    } else if (key == "table_mode") {
        if (value == "probability") config.table_probability = true;
        else if (value == "counts") config.table_probability = false;
        else throw InputError("table_mode must be counts or probability");
    } else if (key == "table_scale") {
        config.table_scale = parse_uint(key, value);
        if (*config.table_scale == 0) throw InputError("table_scale must be at least 1");
    } else if (key == "item") {
        config.items.push_back(parse_item_spec(value));
    } else if (key == "items") {
        for (const auto& id : split_fields(value, ',')) {
            if (!id.empty()) config.items.push_back(parse_item_spec(id));
        }
    } else if (key == "threads") {
        config.threads = static_cast<unsigned>(parse_uint(key, value));
    } else {
        throw InputError("unknown setting '" + std::string(key) + "'");
    }
}

void apply_config_text(EvaluationConfig& config, std::string_view text, const std::filesystem::path& base_dir) {
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError("config line " + std::to_string(i + 1) + ": expected key = value");
        }
        try {
            apply_setting(config, trim(std::string_view(line).substr(0, eq)), std::string_view(line).substr(eq + 1),
                          base_dir);
        } catch (const InputError& e) {
            throw InputError("config line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
}

EvaluationConfig load_config(const std::filesystem::path& path) {
    EvaluationConfig config;
    apply_config_text(config, read_text_file(path), path.parent_path());
    return config;
}

}  // namespace dyadic
