#include "dyadic/report.hpp"

#include <json.hpp>

#include "dyadic/errors.hpp"
#include "dyadic/text.hpp"
#include "dyadic/version.hpp"

namespace dyadic {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kToolName = "dyadic";

Json result_json(const TestResult& r) {
    Json j;
    j["measure"] = std::string(measure_code(r.measure));
    j["measure_label"] = std::string(measure_label(r.measure));
    j["method"] = std::string(to_string(r.method));
    j["observed"] = r.observed;
    j["null_mean"] = r.null_mean;
    j["direction"] = std::string(to_string(r.direction));
    j["p_value"] = r.p_value;
    j["p_value_add_one"] = r.p_value_add_one ? Json(*r.p_value_add_one) : Json(nullptr);
    j["significant"] = r.significant;
    j["alpha"] = r.alpha;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    return j;
}

template <typename T, typename Parse>
T parse_enum(const Json& j, const char* key, Parse parse) {
    const auto v = parse(j.at(key).get<std::string>());
    if (!v) throw InputError(std::string("report field '") + key + "' has an unknown value");
    return *v;
}

TestResult result_from_json(const Json& j) {
    TestResult r;
    r.measure = parse_enum<MeasureId>(j, "measure", [](const std::string& s) { return parse_measure(s); });
    r.method = parse_enum<Method>(j, "method", [](const std::string& s) { return parse_method(s); });
    r.observed = j.at("observed").get<std::int64_t>();
    r.null_mean = j.at("null_mean").get<double>();
    r.direction = parse_enum<Direction>(j, "direction", [](const std::string& s) { return parse_direction(s); });
    r.p_value = j.at("p_value").get<double>();
    if (!j.at("p_value_add_one").is_null()) r.p_value_add_one = j.at("p_value_add_one").get<double>();
    r.significant = j.at("significant").get<bool>();
    r.alpha = j.at("alpha").get<double>();
    r.trials = j.at("trials").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

std::string optional_double(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

RunInfo run_info(const EvaluationConfig& config) {
    RunInfo info;
    info.version = std::string(kVersion);
    info.method = config.method;
    info.trials = config.method == MethodSelection::exact ? 0 : config.trials;
    info.alpha = config.alpha;
    info.seed = config.seed;
    info.two_sided = config.two_sided;
    info.invert_behavior = config.invert_behavior;
    info.orientation = config.orientation;
    info.input_mode = config.input_mode;
    return info;
}

std::string report_json(const ReportSet& reports) {
    Json root;
    root["tool"] = std::string(kToolName);
    root["version"] = reports.info.version;
    Json settings;
    settings["method"] = std::string(to_string(reports.info.method));
    settings["trials"] = reports.info.trials;
    settings["alpha"] = reports.info.alpha;
    settings["seed"] = reports.info.seed;
    settings["two_sided"] = reports.info.two_sided;
    settings["invert_behavior"] = reports.info.invert_behavior;
    settings["orientation"] = std::string(to_string(reports.info.orientation));
    settings["input_mode"] = std::string(to_string(reports.info.input_mode));
    root["settings"] = settings;

    Json items = Json::array();
    for (const auto& item : reports.items) {
        Json ji;
        ji["item_id"] = item.item.id;
        ji["label"] = item.item.label;
        ji["dyads_used"] = item.dyads_used;
        ji["dyads_dropped"] = item.dyads_dropped;
        ji["error"] = item.error ? Json(*item.error) : Json(nullptr);
        const auto gap = max_method_disagreement(item.results);
        ji["max_method_disagreement"] = gap ? Json(*gap) : Json(nullptr);
        Json results = Json::array();
        for (const auto& r : item.results) results.push_back(result_json(r));
        ji["results"] = std::move(results);
        items.push_back(std::move(ji));
    }
    root["items"] = std::move(items);
    return root.dump(2) + "\n";
}

ReportSet parse_report_json(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("report json: ") + e.what());
    }
    try {
        ReportSet out;
        out.info.version = root.at("version").get<std::string>();
        const auto& s = root.at("settings");
        out.info.method =
            parse_enum<MethodSelection>(s, "method", [](const std::string& v) { return parse_method_selection(v); });
        out.info.trials = s.at("trials").get<std::uint64_t>();
        out.info.alpha = s.at("alpha").get<double>();
        out.info.seed = s.at("seed").get<std::uint64_t>();
        out.info.two_sided = s.at("two_sided").get<bool>();
        out.info.invert_behavior = s.at("invert_behavior").get<bool>();
        out.info.orientation =
            parse_enum<Orientation>(s, "orientation", [](const std::string& v) { return parse_orientation(v); });
        out.info.input_mode =
            parse_enum<InputMode>(s, "input_mode", [](const std::string& v) { return parse_input_mode(v); });
        for (const auto& ji : root.at("items")) {
            ItemReport item;
            item.item.id = ji.at("item_id").get<std::string>();
            item.item.label = ji.at("label").get<std::string>();
            item.dyads_used = ji.at("dyads_used").get<std::size_t>();
            item.dyads_dropped = ji.at("dyads_dropped").get<std::size_t>();
            if (!ji.at("error").is_null()) item.error = ji.at("error").get<std::string>();
            for (const auto& jr : ji.at("results")) item.results.push_back(result_from_json(jr));
            out.items.push_back(std::move(item));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("report json: ") + e.what());
    }
}

ReportSet read_report_json(const std::filesystem::path& path) { return parse_report_json(read_text_file(path)); }

std::string report_csv(const ReportSet& reports, char d) {
    static constexpr std::string_view kHeader[] = {
        "item_id", "item_label", "measure", "measure_label", "method", "observed", "null_mean", "direction",
        "p_value", "p_value_add_one", "significant", "alpha", "trials", "seed", "dyads_used", "dyads_dropped",
        "tool_version"};
    std::string out;
    for (std::size_t i = 0; i < std::size(kHeader); ++i) {
        if (i) out.push_back(d);
        out += kHeader[i];
    }
    out.push_back('\n');
    for (const auto& item : reports.items) {
        for (const auto& r : item.results) {
            const bool boot = r.method == Method::bootstrap;
            const std::string fields[] = {
                escape_field(item.item.id, d),
                escape_field(item.item.label, d),
                std::string(measure_code(r.measure)),
                escape_field(measure_label(r.measure), d),
                std::string(to_string(r.method)),
                std::to_string(r.observed),
                format_double(r.null_mean),
                std::string(to_string(r.direction)),
                format_double(r.p_value),
                optional_double(r.p_value_add_one),
                r.significant ? "true" : "false",
                format_double(r.alpha),
                boot ? std::to_string(r.trials) : std::string(),
                boot ? std::to_string(r.seed) : std::string(),
                std::to_string(item.dyads_used),
                std::to_string(item.dyads_dropped),
                reports.info.version,
            };
            for (std::size_t i = 0; i < std::size(fields); ++i) {
                if (i) out.push_back(d);
                out += fields[i];
            }
            out.push_back('\n');
        }
    }
    return out;
}

void emit_report(const ReportSet& reports, ReportFormat format, const std::filesystem::path& path) {
    if (reports.items.empty()) throw InputError("no item reports to write");
    write_text_file(path, format == ReportFormat::json ? report_json(reports) : report_csv(reports));
}

}  // namespace dyadic
