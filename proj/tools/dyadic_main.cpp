// dyadic: command line front end.
//
//   dyadic evaluate --config run.cfg --out-csv r.csv --out-json r.json --out-svg r.svg
//   dyadic table --table item1.txt --table-mode probability --table-scale 100 --out-csv r.csv
//   dyadic simulate --seed 7 --out-dyads sim.csv --evaluate --out-json r.json
//   dyadic chart --in-json r.json --out-svg r.svg
//
// Exit codes: 0 success, 1 input error, 2 numerical-integrity failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyadic/chart.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/evaluate.hpp"
#include "dyadic/ingest.hpp"
#include "dyadic/random.hpp"
#include "dyadic/report.hpp"
#include "dyadic/sim.hpp"
#include "dyadic/text.hpp"
#include "dyadic/version.hpp"

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct Outputs {
    std::string csv;
    std::string json;
    std::string svg;
};

void add_outputs(CLI::App* cmd, Outputs& out) {
    cmd->add_option("--out-csv", out.csv, "Write the results table as CSV");
    cmd->add_option("--out-json", out.json, "Write the results as JSON");
    cmd->add_option("--out-svg", out.svg, "Write the bubble chart as SVG");
}

void add_setting(CLI::App* cmd, Overrides& ov, const std::string& flag, const std::string& key,
                 const std::string& help) {
    cmd->add_option_function<std::string>(flag, [&ov, key](const std::string& v) { ov.emplace_back(key, v); }, help);
}

void add_repeated(CLI::App* cmd, Overrides& ov, const std::string& flag, const std::string& key,
                  const std::string& help) {
    cmd->add_option_function<std::vector<std::string>>(
        flag,
        [&ov, key](const std::vector<std::string>& vs) {
            for (const auto& v : vs) ov.emplace_back(key, v);
        },
        help);
}

void add_switch(CLI::App* cmd, Overrides& ov, const std::string& flag, const std::string& key,
                const std::string& help) {
    cmd->add_flag_callback(flag, [&ov, key] { ov.emplace_back(key, "true"); }, help);
}

void add_inference_settings(CLI::App* cmd, Overrides& ov) {
    add_setting(cmd, ov, "--method", "method", "bootstrap, exact or both");
    add_setting(cmd, ov, "--trials", "trials", "Bootstrap trials");
    add_setting(cmd, ov, "--alpha", "alpha", "Significance level");
    add_setting(cmd, ov, "--seed", "seed", "Master seed");
    add_switch(cmd, ov, "--two-sided", "two_sided", "Double the one-sided p-value");
    add_switch(cmd, ov, "--invert-behavior", "invert_behavior", "Flip all behavior bits before testing");
    add_setting(cmd, ov, "--threads", "threads", "Worker threads (0 = all cores)");
    add_repeated(cmd, ov, "--item", "item", "Item as id or id|label (repeatable)");
    add_setting(cmd, ov, "--delimiter", "delimiter", "Field delimiter: a character, tab or space");
}

dyadic::EvaluationConfig build_config(const std::string& config_path, const Overrides& ov,
                                      std::optional<dyadic::InputMode> forced_mode) {
    dyadic::EvaluationConfig config;
    if (!config_path.empty()) config = dyadic::load_config(config_path);
    for (const auto& [key, value] : ov) dyadic::apply_setting(config, key, value);
    if (forced_mode) config.input_mode = *forced_mode;
    return config;
}

void write_outputs(const dyadic::ReportSet& reports, const Outputs& out) {
    if (!out.csv.empty()) dyadic::emit_report(reports, dyadic::ReportFormat::csv, out.csv);
    if (!out.json.empty()) dyadic::emit_report(reports, dyadic::ReportFormat::json, out.json);
    if (!out.svg.empty()) dyadic::emit_bubble_chart(reports, out.svg);
    if (out.csv.empty() && out.json.empty() && out.svg.empty()) {
        std::cout << dyadic::report_csv(reports);
    }
}

void summarize(const dyadic::ReportSet& reports) {
    for (const auto& item : reports.items) {
        if (item.error) std::cerr << "item " << item.item.id << ": " << *item.error << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Dyadic significance tests for network intervention effects"};
    app.set_version_flag("--version", std::string(dyadic::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;
    Outputs out;

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate items from dyad CSV or node CSV plus edge list");
    evaluate->add_option("--config", config_path, "Key = value settings file")->check(CLI::ExistingFile);
    add_inference_settings(evaluate, ov);
    add_setting(evaluate, ov, "--input-mode", "input_mode", "dyad_csv or node_plus_edges");
    add_setting(evaluate, ov, "--dyads", "dyads", "Dyad CSV file");
    add_setting(evaluate, ov, "--nodes", "nodes", "Node survey CSV file");
    add_setting(evaluate, ov, "--edges", "edges", "Edge list file");
    add_setting(evaluate, ov, "--orientation", "orientation", "directed or symmetrize");
    add_outputs(evaluate, out);

    auto* table = app.add_subcommand("table", "Evaluate 64-cell tables");
    table->add_option("--config", config_path, "Key = value settings file")->check(CLI::ExistingFile);
    add_inference_settings(table, ov);
    add_repeated(table, ov, "--table", "table", "Table file, one per item (repeatable)");
    add_setting(table, ov, "--table-mode", "table_mode", "counts or probability");
    add_setting(table, ov, "--table-scale", "table_scale", "Dyads per row in probability mode");
    add_outputs(table, out);

    dyadic::SimParams sim;
    std::size_t sim_nodes = dyadic::kReferenceNodeCount;
    double sim_mean_degree = dyadic::kReferenceMeanDegree;
    std::string sim_orientation = "symmetrize";
    std::string sim_item = "sim";
    std::string out_dyads;
    std::string out_table;
    bool sim_evaluate = false;
    auto* simulate = app.add_subcommand("simulate", "Generate an intervention dataset");
    simulate->add_option("--config", config_path, "Settings used with --evaluate")->check(CLI::ExistingFile);
    simulate->add_option("--node-count", sim_nodes, "Number of nodes")->capture_default_str();
    simulate->add_option("--mean-degree", sim_mean_degree, "Mean degree of the random graph")->capture_default_str();
    simulate->add_option("--participation", sim.participation_prob, "Participation probability")
        ->capture_default_str();
    simulate->add_option("--p-effect", sim.p_effect, "Participant 1->0 probability")->capture_default_str();
    simulate->add_option("--p-against", sim.p_against, "Participant 0->1 probability")->capture_default_str();
    simulate->add_option("--p-change", sim.p_change, "Non-participant 1->0 probability")->capture_default_str();
    simulate->add_option("--p-stay", sim.p_stay, "Non-participant 0->1 probability")->capture_default_str();
    simulate->add_option("--p-social", sim.p_social, "Conformity probability")->capture_default_str();
    simulate->add_option("--baseline", sim.baseline_prevalence, "Initial behavior prevalence")
        ->capture_default_str();
    simulate->add_option("--peer-weight", sim.peer_weight, "Neighbor weight for initial behavior")
        ->capture_default_str();
    simulate->add_option("--sim-seed", sim.seed, "Simulation seed")->capture_default_str();
    simulate->add_option("--sim-orientation", sim_orientation, "directed or symmetrize")->capture_default_str();
    simulate->add_option("--sim-item", sim_item, "Item id for the generated dyads")->capture_default_str();
    simulate->add_option("--out-dyads", out_dyads, "Write the generated dyads as CSV");
    simulate->add_option("--out-table", out_table, "Write the 64-cell census");
    simulate->add_flag("--evaluate", sim_evaluate, "Test the generated census");
    add_inference_settings(simulate, ov);
    add_outputs(simulate, out);

    std::string in_json;
    std::string chart_svg;
    auto* chart = app.add_subcommand("chart", "Draw a bubble chart from a JSON report");
    chart->add_option("--in-json", in_json, "JSON report")->required()->check(CLI::ExistingFile);
    chart->add_option("--out-svg", chart_svg, "SVG output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (*evaluate) {
        const auto config = build_config(config_path, ov, std::nullopt);
        if (config.input_mode == dyadic::InputMode::table64) {
            throw dyadic::InputError("use the table subcommand for 64-cell tables");
        }
        const auto reports = dyadic::evaluate_items(config);
        summarize(reports);
        write_outputs(reports, out);
    } else if (*table) {
        const auto reports = dyadic::evaluate_items(build_config(config_path, ov, dyadic::InputMode::table64));
        summarize(reports);
        write_outputs(reports, out);
    } else if (*simulate) {
        const auto orientation = dyadic::parse_orientation(sim_orientation);
        if (!orientation) throw dyadic::InputError("orientation must be directed or symmetrize");
        sim.validate();
        const auto result =
            dyadic::simulate(sim_nodes, dyadic::edge_model::MeanDegree{sim_mean_degree}, sim, *orientation, sim_item);
        if (!out_dyads.empty()) dyadic::write_text_file(out_dyads, dyadic::dyad_csv_text(result.records));
        if (!out_table.empty()) dyadic::write_text_file(out_table, dyadic::table64_text(result.table));
        if (sim_evaluate) {
            auto config = build_config(config_path, ov, std::nullopt);
            config.orientation = *orientation;
            dyadic::InferenceSettings settings;
            settings.method = config.method;
            settings.trials = config.trials;
            settings.alpha = config.alpha;
            settings.two_sided = config.two_sided;
            settings.threads = config.threads;
            settings.seed = dyadic::derive_seed(config.seed, 0);
            const auto table_used =
                config.invert_behavior ? dyadic::invert_behavior(result.table) : result.table;
            dyadic::ReportSet reports;
            reports.info = dyadic::run_info(config);
            reports.items.push_back(dyadic::evaluate_table({sim_item, sim_item}, table_used, settings));
            summarize(reports);
            write_outputs(reports, out);
        } else if (out_dyads.empty() && out_table.empty()) {
            std::cout << dyadic::table64_text(result.table);
        }
    } else if (*chart) {
        dyadic::emit_bubble_chart(dyadic::read_report_json(in_json), chart_svg);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const dyadic::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const dyadic::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
