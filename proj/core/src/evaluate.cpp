#include "dyadic/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "dyadic/errors.hpp"
#include "dyadic/ingest.hpp"
#include "dyadic/random.hpp"

namespace dyadic {

namespace {

struct Job {
    ItemSpec item;
    std::optional<DyadTable> table;
    std::size_t dropped = 0;
    std::optional<std::string> error;
};

std::vector<ItemSpec> items_or(const EvaluationConfig& config, const std::vector<std::string>& found) {
    if (!config.items.empty()) return config.items;
    std::vector<ItemSpec> out;
    for (const auto& id : found) out.push_back({id, id});
    return out;
}

template <typename Build>
void fill(Job& job, Build build) {
    try {
        job.table = build();
    } catch (const InputError& e) {
        job.error = e.what();
    }
}

std::vector<Job> prepare_dyad_csv(const EvaluationConfig& config) {
    const auto csv = parse_dyad_csv(config.dyads, config.delimiter);
    std::vector<Job> jobs;
    for (const auto& item : items_or(config, csv.item_order)) {
        Job job{item, std::nullopt, csv.dropped_for(item.id), std::nullopt};
        fill(job, [&] {
            std::vector<DyadRecord> mine;
            for (const auto& r : csv.records) {
                if (r.item_id == item.id) mine.push_back(r);
            }
            return build_table(mine, item.id);
        });
        jobs.push_back(std::move(job));
    }
    return jobs;
}

std::vector<Job> prepare_node_edges(const EvaluationConfig& config) {
    const auto nodes = parse_node_csv(config.nodes, config.delimiter);
    const auto edges = parse_edge_list(config.edges, config.delimiter);
    std::vector<Job> jobs;
    for (const auto& item : items_or(config, nodes.items)) {
        Job job{item, std::nullopt, 0, std::nullopt};
        fill(job, [&] {
            const auto joined = join_node_edges(nodes, edges, item.id, config.orientation);
            job.dropped = joined.dropped();
            return build_table(joined.records, item.id);
        });
        jobs.push_back(std::move(job));
    }
    return jobs;
}

std::vector<Job> prepare_tables(const EvaluationConfig& config) {
    Table64Options options;
    options.delimiter = config.delimiter;
    options.probability = config.table_probability;
    options.scale = config.table_scale;
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < config.tables.size(); ++k) {
        ItemSpec item;
        if (k < config.items.size()) {
            item = config.items[k];
        } else {
            item.id = config.tables[k].stem().string();
            item.label = item.id;
        }
        Job job{item, std::nullopt, 0, std::nullopt};
        fill(job, [&] { return parse_table64(config.tables[k], options); });
        jobs.push_back(std::move(job));
    }
    return jobs;
}

}  // namespace

ItemReport evaluate_table(const ItemSpec& item, const DyadTable& table, const InferenceSettings& settings,
                          std::size_t dyads_dropped) {
    ItemReport report;
    report.item = item;
    report.dyads_used = static_cast<std::size_t>(table.total());
    report.dyads_dropped = dyads_dropped;
    try {
        report.results = run_all(table, settings);
    } catch (const InputError& e) {
        report.results.clear();
        report.error = e.what();
    }
    return report;
}

ReportSet evaluate_items(const EvaluationConfig& config) {
    config.validate();
    std::vector<Job> jobs;
    switch (config.input_mode) {
        case InputMode::dyad_csv: jobs = prepare_dyad_csv(config); break;
        case InputMode::node_plus_edges: jobs = prepare_node_edges(config); break;
        case InputMode::table64: jobs = prepare_tables(config); break;
    }
    if (jobs.empty()) throw InputError("no items to evaluate");

    ReportSet out;
    out.info = run_info(config);
    out.items.resize(jobs.size());

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned requested = config.threads == 0 ? hw : config.threads;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(requested, jobs.size()));

    InferenceSettings base;
    base.method = config.method;
    base.trials = config.trials;
    base.alpha = config.alpha;
    base.two_sided = config.two_sided;
    base.threads = jobs.size() == 1 ? requested : 1;

    std::atomic<std::size_t> next{0};
    std::exception_ptr fatal;
    std::mutex fatal_mutex;
    auto run = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            auto& job = jobs[k];
            auto& report = out.items[k];
            if (!job.table) {
                report.item = job.item;
                report.dyads_dropped = job.dropped;
                report.error = job.error;
                continue;
            }
            try {
                auto settings = base;
                settings.seed = derive_seed(config.seed, k);
                const DyadTable table = config.invert_behavior ? invert_behavior(*job.table) : *job.table;
                report = evaluate_table(job.item, table, settings, job.dropped);
            } catch (...) {
                const std::lock_guard lock(fatal_mutex);
                if (!fatal) fatal = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    }
    if (fatal) std::rethrow_exception(fatal);
    return out;
}

}  // namespace dyadic
