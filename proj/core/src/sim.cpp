#include "dyadic/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

#include "dyadic/errors.hpp"
#include "dyadic/random.hpp"

namespace dyadic {

namespace {

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InputError(std::string("simulation parameter ") + name + " must lie in [0,1]");
    }
}

std::vector<Edge> complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) edges.push_back({i, j});
    }
    return edges;
}

std::vector<Edge> small_world(std::size_t n, const edge_model::SmallWorld& model, Rng& rng) {
    if (model.neighbors % 2 != 0 || model.neighbors == 0 || model.neighbors >= n) {
        throw InputError("small-world neighbors must be even, positive and below the node count");
    }
    check_probability(model.rewire, "rewire");
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> present;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 1; j <= model.neighbors / 2; ++j) {
            const auto t = static_cast<std::uint32_t>((i + j) % n);
            edges.push_back({i, t});
            present.insert(edge_key(i, t));
        }
    }
    std::vector<std::uint32_t> degree(n, model.neighbors);
    for (auto& e : edges) {
        if (!rng.bernoulli(model.rewire) || degree[e.u] >= n - 1) continue;
        std::uint32_t w;
        do {
            w = static_cast<std::uint32_t>(rng.below(n));
        } while (w == e.u || present.count(edge_key(e.u, w)) != 0);
        present.erase(edge_key(e.u, e.v));
        --degree[e.v];
        ++degree[w];
        e.v = w;
        present.insert(edge_key(e.u, w));
    }
    return edges;
}

std::vector<Edge> havel_hakimi(std::span<const std::uint32_t> degrees) {
    std::set<std::pair<std::uint32_t, std::uint32_t>, std::greater<>> pending;  // (remaining, node)
    for (std::uint32_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] > 0) pending.insert({degrees[i], i});
    }
    std::vector<Edge> edges;
    while (!pending.empty()) {
        auto [d, u] = *pending.begin();
        pending.erase(pending.begin());
        if (d > pending.size()) throw InputError("degree sequence is not graphical");
        std::vector<std::pair<std::uint32_t, std::uint32_t>> taken;
        auto it = pending.begin();
        for (std::uint32_t k = 0; k < d; ++k, ++it) taken.push_back(*it);
        for (const auto& t : taken) {
            pending.erase(t);
            edges.push_back({u, t.second});
            if (t.first > 1) pending.insert({t.first - 1, t.second});
        }
    }
    return edges;
}

void shuffle_edges(std::vector<Edge>& edges, Rng& rng) {
    if (edges.size() < 2) return;
    std::unordered_set<std::uint64_t> present;
    for (const auto& e : edges) present.insert(edge_key(e.u, e.v));
    const std::uint64_t attempts = 10 * static_cast<std::uint64_t>(edges.size());
    for (std::uint64_t a = 0; a < attempts; ++a) {
        const auto i = rng.below(edges.size());
        const auto j = rng.below(edges.size());
        if (i == j) continue;
        Edge e1 = edges[i], e2 = edges[j];
        if (rng.bernoulli(0.5)) std::swap(e2.u, e2.v);
        // (a,b),(c,d) -> (a,d),(c,b)
        const Edge n1{e1.u, e2.v}, n2{e2.u, e1.v};
        if (n1.u == n1.v || n2.u == n2.v) continue;
        if (present.count(edge_key(n1.u, n1.v)) || present.count(edge_key(n2.u, n2.v))) continue;
        present.erase(edge_key(e1.u, e1.v));
        present.erase(edge_key(e2.u, e2.v));
        present.insert(edge_key(n1.u, n1.v));
        present.insert(edge_key(n2.u, n2.v));
        edges[i] = n1;
        edges[j] = n2;
    }
}

std::vector<Edge> degree_sequence_graph(std::size_t n, std::span<const std::uint32_t> degrees, Rng& rng) {
    if (degrees.size() != n) throw InputError("degree sequence length differs from the node count");
    if (!is_graphical(degrees)) throw InputError("degree sequence is not graphical");
    auto edges = havel_hakimi(degrees);
    shuffle_edges(edges, rng);
    return edges;
}

std::vector<Edge> mean_degree_graph(std::size_t n, double mean, Rng& rng) {
    if (!(mean >= 0.0) || mean > static_cast<double>(n - 1)) {
        throw InputError("mean degree must lie in [0, node_count - 1]");
    }
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<std::uint32_t> degrees(n);
        std::uint64_t sum = 0;
        for (auto& d : degrees) {
            d = static_cast<std::uint32_t>(std::min<std::uint64_t>(rng.poisson(mean), n - 1));
            sum += d;
        }
        if (sum % 2 == 1) {
            const auto i = rng.below(n);
            if (degrees[i] > 0) --degrees[i];
            else ++degrees[i];
        }
        if (is_graphical(degrees)) return degree_sequence_graph(n, degrees, rng);
    }
    throw InputError("could not draw a graphical degree sequence for the requested mean degree");
}

std::vector<std::string> default_ids(std::size_t n) {
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
    return ids;
}

std::uint8_t draw_transition(std::uint8_t before, bool participant, const SimParams& params, Rng& rng) {
    if (participant) {
        if (before == 1) return rng.bernoulli(params.p_effect) ? 0 : 1;
        return rng.bernoulli(params.p_against) ? 1 : 0;
    }
    if (before == 1) return rng.bernoulli(params.p_change) ? 0 : 1;
    return rng.bernoulli(params.p_stay) ? 1 : 0;
}

}  // namespace

void SimParams::validate() const {
    check_probability(participation_prob, "participation_prob");
    check_probability(p_effect, "p_effect");
    check_probability(p_against, "p_against");
    check_probability(p_change, "p_change");
    check_probability(p_stay, "p_stay");
    check_probability(p_social, "p_social");
    check_probability(baseline_prevalence, "baseline_prevalence");
    check_probability(peer_weight, "peer_weight");
}

std::vector<std::vector<std::uint32_t>> SimNetwork::adjacency() const {
    std::vector<std::vector<std::uint32_t>> adj(node_count);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

bool is_graphical(std::span<const std::uint32_t> degrees) {
    std::vector<std::uint64_t> d(degrees.begin(), degrees.end());
    const std::size_t n = d.size();
    std::uint64_t total = 0;
    for (auto v : d) {
        if (v >= n && n > 0) return false;
        total += v;
    }
    if (total % 2 != 0) return false;
    std::sort(d.begin(), d.end(), std::greater<>());
    // Erdos-Gallai: sum_{i<k} d_i <= k(k-1) + sum_{i>=k} min(d_i, k), with suffix sums.
    std::vector<std::uint64_t> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];
    std::uint64_t prefix = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        prefix += d[k - 1];
        // First index >= k with d < k.
        const auto split = static_cast<std::size_t>(
            std::upper_bound(d.begin() + static_cast<std::ptrdiff_t>(k), d.end(), std::uint64_t{k}, std::greater<>()) - d.begin());
        const std::uint64_t rhs = k * (k - 1) + k * (split - k) + suffix[split];
        if (prefix > rhs) return false;
    }
    return true;
}

SimNetwork generate_network(std::size_t node_count, const EdgeModel& model, std::uint64_t seed) {
    if (node_count < 2) throw InputError("a network needs at least two nodes");
    if (node_count > std::numeric_limits<std::uint32_t>::max()) throw InputError("node count too large");
    Rng rng(seed);
    SimNetwork network;
    network.node_count = node_count;
    network.node_ids = default_ids(node_count);
    network.edges = std::visit(
        [&](const auto& m) -> std::vector<Edge> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, edge_model::Complete>) {
                return complete_graph(node_count);
            } else if constexpr (std::is_same_v<T, edge_model::FixedEdges>) {
                for (const auto& e : m.edges) {
                    if (e.u >= node_count || e.v >= node_count) throw InputError("edge endpoint out of range");
                    if (e.u == e.v) throw InputError("self-loop in edge list");
                }
                return m.edges;
            } else if constexpr (std::is_same_v<T, edge_model::SmallWorld>) {
                return small_world(node_count, m, rng);
            } else if constexpr (std::is_same_v<T, edge_model::DegreeSequence>) {
                return degree_sequence_graph(node_count, m.degrees, rng);
            } else {
                return mean_degree_graph(node_count, m.mean, rng);
            }
        },
        model);
    network.states.assign(node_count, NodeState{});
    return network;
}

SimNetwork assign_initial_states(SimNetwork network, const SimParams& params, std::uint64_t seed) {
    params.validate();
    Rng rng(seed);
    network.states.assign(network.node_count, NodeState{});
    for (auto& state : network.states) {
        state.participant = rng.bernoulli(params.participation_prob) ? 1 : 0;
    }

    std::vector<std::uint32_t> order(network.node_count);
    std::iota(order.begin(), order.end(), 0u);
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }

    const auto adj = network.adjacency();
    std::vector<bool> assigned(network.node_count, false);
    for (auto node : order) {
        std::size_t seen = 0, ones = 0;
        for (auto nb : adj[node]) {
            if (!assigned[nb]) continue;
            ++seen;
            ones += network.states[nb].before;
        }
        double sigma = params.baseline_prevalence;
        if (seen > 0) {
            const double neighbor_mean = static_cast<double>(ones) / static_cast<double>(seen);
            sigma = (1.0 - params.peer_weight) * params.baseline_prevalence + params.peer_weight * neighbor_mean;
        }
        network.states[node].before = rng.bernoulli(sigma) ? 1 : 0;
        assigned[node] = true;
    }
    return network;
}

SimNetwork transition(SimNetwork network, const SimParams& params, std::uint64_t seed) {
    params.validate();
    if (network.states.size() != network.node_count) throw InputError("initial states are not assigned");
    Rng rng(seed);
    for (auto& state : network.states) {
        state.provisional = draw_transition(state.before, state.participant != 0, params, rng);
    }
    const auto adj = network.adjacency();
    for (std::size_t i = 0; i < network.node_count; ++i) {
        auto& state = network.states[i];
        state.after = state.provisional;
        if (adj[i].empty() || !rng.bernoulli(params.p_social)) continue;
        std::size_t ones = 0;
        for (auto nb : adj[i]) ones += network.states[nb].provisional;
        const std::size_t zeros = adj[i].size() - ones;
        if (ones > zeros) state.after = 1;
        else if (zeros > ones) state.after = 0;
    }
    return network;
}

std::string_view to_string(Orientation o) { return o == Orientation::directed ? "directed" : "symmetrize"; }

std::optional<Orientation> parse_orientation(std::string_view s) {
    if (s == "directed") return Orientation::directed;
    if (s == "symmetrize") return Orientation::symmetrize;
    return std::nullopt;
}

std::vector<DyadRecord> to_dyad_records(const SimNetwork& network, Orientation orientation, std::string_view item) {
    std::vector<DyadRecord> records;
    records.reserve(network.edges.size() * (orientation == Orientation::symmetrize ? 2 : 1));
    auto emit = [&](std::uint32_t ego, std::uint32_t alter) {
        const auto& a = network.states[ego];
        const auto& b = network.states[alter];
        DyadRecord r;
        r.ego_id = network.node_ids[ego];
        r.alter_id = network.node_ids[alter];
        r.x = a.participant;
        r.y = b.participant;
        r.p = a.before;
        r.q = b.before;
        r.r = a.after;
        r.s = b.after;
        r.item_id = std::string(item);
        records.push_back(std::move(r));
    };
    for (const auto& e : network.edges) {
        emit(e.u, e.v);
        if (orientation == Orientation::symmetrize) emit(e.v, e.u);
    }
    return records;
}

DyadTable probabilities_to_counts(std::span<const double, 64> probabilities, std::uint64_t scale) {
    if (scale == 0) throw InputError("scale must be at least 1");
    DyadTable table;
    for (int g = 0; g < 16; ++g) {
        double sum = 0.0;
        for (int rs = 0; rs < 4; ++rs) {
            const double v = probabilities[static_cast<std::size_t>(4 * g + rs)];
            if (!(v >= 0.0 && v <= 1.0)) throw InputError("probability outside [0,1] in row " + std::to_string(g));
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw InputError("probability row " + std::to_string(g) + " sums to " + std::to_string(sum));
        }
        for (int rs = 0; rs < 4; ++rs) {
            const double v = probabilities[static_cast<std::size_t>(4 * g + rs)];
            table.add(CellIndex::from_index(4 * g + rs),
                      static_cast<Count>(std::llround(v * static_cast<double>(scale))));
        }
    }
    return table;
}

SimulationResult simulate(std::size_t node_count, const EdgeModel& model, const SimParams& params,
                          Orientation orientation, std::string_view item) {
    params.validate();
    SimulationResult out;
    out.network = generate_network(node_count, model, derive_seed(params.seed, 1));
    out.network = assign_initial_states(std::move(out.network), params, derive_seed(params.seed, 2));
    out.network = transition(std::move(out.network), params, derive_seed(params.seed, 3));
    out.records = to_dyad_records(out.network, orientation, item);
    out.table = build_table(out.records, item);
    return out;
}

SimulationResult simulate_reference(std::uint64_t seed) {
    SimParams params;
    params.seed = seed;
    return simulate(kReferenceNodeCount, edge_model::MeanDegree{kReferenceMeanDegree}, params);
}

}  // namespace dyadic
