#pragma once

// Intervention simulator for validation datasets.
//
// Pipeline: topology -> participation and initial behavior -> provisional
// post-intervention behavior from participation-conditioned transition
// probabilities -> one synchronous conformity pass -> ordered dyads.
//
// Naming note: p_stay is the 0->1 probability for non-participants and
// p_change their 1->0 probability. The names are kept as in the original
// simulation protocol even though they read the other way around.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dyadic/dyad.hpp"

namespace dyadic {

struct SimParams {
    double participation_prob = 0.5;
    double p_effect = 0.5;    // participant 1 -> 0
    double p_against = 0.05;  // participant 0 -> 1
    double p_change = 0.05;   // non-participant 1 -> 0
    double p_stay = 0.05;     // non-participant 0 -> 1
    double p_social = 0.2;    // chance to adopt the alters' majority provisional state
    // Initial behavior is Bernoulli((1-w) * baseline + w * mean of already
    // assigned neighbors), visiting nodes once in random order.
    double baseline_prevalence = 0.5;
    double peer_weight = 0.5;
    std::uint64_t seed = 0;

    // Throws InputError if any probability is outside [0,1].
    void validate() const;
};

struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    bool operator==(const Edge&) const = default;
};

struct NodeState {
    std::uint8_t participant = 0;
    std::uint8_t before = 0;
    std::uint8_t provisional = 0;  // post-intervention state before conformity
    std::uint8_t after = 0;
    bool operator==(const NodeState&) const = default;
};

struct SimNetwork {
    std::size_t node_count = 0;
    std::vector<Edge> edges;  // undirected ties, u != v
    std::vector<std::string> node_ids;
    std::vector<NodeState> states;

    std::vector<std::vector<std::uint32_t>> adjacency() const;
};

namespace edge_model {
struct Complete {};
struct FixedEdges {
    std::vector<Edge> edges;
};
// Watts-Strogatz ring: each node linked to `neighbors` nearest (even), each
// edge rewired with probability `rewire`.
struct SmallWorld {
    std::uint32_t neighbors = 4;
    double rewire = 0.1;
};
// Random simple graph with exactly these degrees (Havel-Hakimi realisation
// followed by degree-preserving double-edge swaps).
struct DegreeSequence {
    std::vector<std::uint32_t> degrees;
};
// Degree sequence drawn i.i.d. Poisson(mean), parity-fixed, then as above.
struct MeanDegree {
    double mean = 5.4;
};
}  // namespace edge_model

using EdgeModel = std::variant<edge_model::Complete, edge_model::FixedEdges, edge_model::SmallWorld,
                               edge_model::DegreeSequence, edge_model::MeanDegree>;

// Mean degree giving about 2397 ordered dyads on 444 nodes.
inline constexpr double kReferenceMeanDegree = 2397.0 / 444.0;
inline constexpr std::size_t kReferenceNodeCount = 444;

bool is_graphical(std::span<const std::uint32_t> degrees);

SimNetwork generate_network(std::size_t node_count, const EdgeModel& model, std::uint64_t seed);

SimNetwork assign_initial_states(SimNetwork network, const SimParams& params, std::uint64_t seed);

SimNetwork transition(SimNetwork network, const SimParams& params, std::uint64_t seed);

enum class Orientation { directed, symmetrize };
std::string_view to_string(Orientation o);
std::optional<Orientation> parse_orientation(std::string_view s);

// directed: one record per listed edge (u as ego); symmetrize: both orientations.
std::vector<DyadRecord> to_dyad_records(const SimNetwork& network, Orientation orientation,
                                        std::string_view item = "sim");

// 16 rows (x,y,p,q) of 4 (r,s) probabilities -> rounded counts per row of `scale`.
DyadTable probabilities_to_counts(std::span<const double, 64> probabilities, std::uint64_t scale);

struct SimulationResult {
    SimNetwork network;
    std::vector<DyadRecord> records;
    DyadTable table;
};

// Full pipeline with substreams of params.seed for each phase.
SimulationResult simulate(std::size_t node_count, const EdgeModel& model, const SimParams& params,
                          Orientation orientation = Orientation::symmetrize, std::string_view item = "sim");

// Reference scenario: 444 nodes, mean-degree graph, default parameters.
SimulationResult simulate_reference(std::uint64_t seed);

}  // namespace dyadic
