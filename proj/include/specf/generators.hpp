#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specf/graph.hpp"
#include "specf/signal.hpp"

namespace specf {

struct PlantedGraphSpec {
    int n = 0;
    int k = 1;
    double p_in = 0.0;   // intra-community edge probability
    double p_out = 0.0;  // inter-community edge probability
    std::uint64_t seed = 0;
};

struct PlantedGraph {
    Graph graph;
    Partition partition;
    int attempts = 1;       // connectivity retries consumed
    double derived_mu = 0;  // p_out / (p_in + p_out)
};

/// Planted-partition graph with near-equal community sizes; re-samples with a
/// derived seed until connected (cap 100 attempts).
PlantedGraph generate_planted_graph(const PlantedGraphSpec& spec);

/// Per-community seed values: communities are ranked ascending by their total
/// number of inter-community edges (ties by id) and the value at rank r is
/// strength * (r + 1). Indexed by community id.
std::vector<double> community_base_signal(const Graph& g, const Partition& p);

/// Test hooks: pin the per-community head nodes and/or the head seed values
/// instead of deriving them from the graph.
struct NormalSignalOptions {
    std::optional<std::vector<double>> base_values;
    std::optional<std::vector<int>> heads;
};

/// Propagation-based signal: the highest-degree node of each community is
/// seeded with the community base value, values spread breadth-first with
/// rate 0.1 across communities and max(0.25, deg_i / (deg_i + deg_j)) inside
/// them, the source decaying 5% after each neighbor; final values are the
/// expanded-weight weighted average of the propagated vector.
Signal generate_normal_signal(const Graph& g, const Partition& p, std::uint64_t seed,
                              const NormalSignalOptions& opts = {});

struct AnomalySpec {
    double fraction = 0.0;  // share of nodes to corrupt, (0, 1]
    double theta = 0.0;     // anomaly intensity, (0, 1]
    std::uint64_t seed = 0;
};

struct InjectionResult {
    Signal corrupted;
    std::vector<bool> labels;
};

/// Raises round(fraction * n) nodes (at least one) to their community's
/// pre-injection maximum scaled by 1 + tax, tax uniform in [theta/2, theta].
InjectionResult inject_anomalies(const Signal& s, const Partition& p, const AnomalySpec& spec);

}  // namespace specf
