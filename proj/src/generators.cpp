#include "specf/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

#include "specf/errors.hpp"
#include "specf/rng.hpp"

namespace specf {

namespace {

std::vector<int> block_assignment(int n, int k) {
    // near-equal sizes, remainder spread over the first communities
    std::vector<int> assignment(n);
    const int base = n / k;
    const int rem = n % k;
    int node = 0;
    for (int c = 0; c < k; ++c) {
        const int size = base + (c < rem ? 1 : 0);
        for (int s = 0; s < size; ++s) assignment[node++] = c;
    }
    return assignment;
}

}  // namespace

PlantedGraph generate_planted_graph(const PlantedGraphSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("generate_planted_graph: n must be >= 1");
    if (spec.k < 1 || spec.k > spec.n)
        throw std::invalid_argument("generate_planted_graph: k out of [1, n]");
    if (!(spec.p_out >= 0.0 && spec.p_out < spec.p_in && spec.p_in <= 1.0))
        throw std::invalid_argument("generate_planted_graph: need 0 <= p_out < p_in <= 1");

    std::vector<int> assignment = block_assignment(spec.n, spec.k);
    Partition partition(assignment);
    const double mu = spec.p_out / (spec.p_in + spec.p_out);

    for (int attempt = 0; attempt < 100; ++attempt) {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(attempt)));
        std::vector<Edge> edges;
        for (int i = 0; i < spec.n; ++i) {
            for (int j = i + 1; j < spec.n; ++j) {
                const double p = assignment[i] == assignment[j] ? spec.p_in : spec.p_out;
                if (rng.next_double() < p) edges.push_back({i, j, 1.0});
            }
        }
        Graph g(spec.n, std::move(edges));
        if (connected(g))
            return PlantedGraph{std::move(g), std::move(partition), attempt + 1, mu};
    }
    throw NumericalError("generate_planted_graph: no connected sample within 100 attempts");
}

std::vector<double> community_base_signal(const Graph& g, const Partition& p) {
    if (p.node_count() != g.node_count())
        throw std::invalid_argument("community_base_signal: partition does not cover graph");
    const int k = p.community_count();
    // strength of a community = number of edges leaving it
    std::vector<double> strength(k, 0.0);
    for (const Edge& e : g.edges()) {
        const int cu = p.community_of(e.u);
        const int cv = p.community_of(e.v);
        if (cu != cv) {
            strength[cu] += 1.0;
            strength[cv] += 1.0;
        }
    }
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (strength[a] != strength[b]) return strength[a] < strength[b];
        return a < b;
    });
    std::vector<double> values(k, 0.0);
    for (int rank = 0; rank < k; ++rank)
        values[order[rank]] = strength[order[rank]] * static_cast<double>(rank + 1);
    return values;
}

Signal generate_normal_signal(const Graph& g, const Partition& p, std::uint64_t seed,
                              const NormalSignalOptions& opts) {
    const int n = g.node_count();
    if (p.node_count() != n)
        throw std::invalid_argument("generate_normal_signal: partition does not cover graph");
    if (!connected(g))
        throw NumericalError("generate_normal_signal: graph must be connected");
    const int k = p.community_count();

    std::vector<double> base =
        opts.base_values ? *opts.base_values : community_base_signal(g, p);
    if (static_cast<int>(base.size()) != k)
        throw std::invalid_argument("generate_normal_signal: base value count != communities");

    std::vector<int> heads(k, -1);
    if (opts.heads) {
        heads = *opts.heads;
        if (static_cast<int>(heads.size()) != k)
            throw std::invalid_argument("generate_normal_signal: head count != communities");
        for (int c = 0; c < k; ++c)
            if (heads[c] < 0 || heads[c] >= n || p.community_of(heads[c]) != c)
                throw std::invalid_argument("generate_normal_signal: head not in its community");
    } else {
        Rng rng(derive_seed(seed, 0x68656164));  // head-selection stream
        for (int c = 0; c < k; ++c) {
            const auto& members = p.members()[c];
            double best = -1.0;
            for (int i : members) best = std::max(best, g.weighted_degree(i));
            std::vector<int> top;
            for (int i : members)
                if (g.weighted_degree(i) == best) top.push_back(i);
            heads[c] = top[rng.next_below(top.size())];
        }
    }

    std::vector<double> sx(n, 0.0);
    std::vector<char> marked(n, 1);
    for (int c = 0; c < k; ++c) {
        sx[heads[c]] = base[c];
        marked[heads[c]] = 0;
    }

    // propagation queue starts with the (unmarked) heads, ascending by index
    std::deque<int> queue;
    for (int i = 0; i < n; ++i)
        if (!marked[i]) queue.push_back(i);

    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        const double deg_i = g.weighted_degree(i);
        for (const auto& [j, w] : g.neighbors(i)) {
            (void)w;
            double rate = 0.1;
            if (p.community_of(i) == p.community_of(j)) {
                const double mt = deg_i / (g.weighted_degree(j) + deg_i);
                rate = std::max(0.25, mt);
            }
            sx[j] += sx[i] * rate;
            sx[i] *= 0.95;
            if (marked[j]) {
                marked[j] = 0;
                queue.push_back(j);
            }
        }
    }

    // weighted average over the expanded weights (zero diagonal)
    const ExpandedWeights w{};
    Signal out = Signal::zeros(n);
    for (int i = 0; i < n; ++i) {
        double num = 0.0;
        double den = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const bool same = p.community_of(i) == p.community_of(j);
            double wij = 0.0;
            if (g.has_edge(i, j))
                wij = same ? w.adjacent_same : w.adjacent_cross;
            else if (same)
                wij = w.non_adjacent_same;
            num += wij * sx[j];
            den += wij;
        }
        out[i] = den > 0.0 ? num / den : sx[i];
    }
    return out;
}

InjectionResult inject_anomalies(const Signal& s, const Partition& p, const AnomalySpec& spec) {
    const int n = static_cast<int>(s.size());
    if (p.node_count() != n)
        throw std::invalid_argument("inject_anomalies: partition does not cover signal");
    if (!(spec.fraction > 0.0 && spec.fraction <= 1.0))
        throw std::invalid_argument("inject_anomalies: fraction must be in (0, 1]");
    if (!(spec.theta > 0.0 && spec.theta <= 1.0))
        throw std::invalid_argument("inject_anomalies: theta must be in (0, 1]");

    int count = static_cast<int>(std::lround(spec.fraction * n));
    count = std::min(n, std::max(1, count));

    std::vector<double> community_max(p.community_count(), 0.0);
    for (int c = 0; c < p.community_count(); ++c) {
        double m = s[p.members()[c].front()];
        for (int i : p.members()[c]) m = std::max(m, s[i]);
        community_max[c] = m;
    }

    Rng rng(spec.seed);
    const std::vector<int> selected = rng.sample_indices(n, count);

    InjectionResult result{s, std::vector<bool>(n, false)};
    for (int i : selected) {
        const double tax = rng.uniform(spec.theta / 2.0, spec.theta);
        result.corrupted[i] = community_max[p.community_of(i)] * (1.0 + tax);
        result.labels[i] = true;
    }
    return result;
}

}  // namespace specf
