#include "specf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace specf {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("Graph: node count must be >= 1");
    std::set<std::pair<int, int>> seen;
    adj_.assign(n_, {});
    degree_.assign(n_, 0.0);
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw std::invalid_argument("Graph: node id out of range");
        if (e.u == e.v)
            throw std::invalid_argument("Graph: self-loops are not allowed");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("Graph: edge weights must be positive and finite");
        const auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(e.u) +
                                        ", " + std::to_string(e.v) + ")");
        adj_[e.u].emplace_back(e.v, e.weight);
        adj_[e.v].emplace_back(e.u, e.weight);
        degree_[e.u] += e.weight;
        degree_[e.v] += e.weight;
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int u, int v) const {
    const auto& nbrs = adj_[u];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                               [](const std::pair<int, double>& a, int b) { return a.first < b; });
    return it != nbrs.end() && it->first == v;
}

Partition::Partition(std::vector<int> assignment) : assignment_(std::move(assignment)) {
    if (assignment_.empty()) throw std::invalid_argument("Partition: empty assignment");
    int max_c = -1;
    for (int c : assignment_) {
        if (c < 0) throw std::invalid_argument("Partition: negative community id");
        max_c = std::max(max_c, c);
    }
    k_ = max_c + 1;
    members_.assign(k_, {});
    for (std::size_t i = 0; i < assignment_.size(); ++i)
        members_[assignment_[i]].push_back(static_cast<int>(i));
    for (int c = 0; c < k_; ++c)
        if (members_[c].empty())
            throw std::invalid_argument("Partition: community " + std::to_string(c) +
                                        " is empty; ids must be contiguous");
}

DenseSymmetricMatrix::DenseSymmetricMatrix(int n) : n_(n) {
    if (n_ < 1) throw std::invalid_argument("DenseSymmetricMatrix: dimension must be >= 1");
    a_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
}

DenseSymmetricMatrix DenseSymmetricMatrix::from_entries(int n, std::vector<double> entries) {
    DenseSymmetricMatrix m(n);
    if (entries.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("DenseSymmetricMatrix: entry count does not match dimension");
    m.a_ = std::move(entries);
    double scale = std::max(1.0, m.max_abs());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            const double d = m(i, j) - m(j, i);
            if (std::abs(d) > 1e-12 * scale)
                throw std::invalid_argument("DenseSymmetricMatrix: entries are not symmetric");
        }
    }
    for (double v : m.a_)
        if (!std::isfinite(v))
            throw std::invalid_argument("DenseSymmetricMatrix: non-finite entry");
    return m;
}

double DenseSymmetricMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

DenseSymmetricMatrix adjacency_matrix(const Graph& g) {
    DenseSymmetricMatrix m(g.node_count());
    for (const Edge& e : g.edges()) m.set_sym(e.u, e.v, e.weight);
    return m;
}

DenseSymmetricMatrix expanded_matrix(const Graph& g, const Partition& p,
                                     const ExpandedWeights& w) {
    const int n = g.node_count();
    if (p.node_count() != n)
        throw std::invalid_argument("expanded_matrix: partition size does not match graph");
    DenseSymmetricMatrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool same = p.community_of(i) == p.community_of(j);
            double value = 0.0;
            if (g.has_edge(i, j))
                value = same ? w.adjacent_same : w.adjacent_cross;
            else if (same)
                value = w.non_adjacent_same;
            if (value != 0.0) m.set_sym(i, j, value);
        }
    }
    return m;
}

DenseSymmetricMatrix laplacian(const DenseSymmetricMatrix& m) {
    const int n = m.size();
    for (int i = 0; i < n; ++i) {
        if (m(i, i) != 0.0)
            throw std::invalid_argument("laplacian: input must have a zero diagonal");
        for (int j = 0; j < n; ++j)
            if (m(i, j) < 0.0)
                throw std::invalid_argument("laplacian: negative off-diagonal entry");
    }
    DenseSymmetricMatrix l(n);
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) row_sum += m(i, j);
        for (int j = i + 1; j < n; ++j) l.set_sym(i, j, -m(i, j));
        l.set_sym(i, i, row_sum);
    }
    return l;
}

bool connected(const Graph& g) {
    const int n = g.node_count();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : g.neighbors(u)) {
            (void)w;
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n;
}

}  // namespace specf
