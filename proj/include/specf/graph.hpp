#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace specf {

struct Edge {
    int u = 0;
    int v = 0;
    double weight = 1.0;
};

/// Undirected weighted graph over dense node ids 0..n-1.
/// No self-loops, no duplicate pairs, strictly positive weights.
/// Immutable once constructed; safe to share across threads.
class Graph {
public:
    Graph(int n, std::vector<Edge> edges);

    int node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Neighbors of u, ascending by node id.
    const std::vector<std::pair<int, double>>& neighbors(int u) const { return adj_[u]; }

    bool has_edge(int u, int v) const;

    /// Sum of incident edge weights.
    double weighted_degree(int u) const { return degree_[u]; }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<double> degree_;
};

/// Node -> community assignment with dense community ids 0..k-1; every
/// community nonempty. Immutable once constructed.
class Partition {
public:
    explicit Partition(std::vector<int> assignment);

    int node_count() const { return static_cast<int>(assignment_.size()); }
    int community_count() const { return k_; }
    int community_of(int node) const { return assignment_[node]; }
    const std::vector<int>& assignment() const { return assignment_; }

    /// Members of each community, ascending by node id.
    const std::vector<std::vector<int>>& members() const { return members_; }

private:
    std::vector<int> assignment_;
    int k_;
    std::vector<std::vector<int>> members_;
};

/// Dense symmetric matrix, row-major storage.
class DenseSymmetricMatrix {
public:
    explicit DenseSymmetricMatrix(int n);

    /// Builds from row-major entries; validates symmetry and finiteness.
    static DenseSymmetricMatrix from_entries(int n, std::vector<double> entries);

    int size() const { return n_; }

    double operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }

    /// Writes both (i,j) and (j,i).
    void set_sym(int i, int j, double v) {
        a_[static_cast<std::size_t>(i) * n_ + j] = v;
        a_[static_cast<std::size_t>(j) * n_ + i] = v;
    }

    double max_abs() const;
    const std::vector<double>& data() const { return a_; }

private:
    int n_;
    std::vector<double> a_;
};

/// Weights of the community-expanded matrix; defaults follow the 5/3/1
/// scheme, overridable for sensitivity studies.
struct ExpandedWeights {
    double adjacent_same = 5.0;
    double adjacent_cross = 3.0;
    double non_adjacent_same = 1.0;
};

DenseSymmetricMatrix adjacency_matrix(const Graph& g);

/// Community-expanded matrix: adjacent same-community pairs get the largest
/// weight, adjacent cross-community pairs an intermediate one, non-adjacent
/// same-community pairs a small positive one, everything else zero.
DenseSymmetricMatrix expanded_matrix(const Graph& g, const Partition& p,
                                     const ExpandedWeights& w = {});

/// L = D - M with D the diagonal of row sums. Rows of L sum to zero.
DenseSymmetricMatrix laplacian(const DenseSymmetricMatrix& m);

/// True iff the graph has a single connected component.
bool connected(const Graph& g);

}  // namespace specf
