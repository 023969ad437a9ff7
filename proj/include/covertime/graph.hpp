#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "covertime/errors.hpp"

namespace covertime {

using Edge = std::pair<int, int>;

/// Undirected simple connected graph over nodes {0..n-1}. Immutable after
/// construction and safe to share across threads.
class Graph {
public:
    /// Validates and builds a graph. Edge endpoints may come in either order;
    /// the stored edge list is canonical (i < j, sorted).
    static Graph from_edges(int node_count, std::vector<Edge> edges);

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
    const std::vector<int>& neighbors(int node) const { return adjacency_[node]; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(int i, int j) const;

    /// FNV-1a hash of the canonical edge list; used for caching and metadata.
    std::uint64_t canonical_hash() const;

private:
    Graph() = default;

    int node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

enum class GraphKind { complete, cycle, path, erdos_renyi };

/// Builds one of the standard families. `edge_probability` and `seed` apply
/// to erdos_renyi only; sampling rejects disconnected draws and re-draws with
/// an incremented seed, up to `kErdosRenyiRetryBudget` attempts.
Graph generate_graph(GraphKind kind, int node_count, double edge_probability = 0.0,
                     std::uint64_t seed = 0);

inline constexpr int kErdosRenyiRetryBudget = 1000;

/// Edge-list text format: first non-comment line is the node count, each
/// following non-empty line is "i j". Lines starting with '#' are ignored.
Graph parse_edge_list(std::istream& input);
Graph parse_edge_list(const std::string& text);

bool is_complete(const Graph& g);
bool is_cycle(const Graph& g);
bool is_path(const Graph& g);

/// Row-stochastic transition matrix of the simple random walk: from node i
/// each incident edge is taken with probability 1/degree(i). Stored as the
/// adjacency structure; rows are never materialized densely during
/// propagation, so memory stays O(m) at any size.
class TransitionMatrix {
public:
    explicit TransitionMatrix(Graph graph);

    int size() const { return graph_.node_count(); }
    int degree(int node) const { return graph_.degree(node); }
    double inverse_degree(int node) const { return inverse_degree_[node]; }
    const std::vector<int>& neighbors(int node) const { return graph_.neighbors(node); }
    double entry(int row, int col) const;
    const Graph& graph() const { return graph_; }

    /// Dense n-by-n view for inspection and tests; refused above 1024 nodes.
    std::vector<std::vector<double>> dense() const;

private:
    Graph graph_;
    std::vector<double> inverse_degree_;
};

TransitionMatrix transition_matrix(const Graph& g);

/// Long-run occupancy of the walk: component j is degree(j) / (2 * edges).
std::vector<double> stationary_distribution(const Graph& g);

} // namespace covertime
