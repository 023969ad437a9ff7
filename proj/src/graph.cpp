#include "covertime/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "covertime/rng.hpp"

namespace covertime {

namespace {

bool reaches_all_from_zero(int node_count, const std::vector<std::vector<int>>& adjacency) {
    std::vector<std::uint8_t> seen(node_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adjacency[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    return visited == node_count;
}

} // namespace

Graph Graph::from_edges(int node_count, std::vector<Edge> edges) {
    if (node_count < 2) {
        throw GraphError(GraphDefect::empty_graph,
                         "graph needs at least 2 nodes, got " + std::to_string(node_count));
    }
    for (auto& [a, b] : edges) {
        if (a < 0 || a >= node_count || b < 0 || b >= node_count) {
            throw GraphError(GraphDefect::node_out_of_range,
                             "edge endpoint out of range: " + std::to_string(a) + " " +
                                 std::to_string(b));
        }
        if (a == b) {
            throw GraphError(GraphDefect::self_loop, "self-loop at node " + std::to_string(a));
        }
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    const auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw GraphError(GraphDefect::duplicate_edge,
                         "duplicate edge " + std::to_string(dup->first) + "-" +
                             std::to_string(dup->second));
    }

    Graph g;
    g.node_count_ = node_count;
    g.adjacency_.resize(node_count);
    for (const auto& [a, b] : edges) {
        g.adjacency_[a].push_back(b);
        g.adjacency_[b].push_back(a);
    }
    for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());
    if (!reaches_all_from_zero(node_count, g.adjacency_)) {
        throw GraphError(GraphDefect::disconnected, "graph is not connected");
    }
    g.edges_ = std::move(edges);
    return g;
}

bool Graph::has_edge(int i, int j) const {
    const auto& list = adjacency_[i];
    return std::binary_search(list.begin(), list.end(), j);
}

std::uint64_t Graph::canonical_hash() const {
    std::uint64_t h = 0xCBF29CE484222325ull;
    auto mix = [&h](std::uint64_t value) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (value >> (8 * byte)) & 0xFF;
            h *= 0x100000001B3ull;
        }
    };
    mix(static_cast<std::uint64_t>(node_count_));
    for (const auto& [a, b] : edges_) {
        mix(static_cast<std::uint64_t>(a));
        mix(static_cast<std::uint64_t>(b));
    }
    return h;
}

Graph generate_graph(GraphKind kind, int node_count, double edge_probability,
                     std::uint64_t seed) {
    if (node_count < 2) {
        throw QueryError("generator needs at least 2 nodes, got " + std::to_string(node_count));
    }
    std::vector<Edge> edges;
    switch (kind) {
    case GraphKind::complete:
        edges.reserve(static_cast<std::size_t>(node_count) * (node_count - 1) / 2);
        for (int i = 0; i < node_count; ++i)
            for (int j = i + 1; j < node_count; ++j) edges.emplace_back(i, j);
        return Graph::from_edges(node_count, std::move(edges));
    case GraphKind::cycle:
        if (node_count < 3) {
            throw QueryError("cycle graph needs at least 3 nodes (a 2-cycle would duplicate "
                             "the edge)");
        }
        for (int i = 0; i < node_count; ++i) edges.emplace_back(i, (i + 1) % node_count);
        return Graph::from_edges(node_count, std::move(edges));
    case GraphKind::path:
        for (int i = 0; i + 1 < node_count; ++i) edges.emplace_back(i, i + 1);
        return Graph::from_edges(node_count, std::move(edges));
    case GraphKind::erdos_renyi:
        break;
    }

    if (!(edge_probability > 0.0) || edge_probability > 1.0) {
        throw QueryError("erdos_renyi edge probability must be in (0, 1]");
    }
    for (int attempt = 0; attempt < kErdosRenyiRetryBudget; ++attempt) {
        Xoshiro256StarStar rng(seed + static_cast<std::uint64_t>(attempt));
        edges.clear();
        for (int i = 0; i < node_count; ++i)
            for (int j = i + 1; j < node_count; ++j)
                if (rng.uniform01() < edge_probability) edges.emplace_back(i, j);
        try {
            return Graph::from_edges(node_count, std::move(edges));
        } catch (const GraphError& e) {
            if (e.defect() != GraphDefect::disconnected) throw;
            edges = {};
        }
    }
    throw GraphError(GraphDefect::retries_exhausted,
                     "no connected erdos_renyi sample within " +
                         std::to_string(kErdosRenyiRetryBudget) + " attempts");
}

Graph parse_edge_list(std::istream& input) {
    std::string line;
    int line_number = 0;
    int node_count = -1;
    std::vector<Edge> edges;
    while (std::getline(input, line)) {
        ++line_number;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first) || first[0] == '#') continue;

        if (node_count < 0) {
            std::size_t consumed = 0;
            try {
                node_count = std::stoi(first, &consumed);
            } catch (const std::exception&) {
                consumed = 0;
            }
            std::string extra;
            if (consumed != first.size() || fields >> extra) {
                throw ParseError(line_number, "expected the node count, got '" + line + "'");
            }
            continue;
        }

        int a = 0, b = 0;
        std::size_t used_a = 0, used_b = 0;
        std::string second, extra;
        if (!(fields >> second) || fields >> extra) {
            throw ParseError(line_number, "expected 'i j', got '" + line + "'");
        }
        try {
            a = std::stoi(first, &used_a);
            b = std::stoi(second, &used_b);
        } catch (const std::exception&) {
            throw ParseError(line_number, "expected 'i j', got '" + line + "'");
        }
        if (used_a != first.size() || used_b != second.size()) {
            throw ParseError(line_number, "expected 'i j', got '" + line + "'");
        }
        if (a < 0 || a >= node_count || b < 0 || b >= node_count) {
            throw ParseError(line_number, "node index out of range [0, " +
                                              std::to_string(node_count) + "): '" + line + "'");
        }
        edges.emplace_back(a, b);
    }
    if (node_count < 0) throw ParseError(line_number, "missing node count line");
    return Graph::from_edges(node_count, std::move(edges));
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream stream(text);
    return parse_edge_list(stream);
}

bool is_complete(const Graph& g) {
    const long long n = g.node_count();
    return g.edge_count() == n * (n - 1) / 2;
}

bool is_cycle(const Graph& g) {
    if (g.node_count() < 3 || g.edge_count() != g.node_count()) return false;
    for (int v = 0; v < g.node_count(); ++v)
        if (g.degree(v) != 2) return false;
    return true;
}

bool is_path(const Graph& g) {
    if (g.edge_count() != g.node_count() - 1) return false;
    int endpoints = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        if (g.degree(v) == 1) ++endpoints;
        else if (g.degree(v) != 2) return false;
    }
    return endpoints == 2;
}

TransitionMatrix::TransitionMatrix(Graph graph) : graph_(std::move(graph)) {
    inverse_degree_.resize(graph_.node_count());
    for (int v = 0; v < graph_.node_count(); ++v) inverse_degree_[v] = 1.0 / graph_.degree(v);
}

double TransitionMatrix::entry(int row, int col) const {
    return graph_.has_edge(row, col) ? inverse_degree_[row] : 0.0;
}

std::vector<std::vector<double>> TransitionMatrix::dense() const {
    if (size() > 1024) {
        throw QueryError("dense view limited to 1024 nodes; use the adjacency interface");
    }
    std::vector<std::vector<double>> rows(size(), std::vector<double>(size(), 0.0));
    for (int v = 0; v < size(); ++v)
        for (int nb : neighbors(v)) rows[v][nb] = inverse_degree_[v];
    return rows;
}

TransitionMatrix transition_matrix(const Graph& g) { return TransitionMatrix(g); }

std::vector<double> stationary_distribution(const Graph& g) {
    std::vector<double> pi(g.node_count());
    const double total = 2.0 * g.edge_count();
    for (int v = 0; v < g.node_count(); ++v) pi[v] = g.degree(v) / total;
    return pi;
}

} // namespace covertime
