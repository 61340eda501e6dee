#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace drmst {

struct Edge {
    int id;
    int u;
    int v;
};

/// Per-edge weights, indexed by edge id.
using WeightVector = std::vector<double>;

/// Edge set of a spanning tree, kept sorted by edge id so trees compare and
/// hash canonically.
class SpanningTree {
  public:
    SpanningTree() = default;
    explicit SpanningTree(std::vector<int> edge_ids);

    const std::vector<int>& edge_ids() const { return edge_ids_; }
    int size() const { return static_cast<int>(edge_ids_.size()); }
    bool contains(int edge_id) const;

    /// 0/1 vector y of length `edge_count`.
    std::vector<double> incidence(int edge_count) const;

    bool operator==(const SpanningTree&) const = default;
    bool operator<(const SpanningTree& other) const { return edge_ids_ < other.edge_ids_; }

  private:
    std::vector<int> edge_ids_;
};

/// Undirected connected graph with contiguous 0-based edge ids. Immutable
/// after construction; construction rejects self-loops, duplicate edges and
/// disconnected inputs.
class Graph {
  public:
    Graph(int node_count, const std::vector<std::pair<int, int>>& endpoints);

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// node -> ids of incident edges, in increasing edge id order.
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

    /// Checks the three spanning-tree conditions (spanning, connected, n-1 edges).
    bool is_spanning_tree(const SpanningTree& tree) const;

  private:
    int node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

/// True when the given endpoint list connects all `node_count` nodes.
/// Usable before Graph construction (the constructor enforces connectivity).
bool edges_connect(int node_count, const std::vector<std::pair<int, int>>& endpoints);

/// Deterministic Prim from node 0. Ties are broken by the smallest edge id at
/// every selection step, so equal-weight inputs still produce a unique tree.
SpanningTree prim(const Graph& graph, const WeightVector& weights);

double total_weight(const SpanningTree& tree, const WeightVector& weights);

/// Visits every spanning tree exactly once, in lexicographic order of the
/// sorted edge-id set. The visitor returns false to stop early. Throws
/// guard_error once more than `max_trees` trees have been emitted.
void enumerate_spanning_trees(const Graph& graph,
                              const std::function<bool(const SpanningTree&)>& visit,
                              std::uint64_t max_trees = 10'000'000);

} // namespace drmst
