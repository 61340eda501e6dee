#include "drmst/graph.hpp"

#include "drmst/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace drmst {

namespace {

// Small union-find over node indices.
class Dsu {
  public:
    explicit Dsu(int n) : parent_(n), rank_(n, 0), components_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        --components_;
        return true;
    }

    int components() const { return components_; }

  private:
    std::vector<int> parent_;
    std::vector<int> rank_;
    int components_;
};

} // namespace

SpanningTree::SpanningTree(std::vector<int> edge_ids) : edge_ids_(std::move(edge_ids)) {
    std::sort(edge_ids_.begin(), edge_ids_.end());
    for (std::size_t i = 1; i < edge_ids_.size(); ++i) {
        if (edge_ids_[i] == edge_ids_[i - 1])
            throw std::invalid_argument("spanning tree edge ids must be distinct");
    }
}

bool SpanningTree::contains(int edge_id) const {
    return std::binary_search(edge_ids_.begin(), edge_ids_.end(), edge_id);
}

std::vector<double> SpanningTree::incidence(int edge_count) const {
    std::vector<double> y(static_cast<std::size_t>(edge_count), 0.0);
    for (int id : edge_ids_) y.at(static_cast<std::size_t>(id)) = 1.0;
    return y;
}

bool edges_connect(int node_count, const std::vector<std::pair<int, int>>& endpoints) {
    if (node_count <= 0) return false;
    Dsu dsu(node_count);
    for (const auto& [u, v] : endpoints) {
        if (u < 0 || u >= node_count || v < 0 || v >= node_count) return false;
        if (u != v) dsu.unite(u, v);
    }
    return dsu.components() == 1;
}

Graph::Graph(int node_count, const std::vector<std::pair<int, int>>& endpoints)
    : node_count_(node_count) {
    if (node_count < 2) throw std::invalid_argument("graph needs at least 2 nodes");
    edges_.reserve(endpoints.size());
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < endpoints.size(); ++i) {
        auto [u, v] = endpoints[i];
        if (u < 0 || u >= node_count || v < 0 || v >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loops are not allowed");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            throw std::invalid_argument("duplicate undirected edge");
        edges_.push_back(Edge{static_cast<int>(i), u, v});
    }
    if (!edges_connect(node_count, endpoints))
        throw std::invalid_argument("graph must be connected");
    adjacency_.assign(static_cast<std::size_t>(node_count), {});
    for (const Edge& e : edges_) {
        adjacency_[static_cast<std::size_t>(e.u)].push_back(e.id);
        adjacency_[static_cast<std::size_t>(e.v)].push_back(e.id);
    }
}

bool Graph::is_spanning_tree(const SpanningTree& tree) const {
    if (tree.size() != node_count_ - 1) return false;
    Dsu dsu(node_count_);
    for (int id : tree.edge_ids()) {
        if (id < 0 || id >= edge_count()) return false;
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        if (!dsu.unite(e.u, e.v)) return false; // cycle
    }
    return dsu.components() == 1;
}

SpanningTree prim(const Graph& graph, const WeightVector& weights) {
    const int n = graph.node_count();
    const int m = graph.edge_count();
    if (static_cast<int>(weights.size()) != m)
        throw std::invalid_argument("weight vector length must equal edge count");
    for (double w : weights)
        if (!std::isfinite(w)) throw std::invalid_argument("edge weights must be finite");

    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    // (weight, edge id) min-heap; the id component is the deterministic tie rule.
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

    auto add_node = [&](int node) {
        in_tree[static_cast<std::size_t>(node)] = 1;
        for (int id : graph.adjacency()[static_cast<std::size_t>(node)]) {
            const Edge& e = graph.edges()[static_cast<std::size_t>(id)];
            int other = e.u == node ? e.v : e.u;
            if (!in_tree[static_cast<std::size_t>(other)])
                heap.emplace(weights[static_cast<std::size_t>(id)], id);
        }
    };

    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(n - 1));
    add_node(0);
    while (static_cast<int>(chosen.size()) < n - 1) {
        if (heap.empty())
            throw std::runtime_error("prim: graph is not connected"); // unreachable post-ctor
        auto [w, id] = heap.top();
        heap.pop();
        const Edge& e = graph.edges()[static_cast<std::size_t>(id)];
        bool u_in = in_tree[static_cast<std::size_t>(e.u)];
        bool v_in = in_tree[static_cast<std::size_t>(e.v)];
        if (u_in && v_in) continue; // stale entry
        chosen.push_back(id);
        add_node(u_in ? e.v : e.u);
    }
    return SpanningTree(std::move(chosen));
}

double total_weight(const SpanningTree& tree, const WeightVector& weights) {
    double total = 0.0;
    for (int id : tree.edge_ids()) total += weights.at(static_cast<std::size_t>(id));
    return total;
}

namespace {

struct EnumState {
    const Graph* graph;
    const std::function<bool(const SpanningTree&)>* visit;
    std::uint64_t max_trees;
    std::uint64_t emitted = 0;
    std::vector<int> chosen;
};

// True when the components in `dsu` can still be merged into one using only
// edges with id >= first_free.
bool still_connectable(const Graph& g, Dsu dsu, int first_free) {
    const auto& edges = g.edges();
    for (int i = first_free; i < static_cast<int>(edges.size()); ++i)
        dsu.unite(edges[static_cast<std::size_t>(i)].u, edges[static_cast<std::size_t>(i)].v);
    return dsu.components() == 1;
}

// Include/exclude recursion over edge ids in increasing order; the
// include-first branch makes the emission order lexicographic.
bool enum_rec(EnumState& st, int idx, Dsu& dsu) {
    const Graph& g = *st.graph;
    const int n = g.node_count();
    const int m = g.edge_count();
    if (static_cast<int>(st.chosen.size()) == n - 1) {
        if (++st.emitted > st.max_trees)
            throw guard_error("spanning tree enumeration exceeded cap of " +
                              std::to_string(st.max_trees) + " trees");
        return (*st.visit)(SpanningTree(st.chosen));
    }
    if (idx == m) return true;
    if (m - idx < (n - 1) - static_cast<int>(st.chosen.size())) return true;

    const Edge& e = g.edges()[static_cast<std::size_t>(idx)];
    if (dsu.find(e.u) != dsu.find(e.v)) {
        Dsu next = dsu;
        next.unite(e.u, e.v);
        st.chosen.push_back(idx);
        bool keep_going = enum_rec(st, idx + 1, next);
        st.chosen.pop_back();
        if (!keep_going) return false;
    }
    if (still_connectable(g, dsu, idx + 1)) return enum_rec(st, idx + 1, dsu);
    return true;
}

} // namespace

void enumerate_spanning_trees(const Graph& graph,
                              const std::function<bool(const SpanningTree&)>& visit,
                              std::uint64_t max_trees) {
    EnumState st{&graph, &visit, max_trees, 0, {}};
    Dsu dsu(graph.node_count());
    enum_rec(st, 0, dsu);
}

} // namespace drmst
