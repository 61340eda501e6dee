#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drmst/errors.hpp"
#include "drmst/graph.hpp"
#include "drmst/instance.hpp"
#include "drmst/rng.hpp"

#include "support/oracles.hpp"

#include <limits>
#include <set>

using namespace drmst;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}

// Connected random graph over a spanning-tree backbone plus extra edges.
Graph random_connected(int n, double extra_prob, Rng& rng) {
    std::set<std::pair<int, int>> pairs;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v)));
        pairs.insert(std::minmax(u, v));
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_unit() < extra_prob) pairs.insert({u, v});
    return Graph(n, {pairs.begin(), pairs.end()});
}

std::uint64_t count_trees(const Graph& g) {
    std::uint64_t count = 0;
    enumerate_spanning_trees(g, [&](const SpanningTree&) {
        ++count;
        return true;
    });
    return count;
}

} // namespace

TEST_CASE("graph construction validates its invariants") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}, {0, 1}, {1, 2}}), std::invalid_argument); // self-loop
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}, {1, 2}}), std::invalid_argument); // duplicate
    CHECK_THROWS_AS(Graph(4, {{0, 1}, {2, 3}}), std::invalid_argument);         // disconnected
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 5}}), std::invalid_argument);         // range
    CHECK_THROWS_AS(Graph(1, {}), std::invalid_argument);
}

TEST_CASE("prim on K3 with distinct weights") {
    Graph g = triangle();
    SpanningTree t = prim(g, {1.0, 2.0, 3.0});
    CHECK(t.edge_ids() == std::vector<int>{0, 1});
    CHECK(total_weight(t, {1.0, 2.0, 3.0}) == 3.0);
}

TEST_CASE("prim tie-breaking picks the smallest edge id") {
    Graph g = triangle();
    SpanningTree t = prim(g, {5.0, 5.0, 5.0});
    CHECK(t.edge_ids() == std::vector<int>{0, 1});

    // A larger all-equal case: result must be the per-step smallest-id tree,
    // which is the lexicographically smallest acyclic id set.
    Graph k5 = complete(5);
    WeightVector w(static_cast<std::size_t>(k5.edge_count()), 1.0);
    SpanningTree t5 = prim(k5, w);
    CHECK(t5.edge_ids() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("prim rejects malformed weights") {
    Graph g = triangle();
    CHECK_THROWS_AS(prim(g, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(prim(g, {1.0, 2.0, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
}

TEST_CASE("prim returns a valid minimum tree on random graphs") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = random_connected(8, 0.45, rng);
        WeightVector w;
        for (int j = 0; j < g.edge_count(); ++j) w.push_back(rng.uniform(0.0, 10.0));
        SpanningTree t = prim(g, w);
        CHECK(g.is_spanning_tree(t));
        double best = std::numeric_limits<double>::infinity();
        enumerate_spanning_trees(g, [&](const SpanningTree& s) {
            best = std::min(best, total_weight(s, w));
            return true;
        });
        CHECK(total_weight(t, w) == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("enumeration matches Cayley counts on complete graphs") {
    CHECK(count_trees(triangle()) == 3);
    CHECK(count_trees(complete(4)) == 16);
    CHECK(count_trees(complete(5)) == 125);
}

TEST_CASE("enumeration count matches the matrix-tree determinant") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = random_connected(7, 0.4, rng);
        CHECK(static_cast<double>(count_trees(g)) ==
              doctest::Approx(oracles::kirchhoff_tree_count(g)));
    }
}

TEST_CASE("enumeration emits distinct valid trees in lexicographic order") {
    Rng rng(13);
    Graph g = random_connected(6, 0.5, rng);
    std::vector<std::vector<int>> seen;
    enumerate_spanning_trees(g, [&](const SpanningTree& t) {
        CHECK(g.is_spanning_tree(t));
        seen.push_back(t.edge_ids());
        return true;
    });
    for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
}

TEST_CASE("enumeration honors the tree-count cap") {
    bool threw = false;
    try {
        enumerate_spanning_trees(complete(5), [](const SpanningTree&) { return true; }, 10);
    } catch (const guard_error&) {
        threw = true;
    }
    CHECK(threw);
}

TEST_CASE("enumeration early stop via the visitor") {
    int visited = 0;
    enumerate_spanning_trees(complete(5), [&](const SpanningTree&) {
        return ++visited < 7;
    });
    CHECK(visited == 7);
}

TEST_CASE("gen_erdos_renyi basic contracts") {
    SUBCASE("two nodes, p = 1") {
        UncertainGraph g = gen_erdos_renyi(2, 1.0, 0);
        CHECK(g.edge_count() == 1);
        CHECK(g.node_count() == 2);
    }
    SUBCASE("same arguments produce identical instances") {
        UncertainGraph a = gen_erdos_renyi(12, 0.4, 99);
        UncertainGraph b = gen_erdos_renyi(12, 0.4, 99);
        REQUIRE(a.edge_count() == b.edge_count());
        for (int j = 0; j < a.edge_count(); ++j) {
            CHECK(a.edges()[j].lo() == b.edges()[j].lo());
            CHECK(a.edges()[j].hi() == b.edges()[j].hi());
            CHECK(a.edges()[j].mean_point() == b.edges()[j].mean_point());
            CHECK(a.graph().edges()[j].u == b.graph().edges()[j].u);
            CHECK(a.graph().edges()[j].v == b.graph().edges()[j].v);
        }
    }
    SUBCASE("instances are connected with means strictly inside supports") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            UncertainGraph g = gen_erdos_renyi(30, 0.3, seed);
            CHECK(g.node_count() == 30);
            for (const UncertainEdge& e : g.edges()) {
                CHECK(e.lo() < e.mean_point());
                CHECK(e.mean_point() < e.hi());
            }
        }
    }
    SUBCASE("retry budget exhaustion names the instance") {
        try {
            gen_erdos_renyi(5, 0.01, 3);
            FAIL("expected guard_error");
        } catch (const guard_error& e) {
            const std::string msg = e.what();
            CHECK(msg.find("n=5") != std::string::npos);
            CHECK(msg.find("seed=3") != std::string::npos);
        }
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(gen_erdos_renyi(1, 0.5, 0), std::invalid_argument);
        CHECK_THROWS_AS(gen_erdos_renyi(5, 0.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(gen_erdos_renyi(5, 1.5, 0), std::invalid_argument);
    }
}

TEST_CASE("spanning tree helpers") {
    SpanningTree t(std::vector<int>{4, 1, 2});
    CHECK(t.edge_ids() == std::vector<int>{1, 2, 4});
    CHECK(t.contains(2));
    CHECK(!t.contains(3));
    auto y = t.incidence(6);
    CHECK(y == std::vector<double>{0, 1, 1, 0, 1, 0});
    CHECK_THROWS_AS(SpanningTree(std::vector<int>{1, 1}), std::invalid_argument);
}
