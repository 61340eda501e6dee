#include "drmst/baselines.hpp"

#include "drmst/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace drmst {

SpanningTree solve_min_mean(const UncertainGraph& g) {
    return prim(g.graph(), g.mean_weights());
}

BudgetResult solve_budget(const UncertainGraph& g, double tau) {
    const int m = g.edge_count();
    BudgetResult res;

    WeightVector mu(static_cast<std::size_t>(m));
    WeightVector dev(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const UncertainEdge& e = g.edges()[static_cast<std::size_t>(j)];
        mu[static_cast<std::size_t>(j)] = e.mean_upper();
        dev[static_cast<std::size_t>(j)] = e.hi() - e.mean_upper();
    }

    // Edge ids sorted by deviation, largest first; ties by id for determinism.
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = dev[static_cast<std::size_t>(a)];
        const double db = dev[static_cast<std::size_t>(b)];
        return da != db ? da > db : a < b;
    });

    // Nominal cost at breakpoint l: edges at sort positions < l carry their
    // deviation surplus over d_l; one Prim call each. The l = m sentinel has
    // d = 0, i.e. full deviation on every edge.
    auto breakpoint_cost = [&](int l, double d_l, SpanningTree* out) {
        WeightVector w = mu;
        for (int pos = 0; pos < l; ++pos) {
            const int j = order[static_cast<std::size_t>(pos)];
            w[static_cast<std::size_t>(j)] +=
                std::max(dev[static_cast<std::size_t>(j)] - d_l, 0.0);
        }
        SpanningTree t = prim(g.graph(), w);
        ++res.prim_calls;
        const double cost = total_weight(t, w);
        if (out) *out = std::move(t);
        return cost;
    };

    SpanningTree full_tree;
    const double full_cost = breakpoint_cost(m, 0.0, &full_tree);
    if (tau >= full_cost) {
        res.status = BudgetStatus::FullyProtected;
        res.gamma = static_cast<double>(m);
        res.tree = std::move(full_tree);
        return res;
    }

    double best_gamma = -std::numeric_limits<double>::infinity();
    SpanningTree best_tree;
    for (int l = 1; l <= m; ++l) {
        const double d_l = dev[static_cast<std::size_t>(order[static_cast<std::size_t>(l - 1)])];
        if (d_l <= 0.0) break; // remaining breakpoints duplicate the sentinel
        SpanningTree t;
        const double cost = breakpoint_cost(l, d_l, &t);
        const double gamma = (tau - cost) / d_l;
        if (gamma > best_gamma) {
            best_gamma = gamma;
            best_tree = std::move(t);
        }
    }
    if (!(best_gamma >= 0.0)) {
        res.status = BudgetStatus::TargetUnattainable;
        res.gamma = best_gamma;
        res.tree = prim(g.graph(), mu);
        ++res.prim_calls;
        return res;
    }
    res.gamma = std::min(best_gamma, static_cast<double>(m));
    res.tree = std::move(best_tree);
    return res;
}

SaaResult solve_saa_probability(const UncertainGraph& g, double tau, int scenario_count,
                                std::uint64_t seed, std::uint64_t max_trees) {
    if (scenario_count < 1) throw std::invalid_argument("scenario count must be >= 1");
    const PiecewiseUniformSampler sampler(g);
    const WeightMatrix scenarios = sampler.sample(scenario_count, seed);
    const WeightVector mean = g.mean_weights();

    SaaResult res;
    res.scenario_count = scenario_count;
    long best_hits = -1;
    double best_mean_cost = 0.0;

    enumerate_spanning_trees(
        g.graph(),
        [&](const SpanningTree& t) {
            long hits = 0;
            for (int k = 0; k < scenarios.rows(); ++k) {
                double cost = 0.0;
                for (int id : t.edge_ids()) cost += scenarios.at(k, id);
                if (cost <= tau) ++hits;
            }
            const double mean_cost = total_weight(t, mean);
            if (hits > best_hits || (hits == best_hits && mean_cost < best_mean_cost)) {
                best_hits = hits;
                best_mean_cost = mean_cost;
                res.tree = t;
            }
            return true;
        },
        max_trees);

    res.achieved_fraction =
        static_cast<double>(best_hits) / static_cast<double>(scenario_count);
    return res;
}

double compute_target(const UncertainGraph& g, double beta) {
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("beta must lie in [0, 1]");
    const WeightVector mean = g.mean_weights();
    const WeightVector upper = g.upper_support_weights();
    const double mean_cost = total_weight(prim(g.graph(), mean), mean);
    const double upper_cost = total_weight(prim(g.graph(), upper), upper);
    return (1.0 - beta) * mean_cost + beta * upper_cost;
}

} // namespace drmst
