#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drmst/experiments.hpp"
#include "drmst/rng.hpp"

#include <algorithm>
#include <cmath>

using namespace drmst;

namespace {

UncertainGraph two_edge_instance() {
    std::vector<UncertainEdge> edges;
    edges.push_back({EdgeUncertainty(MeanSupport{0.0, 2.0, 1.0}), {}});
    edges.push_back({EdgeUncertainty(MeanSupport{1.0, 3.0, 1.5}), {}});
    return UncertainGraph(Graph(3, {{0, 1}, {1, 2}}), std::move(edges));
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.node_counts = {12};
    cfg.edge_prob = 0.4;
    cfg.seeds = {1, 2, 3, 4};
    cfg.beta = 0.2;
    cfg.criteria = {"rv", "mean", "budget"};
    cfg.sample_count = 400;
    return cfg;
}

} // namespace

TEST_CASE("piecewise uniform sampler") {
    SUBCASE("midpoint mean gives a plain uniform") {
        std::vector<UncertainEdge> edges;
        edges.push_back({EdgeUncertainty(MeanSupport{2.0, 4.0, 3.0}), {}});
        UncertainGraph g(Graph(2, {{0, 1}}), std::move(edges));
        PiecewiseUniformSampler sampler(g);
        CHECK(sampler.left_probability(0) == 0.5);
        WeightMatrix w = sampler.sample(200000, 5);
        double sum = 0.0, ss = 0.0;
        for (int k = 0; k < w.rows(); ++k) sum += w.at(k, 0);
        const double mean = sum / w.rows();
        for (int k = 0; k < w.rows(); ++k) ss += (w.at(k, 0) - mean) * (w.at(k, 0) - mean);
        const double var = ss / (w.rows() - 1);
        CHECK(mean == doctest::Approx(3.0).epsilon(2e-3));
        CHECK(var == doctest::Approx(4.0 / 12.0).epsilon(2e-2)); // uniform width 2
    }
    SUBCASE("sample mean within three standard errors for every edge") {
        UncertainGraph g = gen_erdos_renyi(10, 0.5, 61);
        PiecewiseUniformSampler sampler(g);
        const int K = 100000;
        WeightMatrix w = sampler.sample(K, 17);
        for (int j = 0; j < g.edge_count(); ++j) {
            const UncertainEdge& e = g.edges()[static_cast<std::size_t>(j)];
            double sum = 0.0;
            for (int k = 0; k < K; ++k) sum += w.at(k, j);
            const double mean = sum / K;
            // stderr bound from the support width (conservative).
            const double bound = 3.0 * (e.hi() - e.lo()) / std::sqrt(double(K));
            CHECK(std::abs(mean - e.mean_point()) <= bound);
        }
    }
    SUBCASE("all draws inside the support") {
        UncertainGraph g = gen_erdos_renyi(8, 0.5, 67);
        PiecewiseUniformSampler sampler(g);
        WeightMatrix w = sampler.sample(2000, 19);
        for (int k = 0; k < w.rows(); ++k)
            for (int j = 0; j < w.cols(); ++j) {
                const UncertainEdge& e = g.edges()[static_cast<std::size_t>(j)];
                CHECK(w.at(k, j) >= e.lo());
                CHECK(w.at(k, j) <= e.hi());
            }
    }
    SUBCASE("degenerate edge produces a constant column") {
        std::vector<UncertainEdge> edges;
        edges.push_back({EdgeUncertainty(MeanSupport{2.5, 2.5, 2.5}), {}});
        UncertainGraph g(Graph(2, {{0, 1}}), std::move(edges));
        WeightMatrix w = PiecewiseUniformSampler(g).sample(50, 1);
        for (int k = 0; k < 50; ++k) CHECK(w.at(k, 0) == 2.5);
    }
    SUBCASE("deterministic in the seed") {
        UncertainGraph g = two_edge_instance();
        PiecewiseUniformSampler sampler(g);
        WeightMatrix a = sampler.sample(64, 9);
        WeightMatrix b = sampler.sample(64, 9);
        for (int k = 0; k < 64; ++k)
            for (int j = 0; j < 2; ++j) CHECK(a.at(k, j) == b.at(k, j));
    }
}

TEST_CASE("evaluate_tree") {
    UncertainGraph g = two_edge_instance();
    SpanningTree tree(std::vector<int>{0, 1});

    SUBCASE("all costs below the target") {
        WeightMatrix w(3, 2);
        for (int k = 0; k < 3; ++k) {
            w.at(k, 0) = 1.0;
            w.at(k, 1) = 1.0;
        }
        EvalMetrics m = evaluate_tree(tree, w, 10.0);
        CHECK(m.failure_probability == 0.0);
        CHECK(m.expected_loss == 0.0);
        CHECK(m.conditional_expected_loss == 0.0);
        CHECK(m.no_failures);
    }
    SUBCASE("two samples straddling the target") {
        WeightMatrix w(2, 2);
        w.at(0, 0) = 0.0; w.at(0, 1) = 1.0; // cost 1 = tau - 1
        w.at(1, 0) = 1.0; w.at(1, 1) = 2.0; // cost 3 = tau + 1
        EvalMetrics m = evaluate_tree(tree, w, 2.0);
        CHECK(m.failure_probability == 0.5);
        CHECK(m.expected_loss == 0.5);
        CHECK(m.conditional_expected_loss == 1.0);
        CHECK(!m.no_failures);
        CHECK(m.mean == 2.0);
    }
    SUBCASE("value-at-risk equals the sorted order statistic") {
        const int K = 10000;
        UncertainGraph inst = gen_erdos_renyi(8, 0.5, 71);
        SpanningTree t = prim(inst.graph(), inst.mean_weights());
        WeightMatrix w = PiecewiseUniformSampler(inst).sample(K, 3);
        EvalMetrics m = evaluate_tree(t, w, 1.0);
        std::vector<double> costs(K);
        for (int k = 0; k < K; ++k) {
            double c = 0.0;
            for (int id : t.edge_ids()) c += w.at(k, id);
            costs[static_cast<std::size_t>(k)] = c;
        }
        std::sort(costs.begin(), costs.end());
        CHECK(m.value_at_risk[0] == costs[9500 - 1]);
        CHECK(m.value_at_risk[1] == costs[9900 - 1]);
        CHECK(m.value_at_risk[1] >= m.value_at_risk[0]);
    }
    SUBCASE("loss identity: EL equals failure probability times CEL") {
        UncertainGraph inst = gen_erdos_renyi(8, 0.5, 73);
        SpanningTree t = prim(inst.graph(), inst.mean_weights());
        WeightMatrix w = PiecewiseUniformSampler(inst).sample(5000, 5);
        const double tau = total_weight(t, inst.mean_weights());
        EvalMetrics m = evaluate_tree(t, w, tau);
        REQUIRE(m.failure_probability > 0.0);
        CHECK(m.expected_loss ==
              doctest::Approx(m.failure_probability * m.conditional_expected_loss)
                  .epsilon(1e-12));
    }
}

TEST_CASE("run_sweep") {
    SUBCASE("rv-only sweeps normalize every ratio to one") {
        ExperimentConfig cfg = small_config();
        cfg.criteria = {"rv"};
        SweepReport report = run_sweep(cfg);
        REQUIRE(report.aggregates.size() == 1);
        const AggregateRow& a = report.aggregates[0];
        CHECK(a.mean_ratio == 1.0);
        CHECK(a.stdev_ratio == 1.0);
        CHECK(a.el_ratio == 1.0);
        CHECK(a.cel_ratio == 1.0);
        CHECK(a.var95_ratio == 1.0);
        CHECK(a.var99_ratio == 1.0);
        CHECK(a.instances == 4);
    }
    SUBCASE("identical configs produce byte-identical reports") {
        ExperimentConfig cfg = small_config();
        SweepReport a = run_sweep(cfg);
        SweepReport b = run_sweep(cfg);
        CHECK(rows_to_csv(a.rows) == rows_to_csv(b.rows));
        CHECK(aggregates_to_csv(a.aggregates) == aggregates_to_csv(b.aggregates));
    }
    SUBCASE("row layout and shared scenarios") {
        ExperimentConfig cfg = small_config();
        SweepReport report = run_sweep(cfg);
        REQUIRE(report.rows.size() == cfg.seeds.size() * cfg.criteria.size());
        // Deterministic order: seed-major, criterion-minor.
        std::size_t idx = 0;
        for (std::uint64_t seed : cfg.seeds)
            for (const std::string& crit : cfg.criteria) {
                CHECK(report.rows[idx].instance_seed == seed);
                CHECK(report.rows[idx].criterion == crit);
                ++idx;
            }
        const std::string csv = rows_to_csv(report.rows);
        CHECK(csv.rfind("instance_seed,n,p,beta,criterion,status,rv_alpha,tree_mean_cost,"
                        "mean,stdev,failure_prob,EL,CEL,VaR95,VaR99,iterations,prim_calls,"
                        "wall_ms\n",
                        0) == 0);
        // Timing is suppressed by default so reruns stay byte-identical.
        for (const ReportRow& r : report.rows) CHECK(r.wall_ms == 0.0);
    }
    SUBCASE("desk-scale ordering: rv beats the mean criterion on failure probability") {
        ExperimentConfig cfg;
        cfg.node_counts = {30};
        cfg.edge_prob = 0.3;
        for (std::uint64_t s = 0; s < 10; ++s) cfg.seeds.push_back(s);
        cfg.criteria = {"rv", "mean"};
        cfg.sample_count = 2000;
        SweepReport report = run_sweep(cfg);
        int rv_not_worse = 0, pairs = 0;
        for (std::size_t i = 0; i + 1 < report.rows.size(); i += 2) {
            const ReportRow& rv = report.rows[i];
            const ReportRow& mean = report.rows[i + 1];
            REQUIRE(rv.criterion == "rv");
            REQUIRE(mean.criterion == "mean");
            ++pairs;
            if (rv.metrics.failure_probability <= mean.metrics.failure_probability)
                ++rv_not_worse;
        }
        CHECK(pairs == 10);
        CHECK(rv_not_worse >= 9);
    }
    SUBCASE("config validation") {
        ExperimentConfig cfg = small_config();
        cfg.criteria = {"bogus"};
        CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
        cfg = small_config();
        cfg.seeds = {1, 1};
        CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
    }
}
