#pragma once

#include "drmst/instance.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace drmst {

/// Row-major scenario matrix: one row per draw, one column per edge.
class WeightMatrix {
  public:
    WeightMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * size_t(cols)) {}
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double at(int r, int c) const { return data_[std::size_t(r) * std::size_t(cols_) + std::size_t(c)]; }
    double& at(int r, int c) { return data_[std::size_t(r) * std::size_t(cols_) + std::size_t(c)]; }

  private:
    int rows_, cols_;
    std::vector<double> data_;
};

/// Two-piece uniform mixture per edge: Uniform[lo, mean] with probability
/// (hi - mean) / (hi - lo) and Uniform[mean, hi] otherwise — the unique
/// two-piece uniform on those pieces whose expectation is exactly the mean.
/// Degenerate edges (lo == hi) produce a constant column.
class PiecewiseUniformSampler {
  public:
    explicit PiecewiseUniformSampler(const UncertainGraph& g);

    /// `count` i.i.d. scenario rows, deterministic in `seed`.
    WeightMatrix sample(int count, std::uint64_t seed) const;

    double left_probability(int edge) const { return p_left_[std::size_t(edge)]; }

  private:
    struct EdgeParams {
        double lo, hi, mean;
    };
    std::vector<EdgeParams> edges_;
    std::vector<double> p_left_;
};

/// Empirical risk metrics of a fixed tree against a target. Failure counts
/// use the strict comparison cost > tau so that
/// expected_loss == failure_probability * conditional_expected_loss exactly.
struct EvalMetrics {
    double mean = 0.0;
    double stdev = 0.0;
    double failure_probability = 0.0;
    double expected_loss = 0.0;             // E[(cost - tau)+]
    double conditional_expected_loss = 0.0; // E[(cost - tau)+ | cost > tau], 0 if no failures
    bool no_failures = false;
    std::vector<double> gammas;
    std::vector<double> value_at_risk; // order statistic at ceil(gamma * K), 1-based
    long sample_count = 0;
};

EvalMetrics evaluate_tree(const SpanningTree& tree, const WeightMatrix& samples, double tau,
                          const std::vector<double>& gammas = {0.95, 0.99});

struct ExperimentConfig {
    std::vector<int> node_counts{30};
    double edge_prob = 0.3;
    std::vector<std::uint64_t> seeds;
    double beta = 0.2;
    std::vector<std::string> criteria{"rv", "mean", "budget"};
    int sample_count = 10000;
    int saa_scenarios = 200;
    std::vector<double> gammas{0.95, 0.99};
    double tol = 1e-9;
    double eps = 1e-6;
    /// Report measured wall times. Off by default so identical configs
    /// produce byte-identical reports.
    bool include_timing = false;
    std::string out_prefix;

    void validate() const; // throws std::invalid_argument
};

/// One CSV row: a (instance, criterion) evaluation on the shared scenario set.
struct ReportRow {
    std::uint64_t instance_seed = 0;
    int nodes = 0;
    double edge_prob = 0.0;
    double beta = 0.0;
    std::string criterion;
    std::string status;
    double rv_alpha = 0.0;
    double tree_mean_cost = 0.0;
    EvalMetrics metrics;
    int iterations = 0;
    long prim_calls = 0;
    double wall_ms = 0.0;
    bool error = false;
};

/// Mean over instances of one criterion's rows, plus ratios against the
/// rv criterion row (failure probability and wall time stay raw).
struct AggregateRow {
    int nodes = 0;
    double edge_prob = 0.0;
    double beta = 0.0;
    std::string criterion;
    int instances = 0;
    double mean = 0, stdev = 0, failure_probability = 0, expected_loss = 0,
           conditional_expected_loss = 0, var95 = 0, var99 = 0;
    double iterations = 0, prim_calls = 0, wall_ms = 0;
    double mean_ratio = 1, stdev_ratio = 1, el_ratio = 1, cel_ratio = 1, var95_ratio = 1,
           var99_ratio = 1;
};

struct SweepReport {
    std::vector<ReportRow> rows;
    std::vector<AggregateRow> aggregates;
};

/// Runs the instance sweep: per seed, generate the instance, compute the
/// target, solve every criterion and evaluate all of them on one shared
/// scenario matrix. Individual failures become error rows; the sweep
/// continues. Parallel across instances (DRMST_THREADS caps the pool); row
/// order is deterministic regardless of the thread count.
SweepReport run_sweep(const ExperimentConfig& config);

std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string aggregates_to_csv(const std::vector<AggregateRow>& aggregates);

/// Writes `<prefix>_rows.csv` and `<prefix>_agg.csv`.
void write_reports(const SweepReport& report, const std::string& prefix);

} // namespace drmst
