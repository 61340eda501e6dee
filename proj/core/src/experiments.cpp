#include "drmst/experiments.hpp"

#include "drmst/baselines.hpp"
#include "drmst/errors.hpp"
#include "drmst/rng.hpp"
#include "drmst/rv_index.hpp"
#include "drmst/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace drmst {

namespace {

constexpr std::uint64_t kScenarioStreamTag = 0x5ca1ab1e;

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

PiecewiseUniformSampler::PiecewiseUniformSampler(const UncertainGraph& g) {
    edges_.reserve(g.edges().size());
    p_left_.reserve(g.edges().size());
    for (const UncertainEdge& e : g.edges()) {
        const double lo = e.lo(), hi = e.hi(), mean = e.mean_point();
        edges_.push_back({lo, hi, mean});
        p_left_.push_back(lo == hi ? 1.0 : (hi - mean) / (hi - lo));
    }
}

WeightMatrix PiecewiseUniformSampler::sample(int count, std::uint64_t seed) const {
    if (count < 1) throw std::invalid_argument("sample count must be >= 1");
    WeightMatrix w(count, static_cast<int>(edges_.size()));
    Rng rng(derive_seed(seed, kScenarioStreamTag));
    for (int k = 0; k < count; ++k) {
        for (std::size_t j = 0; j < edges_.size(); ++j) {
            const EdgeParams& e = edges_[j];
            if (e.lo == e.hi) {
                w.at(k, static_cast<int>(j)) = e.lo;
                continue;
            }
            const bool left = rng.next_unit() < p_left_[j];
            const double u = rng.next_unit();
            w.at(k, static_cast<int>(j)) =
                left ? e.lo + u * (e.mean - e.lo) : e.mean + u * (e.hi - e.mean);
        }
    }
    return w;
}

EvalMetrics evaluate_tree(const SpanningTree& tree, const WeightMatrix& samples, double tau,
                          const std::vector<double>& gammas) {
    const int K = samples.rows();
    if (K < 1) throw std::invalid_argument("evaluate_tree requires samples");
    EvalMetrics m;
    m.sample_count = K;
    m.gammas = gammas;

    std::vector<double> costs(static_cast<std::size_t>(K), 0.0);
    for (int k = 0; k < K; ++k) {
        double c = 0.0;
        for (int id : tree.edge_ids()) c += samples.at(k, id);
        costs[static_cast<std::size_t>(k)] = c;
    }

    double sum = 0.0;
    for (double c : costs) sum += c;
    m.mean = sum / K;
    double ss = 0.0;
    for (double c : costs) ss += (c - m.mean) * (c - m.mean);
    m.stdev = K > 1 ? std::sqrt(ss / (K - 1)) : 0.0;

    long failures = 0;
    double loss = 0.0;
    for (double c : costs) {
        if (c > tau) {
            ++failures;
            loss += c - tau;
        }
    }
    m.failure_probability = static_cast<double>(failures) / K;
    m.expected_loss = loss / K;
    m.no_failures = failures == 0;
    m.conditional_expected_loss = failures > 0 ? loss / static_cast<double>(failures) : 0.0;

    std::sort(costs.begin(), costs.end());
    m.value_at_risk.reserve(gammas.size());
    for (double gamma : gammas) {
        if (gamma <= 0.0 || gamma > 1.0)
            throw std::invalid_argument("value-at-risk level must lie in (0, 1]");
        // 1-based order statistic at ceil(gamma*K); the epsilon keeps exact
        // products like 0.95 * 10000 from rounding up a slot.
        long idx = static_cast<long>(std::ceil(gamma * K - 1e-9));
        idx = std::clamp(idx, 1L, static_cast<long>(K));
        m.value_at_risk.push_back(costs[static_cast<std::size_t>(idx - 1)]);
    }
    return m;
}

void ExperimentConfig::validate() const {
    if (node_counts.empty()) throw std::invalid_argument("config: node_counts empty");
    for (int n : node_counts)
        if (n < 2) throw std::invalid_argument("config: node counts must be >= 2");
    if (!(edge_prob > 0.0) || edge_prob > 1.0)
        throw std::invalid_argument("config: edge_prob must lie in (0, 1]");
    if (seeds.empty()) throw std::invalid_argument("config: seeds empty");
    for (std::size_t i = 0; i < seeds.size(); ++i)
        for (std::size_t j = i + 1; j < seeds.size(); ++j)
            if (seeds[i] == seeds[j]) throw std::invalid_argument("config: seeds must be distinct");
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("config: beta must lie in [0, 1]");
    if (sample_count < 1) throw std::invalid_argument("config: sample_count must be >= 1");
    if (saa_scenarios < 1) throw std::invalid_argument("config: saa_scenarios must be >= 1");
    if (criteria.empty()) throw std::invalid_argument("config: criteria empty");
    for (const std::string& c : criteria)
        if (c != "rv" && c != "mean" && c != "budget" && c != "saa")
            throw std::invalid_argument("config: unknown criterion '" + c + "'");
}

namespace {

std::string status_name(const RvValue& v) {
    switch (v.status) {
    case RvStatus::Zero: return "zero";
    case RvStatus::Finite: return v.capped ? "finite_capped" : "finite";
    default: return "infeasible";
    }
}

// All criterion rows of one instance, evaluated on one shared scenario set.
std::vector<ReportRow> run_instance(const ExperimentConfig& cfg, int nodes,
                                    std::uint64_t seed) {
    std::vector<ReportRow> rows;
    ReportRow base;
    base.instance_seed = seed;
    base.nodes = nodes;
    base.edge_prob = cfg.edge_prob;
    base.beta = cfg.beta;

    UncertainGraph g = gen_erdos_renyi(nodes, cfg.edge_prob, seed);
    const double tau = compute_target(g, cfg.beta);
    const PiecewiseUniformSampler sampler(g);
    const WeightMatrix scenarios =
        sampler.sample(cfg.sample_count, derive_seed(seed, kScenarioStreamTag));
    const WeightVector mean_w = g.mean_weights();

    for (const std::string& criterion : cfg.criteria) {
        ReportRow row = base;
        row.criterion = criterion;
        try {
            SpanningTree tree;
            if (criterion == "rv") {
                RvSolveResult r = solve_rp(g, tau, cfg.tol);
                tree = r.tree;
                row.status = status_name(r.value);
                row.rv_alpha = r.value.scalar();
                row.iterations = r.iterations;
                row.prim_calls = r.prim_calls;
                row.wall_ms = cfg.include_timing ? r.wall_ms : 0.0;
            } else if (criterion == "mean") {
                const auto t0 = std::chrono::steady_clock::now();
                tree = solve_min_mean(g);
                row.status = "ok";
                row.prim_calls = 1;
                row.rv_alpha = rv_index_of_tree(g, tree, tau, cfg.tol).scalar();
                row.wall_ms = cfg.include_timing
                                  ? std::chrono::duration<double, std::milli>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count()
                                  : 0.0;
            } else if (criterion == "budget") {
                const auto t0 = std::chrono::steady_clock::now();
                BudgetResult r = solve_budget(g, tau);
                if (r.status == BudgetStatus::TargetUnattainable) {
                    row.status = "unattainable";
                    row.error = true;
                    rows.push_back(std::move(row));
                    continue;
                }
                tree = r.tree;
                row.status = r.status == BudgetStatus::FullyProtected ? "fully_protected" : "ok";
                row.prim_calls = r.prim_calls;
                row.rv_alpha = rv_index_of_tree(g, tree, tau, cfg.tol).scalar();
                row.wall_ms = cfg.include_timing
                                  ? std::chrono::duration<double, std::milli>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count()
                                  : 0.0;
            } else { // saa
                const auto t0 = std::chrono::steady_clock::now();
                SaaResult r = solve_saa_probability(g, tau, cfg.saa_scenarios,
                                                    derive_seed(seed, 0xa5a5));
                tree = r.tree;
                row.status = "ok";
                row.rv_alpha = rv_index_of_tree(g, tree, tau, cfg.tol).scalar();
                row.wall_ms = cfg.include_timing
                                  ? std::chrono::duration<double, std::milli>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count()
                                  : 0.0;
            }
            row.tree_mean_cost = total_weight(tree, mean_w);
            row.metrics = evaluate_tree(tree, scenarios, tau, cfg.gammas);
        } catch (const std::exception&) {
            row.status = "error";
            row.error = true;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

int worker_count(std::size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("DRMST_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return static_cast<int>(std::min<std::size_t>(n, jobs));
}

std::vector<AggregateRow> aggregate(const ExperimentConfig& cfg,
                                    const std::vector<ReportRow>& rows) {
    std::vector<AggregateRow> out;
    for (int nodes : cfg.node_counts) {
        std::vector<AggregateRow> block;
        for (const std::string& criterion : cfg.criteria) {
            AggregateRow agg;
            agg.nodes = nodes;
            agg.edge_prob = cfg.edge_prob;
            agg.beta = cfg.beta;
            agg.criterion = criterion;
            for (const ReportRow& r : rows) {
                if (r.nodes != nodes || r.criterion != criterion || r.error) continue;
                ++agg.instances;
                agg.mean += r.metrics.mean;
                agg.stdev += r.metrics.stdev;
                agg.failure_probability += r.metrics.failure_probability;
                agg.expected_loss += r.metrics.expected_loss;
                agg.conditional_expected_loss += r.metrics.conditional_expected_loss;
                if (r.metrics.value_at_risk.size() > 0) agg.var95 += r.metrics.value_at_risk[0];
                if (r.metrics.value_at_risk.size() > 1) agg.var99 += r.metrics.value_at_risk[1];
                agg.iterations += r.iterations;
                agg.prim_calls += static_cast<double>(r.prim_calls);
                agg.wall_ms += r.wall_ms;
            }
            if (agg.instances > 0) {
                const double k = agg.instances;
                agg.mean /= k;
                agg.stdev /= k;
                agg.failure_probability /= k;
                agg.expected_loss /= k;
                agg.conditional_expected_loss /= k;
                agg.var95 /= k;
                agg.var99 /= k;
                agg.iterations /= k;
                agg.prim_calls /= k;
                agg.wall_ms /= k;
            }
            block.push_back(std::move(agg));
        }
        // Ratios are normalized by the rv row when present, else by the first
        // criterion; the reference row's ratios are identically 1.
        std::size_t ref = 0;
        for (std::size_t i = 0; i < block.size(); ++i)
            if (block[i].criterion == "rv") ref = i;
        auto ratio = [](double num, double den) {
            if (num == den) return 1.0; // covers the reference row and 0/0
            if (den == 0.0) return std::numeric_limits<double>::infinity();
            return num / den;
        };
        for (AggregateRow& a : block) {
            a.mean_ratio = ratio(a.mean, block[ref].mean);
            a.stdev_ratio = ratio(a.stdev, block[ref].stdev);
            a.el_ratio = ratio(a.expected_loss, block[ref].expected_loss);
            a.cel_ratio = ratio(a.conditional_expected_loss,
                                block[ref].conditional_expected_loss);
            a.var95_ratio = ratio(a.var95, block[ref].var95);
            a.var99_ratio = ratio(a.var99, block[ref].var99);
            out.push_back(std::move(a));
        }
    }
    return out;
}

} // namespace

SweepReport run_sweep(const ExperimentConfig& config) {
    config.validate();

    struct Job {
        int nodes;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int nodes : config.node_counts)
        for (std::uint64_t seed : config.seeds) jobs.push_back({nodes, seed});

    std::vector<std::vector<ReportRow>> slots(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                slots[i] = run_instance(config, jobs[i].nodes, jobs[i].seed);
            } catch (const std::exception&) {
                // Instance-level failure (e.g. generator retry exhaustion).
                ReportRow row;
                row.instance_seed = jobs[i].seed;
                row.nodes = jobs[i].nodes;
                row.edge_prob = config.edge_prob;
                row.beta = config.beta;
                row.criterion = "instance";
                row.status = "error";
                row.error = true;
                slots[i] = {std::move(row)};
            }
        }
    };

    const int workers = worker_count(jobs.size());
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    SweepReport report;
    for (auto& slot : slots)
        for (auto& row : slot) report.rows.push_back(std::move(row));
    report.aggregates = aggregate(config, report.rows);
    return report;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
    std::string out = "instance_seed,n,p,beta,criterion,status,rv_alpha,tree_mean_cost,"
                      "mean,stdev,failure_prob,EL,CEL,VaR95,VaR99,iterations,prim_calls,"
                      "wall_ms\n";
    for (const ReportRow& r : rows) {
        out += std::to_string(r.instance_seed) + ',' + std::to_string(r.nodes) + ',' +
               fmt(r.edge_prob) + ',' + fmt(r.beta) + ',' + r.criterion + ',' + r.status +
               ',' + fmt(r.rv_alpha) + ',' + fmt(r.tree_mean_cost) + ',' +
               fmt(r.metrics.mean) + ',' + fmt(r.metrics.stdev) + ',' +
               fmt(r.metrics.failure_probability) + ',' + fmt(r.metrics.expected_loss) +
               ',' + fmt(r.metrics.conditional_expected_loss) + ',' +
               fmt(r.metrics.value_at_risk.size() > 0 ? r.metrics.value_at_risk[0] : 0.0) +
               ',' +
               fmt(r.metrics.value_at_risk.size() > 1 ? r.metrics.value_at_risk[1] : 0.0) +
               ',' + std::to_string(r.iterations) + ',' + std::to_string(r.prim_calls) +
               ',' + fmt(r.wall_ms) + '\n';
    }
    return out;
}

std::string aggregates_to_csv(const std::vector<AggregateRow>& aggregates) {
    std::string out = "n,p,beta,criterion,instances,mean,stdev,failure_prob,EL,CEL,VaR95,"
                      "VaR99,iterations,prim_calls,wall_ms,mean_ratio,stdev_ratio,EL_ratio,"
                      "CEL_ratio,VaR95_ratio,VaR99_ratio\n";
    for (const AggregateRow& a : aggregates) {
        out += std::to_string(a.nodes) + ',' + fmt(a.edge_prob) + ',' + fmt(a.beta) + ',' +
               a.criterion + ',' + std::to_string(a.instances) + ',' + fmt(a.mean) + ',' +
               fmt(a.stdev) + ',' + fmt(a.failure_probability) + ',' +
               fmt(a.expected_loss) + ',' + fmt(a.conditional_expected_loss) + ',' +
               fmt(a.var95) + ',' + fmt(a.var99) + ',' + fmt(a.iterations) + ',' +
               fmt(a.prim_calls) + ',' + fmt(a.wall_ms) + ',' + fmt(a.mean_ratio) + ',' +
               fmt(a.stdev_ratio) + ',' + fmt(a.el_ratio) + ',' + fmt(a.cel_ratio) + ',' +
               fmt(a.var95_ratio) + ',' + fmt(a.var99_ratio) + '\n';
    }
    return out;
}

void write_reports(const SweepReport& report, const std::string& prefix) {
    auto write = [](const std::string& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw io_error("cannot open '" + path + "' for writing");
        out << content;
        if (!out) throw io_error("failed writing '" + path + "'");
    };
    write(prefix + "_rows.csv", rows_to_csv(report.rows));
    write(prefix + "_agg.csv", aggregates_to_csv(report.aggregates));
}

} // namespace drmst
