// Command-line front end: instance generation, single solves and benchmark
// sweeps over the drmst core library.

#include "drmst/baselines.hpp"
#include "drmst/errors.hpp"
#include "drmst/experiments.hpp"
#include "drmst/json_io.hpp"
#include "drmst/solvers.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <string>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitGuard = 4;

struct GenArgs {
    int nodes = 10;
    double prob = 0.5;
    std::uint64_t seed = 0;
    std::string out;
    std::string stat_gen = "uniform-bounds";
};

struct SolveArgs {
    std::string graph_path;
    double target = 0.0;
    double beta = 0.0;
    bool has_target = false;
    bool has_beta = false;
    std::string solver = "rp";
    double tol = 1e-9;
    double eps = 1e-6;
    double time_limit = 60.0;
    std::string out;
    bool timing = false;
};

struct BenchArgs {
    std::string config_path;
    std::string nodes_list;
    std::string seeds;
    double beta = 0.2;
    double prob = 0.3;
    std::string criteria = "rv,mean,budget";
    int samples = 10000;
    std::string out = "bench";
    bool timing = false;
};

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            if (!current.empty()) parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) parts.push_back(current);
    return parts;
}

int run_gen(const GenArgs& args) {
    if (args.stat_gen != "uniform-bounds")
        throw CLI::ValidationError("--stat-gen", "unknown policy '" + args.stat_gen + "'");
    drmst::UncertainGraph g = drmst::gen_erdos_renyi(args.nodes, args.prob, args.seed,
                                                     drmst::StatGenPolicy::UniformBounds);
    drmst::save_graph(g, args.out);
    const double density =
        2.0 * g.edge_count() / (static_cast<double>(g.node_count()) * (g.node_count() - 1));
    std::printf("wrote %s: n=%d m=%d density=%.3f weight-scale=%.4f\n", args.out.c_str(),
                g.node_count(), g.edge_count(), density, g.weight_scale());
    return 0;
}

int run_solve(const SolveArgs& args) {
    drmst::UncertainGraph g = drmst::load_graph(args.graph_path);
    const double tau = args.has_target ? args.target : drmst::compute_target(g, args.beta);

    drmst::RvSolveResult result;
    if (args.solver == "rp") {
        result = drmst::solve_rp(g, tau, args.tol);
    } else if (args.solver == "bisect") {
        result = drmst::solve_bisection(g, tau, args.tol);
    } else if (args.solver == "benders") {
        result = drmst::solve_benders(g, tau, args.eps, args.time_limit, nullptr, args.tol);
    } else if (args.solver == "exhaustive") {
        result = drmst::solve_exhaustive(g, tau, args.tol);
    } else {
        throw CLI::ValidationError("--solver", "unknown solver '" + args.solver + "'");
    }

    const std::string doc = drmst::solve_result_to_json(result, args.solver, tau, args.timing);
    if (args.out.empty())
        std::cout << doc;
    else
        drmst::write_text_file(args.out, doc);
    return 0;
}

int run_bench(const BenchArgs& args) {
    drmst::ExperimentConfig cfg;
    if (!args.config_path.empty()) {
        cfg = drmst::load_config(args.config_path);
        if (cfg.out_prefix.empty()) cfg.out_prefix = args.out;
    } else {
        cfg.node_counts.clear();
        for (const std::string& part : split_csv(args.nodes_list))
            cfg.node_counts.push_back(std::stoi(part));
        for (const std::string& part : split_csv(args.seeds))
            cfg.seeds.push_back(std::stoull(part));
        cfg.beta = args.beta;
        cfg.edge_prob = args.prob;
        cfg.criteria = split_csv(args.criteria);
        cfg.sample_count = args.samples;
        cfg.out_prefix = args.out;
    }
    if (args.timing) cfg.include_timing = true;

    drmst::SweepReport report = drmst::run_sweep(cfg);
    drmst::write_reports(report, cfg.out_prefix);
    int errors = 0;
    for (const auto& row : report.rows) errors += row.error ? 1 : 0;
    std::printf("wrote %s_rows.csv (%zu rows, %d errors) and %s_agg.csv (%zu rows)\n",
                cfg.out_prefix.c_str(), report.rows.size(), errors, cfg.out_prefix.c_str(),
                report.aggregates.size());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"target-based distributionally robust minimum spanning trees"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a random uncertain-graph instance");
    gen->add_option("--nodes", gen_args.nodes, "node count")->required();
    gen->add_option("--prob", gen_args.prob, "edge probability")->required();
    gen->add_option("--seed", gen_args.seed, "random seed")->required();
    gen->add_option("--out", gen_args.out, "output graph JSON path")->required();
    gen->add_option("--stat-gen", gen_args.stat_gen, "statistics policy (uniform-bounds)");

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "solve one instance");
    solve->add_option("--graph", solve_args.graph_path, "graph JSON path")->required();
    CLI::Option* target_opt =
        solve->add_option("--target", solve_args.target, "absolute cost target");
    CLI::Option* beta_opt = solve->add_option(
        "--beta", solve_args.beta, "target blend in [0,1] between mean and upper-bound MST");
    target_opt->excludes(beta_opt);
    beta_opt->excludes(target_opt);
    solve->add_option("--solver", solve_args.solver, "rp|bisect|benders|exhaustive");
    solve->add_option("--tol", solve_args.tol, "alpha tolerance (scaled by instance)");
    solve->add_option("--eps", solve_args.eps, "benders gap tolerance");
    solve->add_option("--time-limit", solve_args.time_limit, "benders time limit, seconds");
    solve->add_option("--out", solve_args.out, "write the solution JSON here (default stdout)");
    solve->add_flag("--timing", solve_args.timing, "report measured wall time");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "run a benchmark sweep and write CSV reports");
    bench->add_option("--config", bench_args.config_path, "sweep config JSON");
    bench->add_option("--nodes-list", bench_args.nodes_list, "comma-separated node counts");
    bench->add_option("--seeds", bench_args.seeds, "comma-separated instance seeds");
    bench->add_option("--beta", bench_args.beta, "target blend");
    bench->add_option("--prob", bench_args.prob, "edge probability");
    bench->add_option("--criteria", bench_args.criteria, "comma-separated: rv,mean,budget,saa");
    bench->add_option("--samples", bench_args.samples, "evaluation sample count per instance");
    bench->add_option("--out", bench_args.out, "output CSV prefix");
    bench->add_flag("--timing", bench_args.timing, "report measured wall times");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (solve->parsed()) {
            solve_args.has_target = target_opt->count() > 0;
            solve_args.has_beta = beta_opt->count() > 0;
            if (solve_args.has_target == solve_args.has_beta) {
                std::fprintf(stderr, "solve: exactly one of --target/--beta is required\n");
                return kExitUsage;
            }
            if (solve_args.has_beta && (solve_args.beta < 0.0 || solve_args.beta > 1.0)) {
                std::fprintf(stderr, "solve: --beta must lie in [0, 1]\n");
                return kExitUsage;
            }
            return run_solve(solve_args);
        }
        if (bench->parsed()) {
            if (bench_args.config_path.empty() &&
                (bench_args.nodes_list.empty() || bench_args.seeds.empty())) {
                std::fprintf(stderr,
                             "bench: provide --config or both --nodes-list and --seeds\n");
                return kExitUsage;
            }
            return run_bench(bench_args);
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    } catch (const drmst::guard_error& e) {
        std::fprintf(stderr, "guard: %s\n", e.what());
        return kExitGuard;
    } catch (const drmst::io_error& e) {
        std::fprintf(stderr, "io: %s\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitUsage;
}
