#include "drmst/json_io.hpp"

#include "drmst/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace drmst {

using ordered_json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw io_error("failed writing '" + path + "'");
}

std::string graph_to_json(const UncertainGraph& g) {
    ordered_json doc;
    doc["nodes"] = g.node_count();
    ordered_json edges = ordered_json::array();
    for (const Edge& e : g.graph().edges()) {
        const UncertainEdge& u = g.edges()[static_cast<std::size_t>(e.id)];
        ordered_json je;
        je["id"] = e.id;
        je["u"] = e.u;
        je["v"] = e.v;
        je["lo"] = u.lo();
        je["hi"] = u.hi();
        if (u.stats.holds<MeanIntervalSupport>()) {
            const auto& d = u.stats.get<MeanIntervalSupport>();
            je["mean_lo"] = d.mean_lo;
            je["mean_hi"] = d.mean_hi;
        } else if (u.stats.holds<MeanMad>()) {
            const auto& d = u.stats.get<MeanMad>();
            je["mean"] = u.mean_point();
            je["mad"] = d.mad * (u.hi() - u.lo()) / 2.0;
        } else if (u.stats.holds<MeanVariance>()) {
            const auto& d = u.stats.get<MeanVariance>();
            je["mean"] = u.mean_point();
            const double s = (u.hi() - u.lo()) / 2.0;
            je["var"] = (d.second_moment - d.mean * d.mean) * s * s;
        } else {
            je["mean"] = u.mean_point();
        }
        edges.push_back(std::move(je));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

UncertainGraph graph_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("malformed graph JSON: ") + e.what());
    }
    try {
        const int n = doc.at("nodes").get<int>();
        const auto& jedges = doc.at("edges");
        std::vector<std::pair<int, int>> endpoints(jedges.size());
        std::vector<std::optional<UncertainEdge>> stats(jedges.size());
        for (const auto& je : jedges) {
            const int id = je.at("id").get<int>();
            if (id < 0 || static_cast<std::size_t>(id) >= jedges.size() ||
                stats[static_cast<std::size_t>(id)].has_value())
                throw io_error("graph JSON: edge ids must be 0..m-1, each once");
            endpoints[static_cast<std::size_t>(id)] = {je.at("u").get<int>(),
                                                       je.at("v").get<int>()};
            const double lo = je.at("lo").get<double>();
            const double hi = je.at("hi").get<double>();
            std::optional<UncertainEdge> edge;
            if (je.contains("mean_lo") || je.contains("mean_hi")) {
                edge = UncertainEdge{EdgeUncertainty(MeanIntervalSupport{
                                         lo, hi, je.at("mean_lo").get<double>(),
                                         je.at("mean_hi").get<double>()}),
                                     {}};
            } else if (je.contains("mad")) {
                edge = UncertainEdge{normalize_mad(lo, hi, je.at("mean").get<double>(),
                                                   je.at("mad").get<double>()),
                                     SupportFrame{lo, hi}};
            } else if (je.contains("var")) {
                edge = UncertainEdge{normalize_variance(lo, hi, je.at("mean").get<double>(),
                                                        je.at("var").get<double>()),
                                     SupportFrame{lo, hi}};
            } else {
                edge = UncertainEdge{EdgeUncertainty(MeanSupport{lo, hi,
                                                                 je.at("mean").get<double>()}),
                                     {}};
            }
            stats[static_cast<std::size_t>(id)] = std::move(edge);
        }
        std::vector<UncertainEdge> edges;
        edges.reserve(stats.size());
        for (auto& s : stats) {
            if (!s) throw io_error("graph JSON: edge ids must be 0..m-1, each once");
            edges.push_back(std::move(*s));
        }
        return UncertainGraph(Graph(n, endpoints), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("graph JSON missing or mistyped field: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw io_error(std::string("graph JSON violates schema invariants: ") + e.what());
    }
}

UncertainGraph load_graph(const std::string& path) { return graph_from_json(read_text_file(path)); }

void save_graph(const UncertainGraph& g, const std::string& path) {
    write_text_file(path, graph_to_json(g));
}

ExperimentConfig config_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("malformed config JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (doc.contains("nodes")) cfg.node_counts = {doc.at("nodes").get<int>()};
        if (doc.contains("nodes_list"))
            cfg.node_counts = doc.at("nodes_list").get<std::vector<int>>();
        if (doc.contains("prob")) cfg.edge_prob = doc.at("prob").get<double>();
        cfg.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
        if (doc.contains("beta")) cfg.beta = doc.at("beta").get<double>();
        if (doc.contains("criteria"))
            cfg.criteria = doc.at("criteria").get<std::vector<std::string>>();
        if (doc.contains("samples")) cfg.sample_count = doc.at("samples").get<int>();
        if (doc.contains("saa_scenarios")) cfg.saa_scenarios = doc.at("saa_scenarios").get<int>();
        if (doc.contains("gammas")) cfg.gammas = doc.at("gammas").get<std::vector<double>>();
        if (doc.contains("tol")) cfg.tol = doc.at("tol").get<double>();
        if (doc.contains("eps")) cfg.eps = doc.at("eps").get<double>();
        if (doc.contains("timing")) cfg.include_timing = doc.at("timing").get<bool>();
        if (doc.contains("out")) cfg.out_prefix = doc.at("out").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("config JSON missing or mistyped field: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    return config_from_json(read_text_file(path));
}

std::string solve_result_to_json(const RvSolveResult& result, const std::string& solver,
                                 double tau, bool include_timing) {
    ordered_json doc;
    doc["schema"] = "drmst/1";
    doc["solver"] = solver;
    doc["target"] = tau;
    switch (result.value.status) {
    case RvStatus::Zero: doc["status"] = "zero"; break;
    case RvStatus::Finite: doc["status"] = result.value.capped ? "finite_capped" : "finite"; break;
    default: doc["status"] = "infeasible";
    }
    if (result.value.status == RvStatus::Infeasible)
        doc["alpha"] = "inf";
    else
        doc["alpha"] = result.value.scalar();
    doc["tree"] = result.tree.edge_ids();
    doc["iterations"] = result.iterations;
    doc["prim_calls"] = result.prim_calls;
    if (solver == "benders") {
        doc["cuts"] = result.cuts_generated;
        doc["gap"] = result.gap;
        doc["hit_time_limit"] = result.hit_time_limit;
    }
    doc["wall_ms"] = include_timing ? result.wall_ms : 0.0;
    return doc.dump(2) + "\n";
}

} // namespace drmst
