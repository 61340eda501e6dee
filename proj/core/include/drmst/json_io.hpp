#pragma once

#include "drmst/experiments.hpp"
#include "drmst/instance.hpp"
#include "drmst/solvers.hpp"

#include <string>

namespace drmst {

/// Graph JSON schema (shared with the CLI):
///   {"nodes": n,
///    "edges": [{"id":0,"u":0,"v":1,"lo":..,"hi":..,"mean":..,
///               "mad":opt, "var":opt, "mean_lo":opt, "mean_hi":opt}, ...]}
/// Edges default to the mean+support family; mean_lo/mean_hi select the
/// mean-interval family; mad or var select the normalized families with the
/// raw support as their frame.
std::string graph_to_json(const UncertainGraph& g);
UncertainGraph graph_from_json(const std::string& text);
UncertainGraph load_graph(const std::string& path);
void save_graph(const UncertainGraph& g, const std::string& path);

/// Experiment config JSON; fields mirror ExperimentConfig, all optional
/// except "seeds".
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Solver output document ("schema":"drmst/1"). Wall time is written as 0
/// unless include_timing is set, keeping reruns byte-identical.
std::string solve_result_to_json(const RvSolveResult& result, const std::string& solver,
                                 double tau, bool include_timing);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace drmst
