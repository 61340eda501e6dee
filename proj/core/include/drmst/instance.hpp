#pragma once

#include "drmst/graph.hpp"
#include "drmst/uncertainty.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace drmst {

/// Raw support frame for descriptors stated on the normalized scale.
struct SupportFrame {
    double lo;
    double hi;
};

/// One edge's uncertainty together with the raw support it lives on. The
/// frame is set only for the normalized families (MeanMad / MeanVariance);
/// support+mean descriptors already carry their raw scale.
struct UncertainEdge {
    EdgeUncertainty stats;
    std::optional<SupportFrame> frame;

    double ce(double alpha, double lambda = 1.0) const;
    double lo() const;
    double hi() const;
    double mean_point() const;
    double mean_upper() const;
};

/// Connected graph plus per-edge ambiguity descriptors. Immutable; all
/// member queries are pure and safe to call concurrently.
class UncertainGraph {
  public:
    UncertainGraph(Graph graph, std::vector<UncertainEdge> edges);

    const Graph& graph() const { return graph_; }
    const std::vector<UncertainEdge>& edges() const { return edges_; }
    int node_count() const { return graph_.node_count(); }
    int edge_count() const { return graph_.edge_count(); }

    /// Mean support width over edges; falls back to the mean |hi| and then 1
    /// for fully deterministic instances. Sets the alpha unit used by the
    /// solvers' bracketing and tolerances.
    double weight_scale() const { return weight_scale_; }

    WeightVector ce_weights(double alpha) const;
    WeightVector mean_weights() const;
    WeightVector upper_mean_weights() const;
    WeightVector upper_support_weights() const;
    WeightVector lower_support_weights() const;

  private:
    Graph graph_;
    std::vector<UncertainEdge> edges_;
    double weight_scale_;
};

/// Sum of per-edge worst-case certainty equivalents over the tree, i.e.
/// h(alpha, y) of the tree-selection problem.
double tree_ce(const UncertainGraph& g, const SpanningTree& tree, double alpha);

/// Gradient of C_alpha(w'p) with respect to alpha: the sum of per-edge
/// d/dalpha terms over all edges with p_a != 0. Always <= 0; strictly
/// negative as soon as one selected edge is nondegenerate.
double ce_gradient_alpha(const UncertainGraph& g, const std::vector<double>& p,
                         double alpha);

/// How the random generator draws per-edge statistics.
enum class StatGenPolicy {
    /// Two link classes: stable (tight bounds) and volatile (wide, cheaper);
    /// means below the support midpoint, strictly inside.
    UniformBounds,
};

/// Connected Erdos-Renyi instance with per-edge (lo, hi, mean) statistics.
/// Resamples with an incremented sub-seed until connected; throws guard_error
/// after `max_attempts` failures. Pure function of its arguments.
UncertainGraph gen_erdos_renyi(int n, double p, std::uint64_t seed,
                               StatGenPolicy policy = StatGenPolicy::UniformBounds,
                               int max_attempts = 100);

} // namespace drmst
