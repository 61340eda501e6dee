#include "drmst/instance.hpp"

#include "drmst/errors.hpp"
#include "drmst/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace drmst {

double UncertainEdge::ce(double alpha, double lambda) const {
    if (frame) return scaled_worst_case_ce(stats, frame->lo, frame->hi, alpha, lambda);
    return worst_case_ce(stats, alpha, lambda);
}

double UncertainEdge::lo() const { return frame ? frame->lo : stats.support_lo(); }

double UncertainEdge::hi() const { return frame ? frame->hi : stats.support_hi(); }

double UncertainEdge::mean_point() const {
    if (frame) return from_normalized(frame->lo, frame->hi, stats.mean_point());
    return stats.mean_point();
}

double UncertainEdge::mean_upper() const {
    if (frame) return from_normalized(frame->lo, frame->hi, stats.mean_upper());
    return stats.mean_upper();
}

UncertainGraph::UncertainGraph(Graph graph, std::vector<UncertainEdge> edges)
    : graph_(std::move(graph)), edges_(std::move(edges)) {
    if (static_cast<int>(edges_.size()) != graph_.edge_count())
        throw std::invalid_argument("one uncertainty descriptor per edge required");
    for (const UncertainEdge& e : edges_) {
        if (e.frame && !(e.frame->lo < e.frame->hi))
            throw std::invalid_argument("support frame requires lo < hi");
    }
    double width = 0.0, mag = 0.0;
    for (const UncertainEdge& e : edges_) {
        width += e.hi() - e.lo();
        mag += std::abs(e.hi());
    }
    width /= static_cast<double>(edges_.size());
    mag /= static_cast<double>(edges_.size());
    weight_scale_ = width > 0.0 ? width : (mag > 0.0 ? mag : 1.0);
}

WeightVector UncertainGraph::ce_weights(double alpha) const {
    WeightVector w;
    w.reserve(edges_.size());
    for (const UncertainEdge& e : edges_) w.push_back(e.ce(alpha));
    return w;
}

WeightVector UncertainGraph::mean_weights() const {
    WeightVector w;
    w.reserve(edges_.size());
    for (const UncertainEdge& e : edges_) w.push_back(e.mean_point());
    return w;
}

WeightVector UncertainGraph::upper_mean_weights() const {
    WeightVector w;
    w.reserve(edges_.size());
    for (const UncertainEdge& e : edges_) w.push_back(e.mean_upper());
    return w;
}

WeightVector UncertainGraph::upper_support_weights() const {
    WeightVector w;
    w.reserve(edges_.size());
    for (const UncertainEdge& e : edges_) w.push_back(e.hi());
    return w;
}

WeightVector UncertainGraph::lower_support_weights() const {
    WeightVector w;
    w.reserve(edges_.size());
    for (const UncertainEdge& e : edges_) w.push_back(e.lo());
    return w;
}

double tree_ce(const UncertainGraph& g, const SpanningTree& tree, double alpha) {
    double total = 0.0;
    for (int id : tree.edge_ids()) total += g.edges()[static_cast<std::size_t>(id)].ce(alpha);
    return total;
}

double ce_gradient_alpha(const UncertainGraph& g, const std::vector<double>& p,
                         double alpha) {
    if (p.size() != g.edges().size())
        throw std::invalid_argument("scaling vector length must equal edge count");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        const UncertainEdge& e = g.edges()[i];
        if (e.frame)
            throw std::invalid_argument(
                "alpha gradient is defined for the support+mean families only");
        total += ce_gradient_alpha_edge(e.stats, alpha, p[i]);
    }
    return total;
}

UncertainGraph gen_erdos_renyi(int n, double p, std::uint64_t seed, StatGenPolicy policy,
                               int max_attempts) {
    if (n < 2) throw std::invalid_argument("gen_erdos_renyi requires n >= 2");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("gen_erdos_renyi requires 0 < p <= 1");
    if (policy != StatGenPolicy::UniformBounds)
        throw std::invalid_argument("unknown stat generation policy");

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<std::pair<int, int>> endpoints;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.next_unit() < p) endpoints.emplace_back(u, v);
        if (!edges_connect(n, endpoints)) continue;

        std::vector<UncertainEdge> edges;
        edges.reserve(endpoints.size());
        for (std::size_t i = 0; i < endpoints.size(); ++i) {
            // Two link classes: most edges are stable with tight bounds, a
            // quarter are volatile with wide bounds and cheaper nominal cost.
            // Means sit below the support midpoint (right-skewed uncertainty),
            // strictly inside the support.
            const bool volatile_link = rng.next_unit() < 0.25;
            const double width =
                volatile_link ? rng.uniform(5.0, 10.0) : rng.uniform(0.38, 0.42);
            const double lo = volatile_link ? rng.uniform(0.5, 3.0) : rng.uniform(1.0, 5.0);
            const double hi = lo + width;
            const double mean = lo + rng.uniform(0.38, 0.42) * width;
            edges.push_back(UncertainEdge{EdgeUncertainty(MeanSupport{lo, hi, mean}), {}});
        }
        return UncertainGraph(Graph(n, endpoints), std::move(edges));
    }
    throw guard_error("gen_erdos_renyi: no connected draw in " + std::to_string(max_attempts) +
                      " attempts (n=" + std::to_string(n) + ", p=" + std::to_string(p) +
                      ", seed=" + std::to_string(seed) + "); increase p or retry budget");
}

} // namespace drmst
