#include "drmst/rv_index.hpp"

#include "drmst/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace drmst {

double RvValue::scalar() const {
    switch (status) {
    case RvStatus::Zero: return 0.0;
    case RvStatus::Finite: return alpha;
    default: return std::numeric_limits<double>::infinity();
    }
}

RvValue rv_index_of_tree(const UncertainGraph& g, const SpanningTree& tree, double tau,
                         double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (!g.graph().is_spanning_tree(tree))
        throw std::invalid_argument("rv_index_of_tree requires a valid spanning tree");

    double sum_hi = 0.0, sum_mu = 0.0;
    for (int id : tree.edge_ids()) {
        const UncertainEdge& e = g.edges()[static_cast<std::size_t>(id)];
        sum_hi += e.hi();
        sum_mu += e.mean_upper();
    }
    if (sum_hi <= tau) return {RvStatus::Zero, 0.0, false};
    if (sum_mu > tau) return {RvStatus::Infeasible, alpha_infinity, false};

    const double scale = g.weight_scale();
    const double alpha_cap = rv_alpha_cap_factor * scale;
    if (sum_mu == tau) return {RvStatus::Finite, alpha_cap, true};

    auto excess = [&](double alpha) { return tree_ce(g, tree, alpha) - tau; };

    // Bracket the root: excess is continuous and nonincreasing in alpha, with
    // excess(0+) > 0 and excess(inf) < 0 here.
    const double alpha_floor = 1e-12 * scale;
    double lo = scale, hi = scale;
    if (excess(scale) > 0.0) {
        do {
            lo = hi;
            hi *= 2.0;
            if (hi >= alpha_cap) {
                if (excess(alpha_cap) > 0.0) return {RvStatus::Finite, alpha_cap, true};
                hi = alpha_cap;
                break;
            }
        } while (excess(hi) > 0.0);
    } else {
        do {
            hi = lo;
            lo *= 0.5;
            if (lo <= alpha_floor) {
                // Root below the floor; the floor is already well under tol.
                if (excess(alpha_floor) <= 0.0) return {RvStatus::Finite, alpha_floor, false};
                lo = alpha_floor;
                break;
            }
        } while (excess(lo) <= 0.0);
    }

    // Bisect to an absolute width of tol*scale and a relative width of 1e-4,
    // keeping the feasible end so tree_ce(result) <= tau.
    for (int iter = 0; iter < 400; ++iter) {
        const double width = hi - lo;
        if (width <= tol * scale && width <= 1e-4 * hi) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (excess(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return {RvStatus::Finite, hi, false};
}

std::vector<double> rv_subgradient(const UncertainGraph& g, const SpanningTree& tree,
                                   double tau, const RvValue& alpha_star) {
    (void)tau;
    const std::size_t m = static_cast<std::size_t>(g.edge_count());
    if (alpha_star.status == RvStatus::Infeasible)
        throw std::invalid_argument("no subgradient at an infeasible tree");
    if (alpha_star.status == RvStatus::Zero) return std::vector<double>(m, 0.0);

    const double alpha = alpha_star.alpha;
    const std::vector<double> p = tree.incidence(g.edge_count());
    const double dalpha = ce_gradient_alpha(g, p, alpha);
    if (dalpha == 0.0)
        throw guard_error("rv_subgradient: selected edges are all deterministic");

    std::vector<double> d(m);
    for (std::size_t a = 0; a < m; ++a)
        d[a] = -ce_gradient_edge(g.edges()[a].stats, alpha, p[a]) / dalpha;
    return d;
}

} // namespace drmst
