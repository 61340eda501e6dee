#pragma once

#include "drmst/instance.hpp"

#include <vector>

namespace drmst {

enum class RvStatus { Zero, Finite, Infeasible };

/// Requirements-violation value of a tree against a target: the smallest risk
/// tolerance whose worst-case certainty equivalent meets the target, or the
/// Zero / Infeasible endpoints of that scale.
struct RvValue {
    RvStatus status = RvStatus::Infeasible;
    double alpha = alpha_infinity; // 0 for Zero, root for Finite, +inf otherwise
    /// Sum of upper means hit the target exactly; alpha pinned at the cap.
    bool capped = false;

    double scalar() const;
    bool is_finite() const { return status != RvStatus::Infeasible; }
};

/// Cap for Finite results whose true infimum is not attained
/// (sum of upper means == target), in units of the instance weight scale.
inline constexpr double rv_alpha_cap_factor = 1e12;

/// RV index of a fixed tree:
///   Zero        when sum of upper supports <= tau,
///   Infeasible  when sum of upper means    >  tau,
///   Finite(a*)  otherwise, with a* the root of tree_ce(a) = tau located by
///               bracket doubling/halving from the weight scale and bisection.
/// `tol` is absolute on alpha after scaling by the instance weight scale.
RvValue rv_index_of_tree(const UncertainGraph& g, const SpanningTree& tree, double tau,
                         double tol = 1e-9);

/// Subgradient of the tree RV value with respect to the incidence vector,
/// evaluated at `tree`: zero when alpha* = 0, otherwise
/// -dC/dp_a / dC/dalpha at (alpha*, p) for every edge a. Throws guard_error
/// when all selected edges are deterministic (dC/dalpha = 0) and
/// std::invalid_argument for Infeasible input.
std::vector<double> rv_subgradient(const UncertainGraph& g, const SpanningTree& tree,
                                   double tau, const RvValue& alpha_star);

} // namespace drmst
