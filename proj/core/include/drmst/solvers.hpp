#pragma once

#include "drmst/rv_index.hpp"

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace drmst {

/// Linear underestimator of the tree RV value, anchored at one tree:
///   value(y) = f_value + subgrad' (y - anchor).
struct BendersCut {
    std::vector<double> anchor; // incidence of the generating tree
    double f_value = 0.0;
    std::vector<double> subgrad;

    /// Evaluates the cut at a tree. Shared edges cancel exactly, so the sum
    /// runs over the symmetric difference only; this keeps large-slope cuts
    /// from losing precision at their own anchor.
    double value_at(const SpanningTree& tree) const;
};

/// Backend for the relaxed master  min_{y in trees} max_cuts value(y).
/// Implementations start from the trivial bound f >= 0 (the RV value is
/// nonnegative), so an empty cut set is still well defined.
class MasterBackend {
  public:
    virtual ~MasterBackend() = default;
    virtual void add_cut(const BendersCut& cut) = 0;
    /// Removes one tree from the master's feasible set. Only trees proved
    /// strictly worse than the incumbent may be excluded.
    virtual void exclude(const SpanningTree& tree) = 0;
    /// Minimizer of the current max-of-cuts and its value (the lower bound).
    virtual std::pair<SpanningTree, double> solve() = 0;
};

/// Exact master over an explicitly enumerated tree list; intended for desk
/// scale. Keeps a running max per tree so each added cut costs one pass.
class EnumerationMaster final : public MasterBackend {
  public:
    explicit EnumerationMaster(const Graph& graph, std::uint64_t max_trees = 2'000'000);
    void add_cut(const BendersCut& cut) override;
    void exclude(const SpanningTree& tree) override;
    std::pair<SpanningTree, double> solve() override;

  private:
    SpanningTree tree_at(std::size_t index) const;

    int tree_size_ = 0;
    std::vector<std::uint16_t> tree_edges_; // flat, tree_size_ ids per tree
    std::vector<double> best_value_;        // running max of cut values, >= 0
    std::vector<char> excluded_;
};

/// Stateless form of the enumeration master: argmin over all spanning trees
/// of the max cut value. Requires at least one cut.
std::pair<SpanningTree, double> master_solve_enumeration(const Graph& graph,
                                                         const std::vector<BendersCut>& cuts,
                                                         std::uint64_t max_trees = 2'000'000);

struct RvSolveResult {
    SpanningTree tree;
    RvValue value;
    int iterations = 0;
    long prim_calls = 0;
    int cuts_generated = 0;
    double gap = 0.0; // Benders: incumbent minus final lower bound
    double wall_ms = 0.0;
    bool hit_time_limit = false;
    /// Objective value after each iteration (repeated-Prim and Benders).
    std::vector<double> objective_history;
    /// Benders: master lower bound after each master solve.
    std::vector<double> lower_bounds;
    /// Benders: every optimality cut emitted, in generation order.
    std::vector<BendersCut> cuts;
};

/// Repeated-Prim fixed-point iteration: start from the mean-weight tree,
/// re-weight every edge with its worst-case CE at the current tree's RV value
/// and re-run Prim until the tree stabilizes. The fixed point is a global
/// minimizer. Ties in the objective are treated as a fixed point.
RvSolveResult solve_rp(const UncertainGraph& g, double tau, double tol = 1e-9);

/// Outer bisection on alpha of  min_y tree_ce(alpha, y) - tau, the minimum
/// taken by Prim under the CE weights at alpha.
RvSolveResult solve_bisection(const UncertainGraph& g, double tau, double tol = 1e-9);

/// Cutting-plane solve: the master proposes trees against the current cut
/// set, the subproblem prices each proposal exactly and returns a subgradient
/// cut. Stops at gap <= eps, on a repeated proposal, or at the time limit.
/// Uses `master` when given, otherwise an EnumerationMaster.
RvSolveResult solve_benders(const UncertainGraph& g, double tau, double eps = 1e-6,
                            double time_limit_s = 60.0, MasterBackend* master = nullptr,
                            double tol = 1e-9);

/// Ground-truth oracle: evaluates the RV index of every spanning tree and
/// returns the minimizer (ties by lexicographic edge-id set). Guarded to
/// node counts <= 12 and `max_trees` trees.
RvSolveResult solve_exhaustive(const UncertainGraph& g, double tau, double tol = 1e-9,
                               std::uint64_t max_trees = 10'000'000);

} // namespace drmst
