#pragma once

#include "drmst/instance.hpp"

#include <cstdint>

namespace drmst {

/// Classical criterion: minimize the expected tree weight (interval means use
/// their midpoint).
SpanningTree solve_min_mean(const UncertainGraph& g);

enum class BudgetStatus {
    Ok,
    /// Some tree meets the target even at full deviation; gamma capped at the
    /// edge count.
    FullyProtected,
    /// No spanning tree respects the target at any budget >= 0.
    TargetUnattainable,
};

struct BudgetResult {
    BudgetStatus status = BudgetStatus::Ok;
    SpanningTree tree;
    double gamma = 0.0;
    long prim_calls = 0;
};

/// Budget-of-uncertainty criterion: the largest deviation budget whose robust
/// tree cost still respects the target, computed from the sorted-deviation
/// decomposition (one Prim call per candidate breakpoint plus a zero-deviation
/// sentinel). Interval means use their upper end.
BudgetResult solve_budget(const UncertainGraph& g, double tau);

struct SaaResult {
    SpanningTree tree;
    double achieved_fraction = 0.0;
    int scenario_count = 0;
};

/// Scenario criterion: maximize the fraction of sampled weight scenarios whose
/// tree cost meets the target, by enumeration over all spanning trees. Ties
/// prefer the smaller expected cost, then the lexicographic edge set.
/// Desk-scale only (tree enumeration cap applies).
SaaResult solve_saa_probability(const UncertainGraph& g, double tau, int scenario_count,
                                std::uint64_t seed, std::uint64_t max_trees = 10'000'000);

/// Target tau = (1-beta) * (mean-weight MST cost) + beta * (upper-bound MST
/// cost); beta = 1 guarantees a zero-RV tree exists.
double compute_target(const UncertainGraph& g, double beta);

} // namespace drmst
