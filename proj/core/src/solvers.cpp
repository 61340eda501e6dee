#include "drmst/solvers.hpp"

#include "drmst/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace drmst {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Slope factor of the target-mean feasibility cut
//   K * (sum of upper means over y - tau)  <=  f(y)
// valid because the left side is <= 0 on feasible trees and f = +inf on the
// rest. Large enough to price infeasible proposals out of the master.
constexpr double kFeasibilityCutSlope = 1e9;

// Proposals whose RV value exceeds this many weight-scale units produce
// near-singular KKT multipliers; instead of cutting at them they are excluded
// from the master (valid once they are provably worse than the incumbent).
constexpr double kCutAnchorAlphaFactor = 100.0;

BendersCut feasibility_cut(const UncertainGraph& g, double tau) {
    BendersCut cut;
    cut.anchor.assign(static_cast<std::size_t>(g.edge_count()), 0.0);
    cut.subgrad.reserve(cut.anchor.size());
    for (const UncertainEdge& e : g.edges())
        cut.subgrad.push_back(kFeasibilityCutSlope * e.mean_upper());
    cut.f_value = -kFeasibilityCutSlope * tau; // value at the all-zero anchor
    return cut;
}

BendersCut optimality_cut(const UncertainGraph& g, const SpanningTree& tree, double tau,
                          const RvValue& value) {
    BendersCut cut;
    cut.anchor = tree.incidence(g.edge_count());
    cut.f_value = value.scalar();
    cut.subgrad = rv_subgradient(g, tree, tau, value);
    return cut;
}

} // namespace

double BendersCut::value_at(const SpanningTree& tree) const {
    double v = f_value;
    for (std::size_t a = 0; a < anchor.size(); ++a) {
        const double y = tree.contains(static_cast<int>(a)) ? 1.0 : 0.0;
        if (y != anchor[a]) v += subgrad[a] * (y - anchor[a]);
    }
    return v;
}

EnumerationMaster::EnumerationMaster(const Graph& graph, std::uint64_t max_trees)
    : tree_size_(graph.node_count() - 1) {
    if (graph.edge_count() > std::numeric_limits<std::uint16_t>::max())
        throw guard_error("enumeration master: too many edges");
    enumerate_spanning_trees(
        graph,
        [&](const SpanningTree& t) {
            for (int id : t.edge_ids()) tree_edges_.push_back(static_cast<std::uint16_t>(id));
            return true;
        },
        max_trees);
    best_value_.assign(tree_edges_.size() / static_cast<std::size_t>(tree_size_), 0.0);
    excluded_.assign(best_value_.size(), 0);
}

SpanningTree EnumerationMaster::tree_at(std::size_t index) const {
    const std::size_t base = index * static_cast<std::size_t>(tree_size_);
    std::vector<int> ids(tree_edges_.begin() + static_cast<std::ptrdiff_t>(base),
                         tree_edges_.begin() + static_cast<std::ptrdiff_t>(base + tree_size_));
    return SpanningTree(std::vector<int>(ids.begin(), ids.end()));
}

void EnumerationMaster::add_cut(const BendersCut& cut) {
    // offset + sum of slopes over the tree's edges; shared-edge cancellation
    // is irrelevant here because only the running max is kept.
    double offset = cut.f_value;
    for (std::size_t a = 0; a < cut.anchor.size(); ++a)
        if (cut.anchor[a] != 0.0) offset -= cut.subgrad[a] * cut.anchor[a];
    const std::size_t count = best_value_.size();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t base = i * static_cast<std::size_t>(tree_size_);
        double v = offset;
        for (int k = 0; k < tree_size_; ++k) v += cut.subgrad[tree_edges_[base + k]];
        if (v > best_value_[i]) best_value_[i] = v;
    }
}

void EnumerationMaster::exclude(const SpanningTree& tree) {
    const auto& ids = tree.edge_ids();
    const std::size_t count = best_value_.size();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t base = i * static_cast<std::size_t>(tree_size_);
        bool same = true;
        for (int k = 0; k < tree_size_ && same; ++k)
            same = tree_edges_[base + k] == static_cast<std::uint16_t>(ids[k]);
        if (same) {
            excluded_[i] = 1;
            return;
        }
    }
}

std::pair<SpanningTree, double> EnumerationMaster::solve() {
    std::size_t best = best_value_.size();
    double best_v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < best_value_.size(); ++i) {
        if (excluded_[i]) continue;
        if (best_value_[i] < best_v) {
            best_v = best_value_[i];
            best = i;
        }
    }
    if (best == best_value_.size())
        throw std::runtime_error("enumeration master: all trees excluded");
    return {tree_at(best), best_v};
}

std::pair<SpanningTree, double> master_solve_enumeration(const Graph& graph,
                                                         const std::vector<BendersCut>& cuts,
                                                         std::uint64_t max_trees) {
    if (cuts.empty())
        throw std::invalid_argument("master requires at least one cut; seed the anchor first");
    EnumerationMaster master(graph, max_trees);
    for (const BendersCut& c : cuts) master.add_cut(c);
    return master.solve();
}

RvSolveResult solve_rp(const UncertainGraph& g, double tau, double tol) {
    const auto start = Clock::now();
    const double scale = g.weight_scale();
    RvSolveResult res;

    SpanningTree current = prim(g.graph(), g.mean_weights());
    ++res.prim_calls;
    std::vector<int> previous_ids;
    RvValue value;

    while (true) {
        value = rv_index_of_tree(g, current, tau, tol);
        const double f = value.scalar();
        if (!res.objective_history.empty()) {
            // Descent property of the fixed-point iteration; a violation
            // signals a broken CE kernel rather than a hard instance.
            const double prev = res.objective_history.back();
            if (std::isfinite(prev) && f > prev + 1e-7 * scale)
                throw std::runtime_error("repeated-prim: objective increased from " +
                                         std::to_string(prev) + " to " + std::to_string(f));
        }
        res.objective_history.push_back(f);
        if (!previous_ids.empty()) {
            if (current.edge_ids() == previous_ids) break; // fixed point
            // A different tree with the same objective is a tied fixed point;
            // stop instead of cycling between tied optima.
            const double prev = res.objective_history[res.objective_history.size() - 2];
            if (f == prev || std::abs(f - prev) <= 1e-12 * scale) break;
        }
        if (res.iterations >= 50)
            throw guard_error("repeated-prim exceeded 50 iterations without a fixed point");
        previous_ids = current.edge_ids();
        current = prim(g.graph(), g.ce_weights(f));
        ++res.prim_calls;
        ++res.iterations;
    }

    res.tree = current;
    res.value = value;
    res.wall_ms = elapsed_ms(start);
    return res;
}

RvSolveResult solve_bisection(const UncertainGraph& g, double tau, double tol) {
    const auto start = Clock::now();
    const double scale = g.weight_scale();
    RvSolveResult res;

    // alpha -> 0 weights: some tree meets the target surely.
    SpanningTree zero_tree = prim(g.graph(), g.upper_support_weights());
    ++res.prim_calls;
    if (total_weight(zero_tree, g.upper_support_weights()) <= tau) {
        res.tree = std::move(zero_tree);
        res.value = {RvStatus::Zero, 0.0, false};
        res.wall_ms = elapsed_ms(start);
        return res;
    }
    // alpha -> inf weights: no tree's worst-case mean meets the target.
    SpanningTree mean_tree = prim(g.graph(), g.upper_mean_weights());
    ++res.prim_calls;
    if (total_weight(mean_tree, g.upper_mean_weights()) > tau) {
        res.tree = std::move(mean_tree);
        res.value = {RvStatus::Infeasible, alpha_infinity, false};
        res.wall_ms = elapsed_ms(start);
        return res;
    }

    const double alpha_cap = rv_alpha_cap_factor * scale;
    const double alpha_floor = 1e-12 * scale;
    SpanningTree incumbent = mean_tree;
    bool capped = false;

    auto excess = [&](double alpha, SpanningTree* witness) {
        WeightVector w = g.ce_weights(alpha);
        SpanningTree t = prim(g.graph(), w);
        ++res.prim_calls;
        ++res.iterations;
        const double e = total_weight(t, w) - tau;
        if (witness && e <= 0.0) *witness = std::move(t);
        return e;
    };

    double lo = scale, hi = scale;
    if (excess(scale, &incumbent) > 0.0) {
        do {
            lo = hi;
            hi *= 2.0;
            if (hi >= alpha_cap) {
                hi = alpha_cap;
                capped = excess(hi, &incumbent) > 0.0;
                if (capped) incumbent = mean_tree;
                break;
            }
        } while (excess(hi, &incumbent) > 0.0);
    } else {
        while (true) {
            hi = lo;
            lo *= 0.5;
            if (lo <= alpha_floor) {
                lo = alpha_floor;
                if (excess(lo, &incumbent) <= 0.0) hi = lo;
                break;
            }
            if (excess(lo, &incumbent) > 0.0) break;
        }
    }

    for (int iter = 0; iter < 400 && !capped; ++iter) {
        const double width = hi - lo;
        if (width <= tol * scale && width <= 1e-4 * hi) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (excess(mid, &incumbent) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }

    res.tree = std::move(incumbent);
    res.value = {RvStatus::Finite, hi, capped};
    res.wall_ms = elapsed_ms(start);
    return res;
}

RvSolveResult solve_benders(const UncertainGraph& g, double tau, double eps,
                            double time_limit_s, MasterBackend* master, double tol) {
    const auto start = Clock::now();
    const double scale = g.weight_scale();
    RvSolveResult res;

    // Whole-instance infeasibility: even the best worst-case mean misses tau.
    SpanningTree mu_tree = prim(g.graph(), g.upper_mean_weights());
    ++res.prim_calls;
    if (total_weight(mu_tree, g.upper_mean_weights()) > tau) {
        res.tree = std::move(mu_tree);
        res.value = {RvStatus::Infeasible, alpha_infinity, false};
        res.wall_ms = elapsed_ms(start);
        return res;
    }

    std::unique_ptr<EnumerationMaster> owned;
    if (master == nullptr) {
        owned = std::make_unique<EnumerationMaster>(g.graph());
        master = owned.get();
    }

    // Sharper roots than the caller-facing tolerance keep the KKT multipliers
    // in the cuts accurate enough for the gap certificate.
    const double cut_tol = std::max(tol * 1e-3, 1e-13);
    const double anchor_alpha_limit = kCutAnchorAlphaFactor * scale;

    SpanningTree seed = prim(g.graph(), g.mean_weights());
    ++res.prim_calls;
    RvValue seed_value = rv_index_of_tree(g, seed, tau, cut_tol);
    if (seed_value.status == RvStatus::Infeasible) {
        // Possible with interval means, where the midpoint seed may overshoot.
        seed = mu_tree;
        seed_value = rv_index_of_tree(g, seed, tau, cut_tol);
    }

    SpanningTree best_tree = seed;
    RvValue best_value = seed_value;
    std::set<std::vector<int>> proposed{seed.edge_ids()};

    master->add_cut(feasibility_cut(g, tau));
    res.cuts.push_back(optimality_cut(g, seed, tau, seed_value));
    master->add_cut(res.cuts.back());
    res.cuts_generated = 1;
    res.iterations = 1;
    res.objective_history.push_back(seed_value.scalar());

    double lower_bound = 0.0;
    while (true) {
        if (elapsed_ms(start) > time_limit_s * 1e3) {
            res.hit_time_limit = true;
            break;
        }
        auto [proposal, bound] = master->solve();
        lower_bound = bound;
        res.lower_bounds.push_back(bound);
        if (!proposed.insert(proposal.edge_ids()).second) break; // fixed point

        const RvValue value = rv_index_of_tree(g, proposal, tau, cut_tol);
        const double f = value.scalar();
        ++res.iterations;
        res.objective_history.push_back(f);
        if (f < best_value.scalar()) {
            best_value = value;
            best_tree = proposal;
        }

        if (value.status == RvStatus::Infeasible ||
            (f > anchor_alpha_limit && f > best_value.scalar())) {
            // No usable cut at this proposal; it is provably worse than the
            // incumbent, so drop it from the master instead.
            master->exclude(proposal);
            continue;
        }
        res.cuts.push_back(optimality_cut(g, proposal, tau, value));
        master->add_cut(res.cuts.back());
        ++res.cuts_generated;
        if (f - bound <= eps) break;
    }

    res.tree = std::move(best_tree);
    res.value = best_value;
    res.gap = std::max(best_value.scalar() - lower_bound, 0.0);
    res.wall_ms = elapsed_ms(start);
    return res;
}

RvSolveResult solve_exhaustive(const UncertainGraph& g, double tau, double tol,
                               std::uint64_t max_trees) {
    const auto start = Clock::now();
    if (g.node_count() > 12)
        throw guard_error("solve_exhaustive is guarded to 12 nodes; got " +
                          std::to_string(g.node_count()));
    RvSolveResult res;

    bool have_best = false;
    SpanningTree best_tree;
    RvValue best_value;

    enumerate_spanning_trees(
        g.graph(),
        [&](const SpanningTree& t) {
            ++res.iterations;
            double sum_hi = 0.0, sum_mu = 0.0;
            for (int id : t.edge_ids()) {
                const UncertainEdge& e = g.edges()[static_cast<std::size_t>(id)];
                sum_hi += e.hi();
                sum_mu += e.mean_upper();
            }
            if (sum_hi <= tau) {
                // First zero-RV tree in lexicographic order is the optimum.
                best_tree = t;
                best_value = {RvStatus::Zero, 0.0, false};
                have_best = true;
                return false;
            }
            if (sum_mu > tau) return true; // infeasible tree
            if (have_best && tree_ce(g, t, best_value.alpha) >= tau)
                return true; // cannot beat the incumbent
            const RvValue v = rv_index_of_tree(g, t, tau, tol);
            if (!have_best || v.scalar() < best_value.scalar()) {
                best_tree = t;
                best_value = v;
                have_best = true;
            }
            return true;
        },
        max_trees);

    if (!have_best) {
        best_tree = prim(g.graph(), g.upper_mean_weights());
        ++res.prim_calls;
        best_value = {RvStatus::Infeasible, alpha_infinity, false};
    }
    res.tree = std::move(best_tree);
    res.value = best_value;
    res.wall_ms = elapsed_ms(start);
    return res;
}

} // namespace drmst
