#include "drmst/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drmst {

namespace {

// Below this fraction of the support width, alpha is handled by the alpha = 0
// branch; the CE is continuous there and raw exponent ratios stop being
// representable.
constexpr double kAlphaZeroFactor = 1e-12;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// alpha * log(sum_i w_i exp(t_i / alpha)) with a max-shift over the terms
// that carry positive weight.
double shifted_entropic_sum(double alpha, const double* t, const double* w, int k) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i)
        if (w[i] > 0.0) m = std::max(m, t[i]);
    double s = 0.0;
    for (int i = 0; i < k; ++i)
        if (w[i] > 0.0) s += w[i] * std::exp((t[i] - m) / alpha);
    return m + alpha * std::log(s);
}

// Two-point worst case on {lo, hi} with mean mu_up: weights g at lo, h at hi.
double support_mean_ce(double lo, double hi, double mu_up, double alpha, double lambda) {
    if (lo == hi) return lambda * lo;
    const double g = (hi - mu_up) / (hi - lo);
    const double h = (mu_up - lo) / (hi - lo);
    if (h <= 0.0) return lambda * lo; // mean pinned at the lower endpoint
    if (g <= 0.0) return lambda * hi;
    if (std::isinf(alpha)) return lambda * mu_up;
    if (alpha <= kAlphaZeroFactor * (hi - lo)) return lambda * hi;
    const double t[2] = {lambda * lo, lambda * hi};
    const double w[2] = {g, h};
    return shifted_entropic_sum(alpha, t, w, 2);
}

// Three-point worst case on {-1, mean, 1} for mean + MAD. When the MAD bound
// exceeds the achievable maximum 1 - mean^2 it stops binding and the worst
// case collapses to the two-point support distribution.
double mad_ce(const MeanMad& d, double alpha, double lambda) {
    const double mu = d.mean;
    if (mu >= 1.0) return lambda;           // point mass at +1
    if (mu <= -1.0) return -lambda;         // point mass at -1
    double p_neg = d.mad / (2.0 * (1.0 + mu));
    double p_pos = d.mad / (2.0 * (1.0 - mu));
    double p_mid = 1.0 - p_neg - p_pos;
    if (p_mid < 0.0) {
        p_pos = (1.0 + mu) / 2.0;
        p_neg = (1.0 - mu) / 2.0;
        p_mid = 0.0;
    }
    if (std::isinf(alpha)) return lambda * mu;
    if (alpha <= kAlphaZeroFactor * 2.0) {
        if (p_pos > 0.0) return lambda;
        return lambda * mu;
    }
    const double t[3] = {-lambda, lambda * mu, lambda};
    const double w[3] = {p_neg, p_mid, p_pos};
    return shifted_entropic_sum(alpha, t, w, 3);
}

// Mean + second-moment worst case: the larger of the two extremal two-point
// distributions, each meeting both moment constraints with equality. The one
// carrying mass at +1 is active for lambda >= 0.
double variance_ce(const MeanVariance& d, double alpha, double lambda) {
    const double mu = d.mean;
    const double s2 = d.second_moment;
    if (s2 <= mu * mu) return lambda * mu; // zero variance: point mass
    if (std::isinf(alpha)) return lambda * mu;
    if (alpha <= kAlphaZeroFactor * 2.0) return lambda; // mass at +1 is feasible

    auto branch = [&](double sign) {
        // sign = +1: support {(mu - s2) / (1 - mu), +1}
        // sign = -1: support {(mu + s2) / (1 + mu), -1}
        const double denom = 1.0 - 2.0 * sign * mu + s2;
        const double inner = (mu - sign * s2) / (1.0 - sign * mu);
        const double p_inner = (1.0 - sign * mu) * (1.0 - sign * mu) / denom;
        const double p_outer = (s2 - mu * mu) / denom;
        const double t[2] = {lambda * inner, lambda * sign};
        const double w[2] = {p_inner, p_outer};
        return shifted_entropic_sum(alpha, t, w, 2);
    };
    if (mu >= 1.0) return lambda;   // forces s2 = 1, point mass at +1
    if (mu <= -1.0) return -lambda;
    return std::max(branch(1.0), branch(-1.0));
}

} // namespace

EdgeUncertainty::EdgeUncertainty(MeanSupport d) : v_(d) {
    require(std::isfinite(d.lo) && std::isfinite(d.hi) && std::isfinite(d.mean),
            "MeanSupport fields must be finite");
    require(d.lo <= d.hi, "MeanSupport requires lo <= hi");
    require(d.lo <= d.mean && d.mean <= d.hi, "MeanSupport mean must lie in [lo, hi]");
}

EdgeUncertainty::EdgeUncertainty(MeanIntervalSupport d) : v_(d) {
    require(std::isfinite(d.lo) && std::isfinite(d.hi) && std::isfinite(d.mean_lo) &&
                std::isfinite(d.mean_hi),
            "MeanIntervalSupport fields must be finite");
    require(d.lo < d.hi, "MeanIntervalSupport requires lo < hi");
    require(d.lo <= d.mean_lo && d.mean_lo <= d.mean_hi && d.mean_hi <= d.hi,
            "MeanIntervalSupport requires lo <= mean_lo <= mean_hi <= hi");
}

EdgeUncertainty::EdgeUncertainty(MeanMad d) : v_(d) {
    require(std::isfinite(d.mean) && std::isfinite(d.mad), "MeanMad fields must be finite");
    require(-1.0 <= d.mean && d.mean <= 1.0, "MeanMad mean must lie in [-1, 1]");
    const double cap = std::min(2.0 * (1.0 - d.mean), 2.0 * (1.0 + d.mean));
    require(0.0 <= d.mad && d.mad <= cap, "MeanMad deviation exceeds achievable bound");
}

EdgeUncertainty::EdgeUncertainty(MeanVariance d) : v_(d) {
    require(std::isfinite(d.mean) && std::isfinite(d.second_moment),
            "MeanVariance fields must be finite");
    require(-1.0 <= d.mean && d.mean <= 1.0, "MeanVariance mean must lie in [-1, 1]");
    require(d.mean * d.mean <= d.second_moment && d.second_moment <= 1.0,
            "MeanVariance requires mean^2 <= second_moment <= 1");
}

double EdgeUncertainty::support_lo() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, MeanSupport> ||
                          std::is_same_v<T, MeanIntervalSupport>)
                return d.lo;
            else
                return -1.0;
        },
        v_);
}

double EdgeUncertainty::support_hi() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, MeanSupport> ||
                          std::is_same_v<T, MeanIntervalSupport>)
                return d.hi;
            else
                return 1.0;
        },
        v_);
}

double EdgeUncertainty::mean_upper() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, MeanSupport>)
                return d.mean;
            else if constexpr (std::is_same_v<T, MeanIntervalSupport>)
                return d.mean_hi;
            else
                return d.mean;
        },
        v_);
}

double EdgeUncertainty::mean_lower() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, MeanIntervalSupport>)
                return d.mean_lo;
            else if constexpr (std::is_same_v<T, MeanSupport>)
                return d.mean;
            else
                return d.mean;
        },
        v_);
}

double EdgeUncertainty::mean_point() const {
    if (holds<MeanIntervalSupport>()) {
        const auto& d = get<MeanIntervalSupport>();
        return 0.5 * (d.mean_lo + d.mean_hi);
    }
    return mean_upper();
}

bool EdgeUncertainty::is_constant() const {
    if (holds<MeanSupport>()) {
        const auto& d = get<MeanSupport>();
        return d.lo == d.hi;
    }
    if (holds<MeanMad>()) {
        const auto& d = get<MeanMad>();
        return d.mad == 0.0;
    }
    if (holds<MeanVariance>()) {
        const auto& d = get<MeanVariance>();
        return d.second_moment <= d.mean * d.mean;
    }
    return false;
}

double worst_case_ce(const EdgeUncertainty& u, double alpha, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("worst_case_ce requires lambda >= 0");
    if (alpha < 0.0) throw std::invalid_argument("worst_case_ce requires alpha >= 0");
    if (lambda == 0.0) return 0.0;
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, MeanSupport>)
                return support_mean_ce(d.lo, d.hi, d.mean, alpha, lambda);
            else if constexpr (std::is_same_v<T, MeanIntervalSupport>)
                // The sup over the mean interval is attained at the upper mean
                // for lambda >= 0.
                return support_mean_ce(d.lo, d.hi, d.mean_hi, alpha, lambda);
            else if constexpr (std::is_same_v<T, MeanMad>)
                return mad_ce(d, alpha, lambda);
            else
                return variance_ce(d, alpha, lambda);
        },
        u.value());
}

namespace {

struct GhParams {
    double lo, hi, g, h;
};

GhParams gh_params(const EdgeUncertainty& u) {
    double lo, hi, mu_up;
    if (u.holds<MeanSupport>()) {
        const auto& d = u.get<MeanSupport>();
        lo = d.lo;
        hi = d.hi;
        mu_up = d.mean;
    } else if (u.holds<MeanIntervalSupport>()) {
        const auto& d = u.get<MeanIntervalSupport>();
        lo = d.lo;
        hi = d.hi;
        mu_up = d.mean_hi;
    } else {
        throw std::invalid_argument(
            "gradient formulas are defined for the support+mean families only");
    }
    if (lo == hi) return {lo, hi, 1.0, 0.0};
    return {lo, hi, (hi - mu_up) / (hi - lo), (mu_up - lo) / (hi - lo)};
}

} // namespace

double ce_gradient_edge(const EdgeUncertainty& u, double alpha, double p) {
    const auto [lo, hi, g, h] = gh_params(u);
    if (!(alpha > 0.0)) throw std::invalid_argument("ce_gradient_edge requires alpha > 0");
    if (lo == hi) return lo;
    if (h <= 0.0) return lo;
    if (g <= 0.0) return hi;
    if (std::isinf(alpha)) return g * lo + h * hi; // = mean_upper
    const double tl = lo * p / alpha;
    const double th = hi * p / alpha;
    const double m = std::max(tl, th);
    const double el = g * std::exp(tl - m);
    const double eh = h * std::exp(th - m);
    return (el * lo + eh * hi) / (el + eh);
}

double ce_gradient_alpha_edge(const EdgeUncertainty& u, double alpha, double p) {
    const auto [lo, hi, g, h] = gh_params(u);
    if (!(alpha > 0.0) || std::isinf(alpha))
        throw std::invalid_argument("ce_gradient_alpha_edge requires finite alpha > 0");
    if (lo == hi || h <= 0.0 || g <= 0.0 || p == 0.0) return 0.0;
    const double tl = lo * p / alpha;
    const double th = hi * p / alpha;
    const double m = std::max(tl, th);
    const double el = g * std::exp(tl - m);
    const double eh = h * std::exp(th - m);
    const double log_sum = m + std::log(el + eh);
    const double ratio = (el * lo + eh * hi) / (el + eh);
    return log_sum - ratio * p / alpha;
}

double to_normalized(double lo, double hi, double z) {
    if (!(lo < hi)) throw std::invalid_argument("normalization requires lo < hi");
    return (2.0 * z - (lo + hi)) / (hi - lo);
}

double from_normalized(double lo, double hi, double z) {
    if (!(lo < hi)) throw std::invalid_argument("normalization requires lo < hi");
    return (z * (hi - lo) + lo + hi) / 2.0;
}

EdgeUncertainty normalize_mad(double lo, double hi, double mean, double mad) {
    const double mu = to_normalized(lo, hi, mean);
    const double scaled_mad = 2.0 * mad / (hi - lo);
    return EdgeUncertainty(MeanMad{mu, scaled_mad});
}

EdgeUncertainty normalize_variance(double lo, double hi, double mean, double variance) {
    if (variance < 0.0) throw std::invalid_argument("variance bound must be nonnegative");
    const double s = (hi - lo) / 2.0;
    const double mu = to_normalized(lo, hi, mean);
    // E[z_norm^2] = (Var + (mean - midpoint)^2) / s^2
    const double second = variance / (s * s) + mu * mu;
    return EdgeUncertainty(MeanVariance{mu, second});
}

double scaled_worst_case_ce(const EdgeUncertainty& normalized, double lo, double hi,
                            double alpha, double lambda) {
    if (!(lo < hi)) throw std::invalid_argument("scaled CE requires lo < hi");
    const double s = (hi - lo) / 2.0;
    const double mid = (lo + hi) / 2.0;
    return lambda * mid + s * worst_case_ce(normalized, alpha / s, lambda);
}

} // namespace drmst
