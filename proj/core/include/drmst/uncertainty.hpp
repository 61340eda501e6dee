#pragma once

#include <limits>
#include <variant>

namespace drmst {

inline constexpr double alpha_infinity = std::numeric_limits<double>::infinity();

/// Known mean on a bounded support [lo, hi]. lo == hi == mean encodes a
/// deterministic weight.
struct MeanSupport {
    double lo;
    double hi;
    double mean;
};

/// Mean known only up to an interval [mean_lo, mean_hi] on support [lo, hi].
struct MeanIntervalSupport {
    double lo;
    double hi;
    double mean_lo;
    double mean_hi;
};

/// Known mean and a mean-absolute-deviation bound, on normalized support [-1, 1].
struct MeanMad {
    double mean;
    double mad;
};

/// Known mean and a second-moment bound E[z^2] <= second_moment, on
/// normalized support [-1, 1].
struct MeanVariance {
    double mean;
    double second_moment;
};

/// Tagged ambiguity-set descriptor for one edge weight. Construction
/// validates the relevant moment/support inequalities and throws
/// std::invalid_argument on violation; instances are immutable afterwards.
class EdgeUncertainty {
  public:
    EdgeUncertainty(MeanSupport d);           // NOLINT(google-explicit-constructor)
    EdgeUncertainty(MeanIntervalSupport d);   // NOLINT(google-explicit-constructor)
    EdgeUncertainty(MeanMad d);               // NOLINT(google-explicit-constructor)
    EdgeUncertainty(MeanVariance d);          // NOLINT(google-explicit-constructor)

    using Variant = std::variant<MeanSupport, MeanIntervalSupport, MeanMad, MeanVariance>;
    const Variant& value() const { return v_; }

    template <typename T> bool holds() const { return std::holds_alternative<T>(v_); }
    template <typename T> const T& get() const { return std::get<T>(v_); }

    /// Support bounds on the descriptor's native scale ([-1,1] for the
    /// normalized families).
    double support_lo() const;
    double support_hi() const;

    /// Largest mean consistent with the descriptor.
    double mean_upper() const;
    double mean_lower() const;
    /// Point mean used by mean-weight initializations (interval -> midpoint).
    double mean_point() const;

    /// Deterministic weight (zero-width support).
    bool is_constant() const;

  private:
    Variant v_;
};

/// Worst-case certainty equivalent sup_P alpha ln E_P[exp(lambda z / alpha)]
/// over the descriptor's ambiguity set.
///
/// alpha = 0 returns the worst attainable support point times lambda and
/// alpha = +inf returns lambda * mean_upper(), matching the continuity limits
/// of the finite-alpha expression. Exponentials are evaluated with a max-term
/// shift so small alpha cannot overflow. Requires lambda >= 0.
double worst_case_ce(const EdgeUncertainty& u, double alpha, double lambda = 1.0);

/// d/dp of worst_case_ce at scaling p (the weighted-average-of-endpoints
/// ratio). Defined for the MeanSupport / MeanIntervalSupport families only;
/// requires alpha > 0.
double ce_gradient_edge(const EdgeUncertainty& u, double alpha, double p);

/// Per-edge d/dalpha of worst_case_ce at scaling p, for the
/// MeanSupport / MeanIntervalSupport families; requires alpha > 0. Always <= 0.
double ce_gradient_alpha_edge(const EdgeUncertainty& u, double alpha, double p);

/// Affine point maps between a raw support [lo, hi] and the normalized
/// support [-1, 1].
double to_normalized(double lo, double hi, double z);
double from_normalized(double lo, double hi, double z);

/// Normalized MeanMad descriptor for raw statistics (mean, mad) on [lo, hi].
EdgeUncertainty normalize_mad(double lo, double hi, double mean, double mad);

/// Normalized MeanVariance descriptor for raw statistics (mean, variance
/// bound) on [lo, hi].
EdgeUncertainty normalize_variance(double lo, double hi, double mean, double variance);

/// Worst-case CE of a normalized descriptor mapped back onto the raw support
/// [lo, hi]:  lambda*(lo+hi)/2 + s * C_{alpha/s}(lambda z_norm), s = (hi-lo)/2.
double scaled_worst_case_ce(const EdgeUncertainty& normalized, double lo, double hi,
                            double alpha, double lambda = 1.0);

} // namespace drmst
