#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "rrg/spectra.hpp"

namespace rrg::iprstats {

/// n·Σx⁴ of a unit vector. Throws InvalidArgument if |‖x‖ − 1| ≥ 1e-8.
double ipr(std::span<const double> x);

/// (μ¹)²/(μ⁰μ²) with μʳ = Σ|x_i|^{2r}. Throws InvalidArgument for the zero vector.
double participation_ratio(std::span<const double> x);

struct GraphIprSummary {
    std::size_t n = 0;
    std::size_t z = 0;
    /// Mean IPR over the n−1 non-zero modes.
    double mean_ipr = 0.0;
    /// Population variance of those n−1 values.
    double variance = 0.0;
    double max_ipr = 0.0;
    std::vector<double> mode_iprs;
    std::vector<double> mode_eigenvalues;
    double zero_mode_eigenvalue = 0.0;
};

GraphIprSummary graph_ipr_summary(const spectra::EigenDecomposition& d);

struct EnsembleIprStats {
    std::size_t n = 0;
    std::size_t z = 0;
    std::size_t graphs = 0;
    double mean_ipr = 0.0;
    /// Sample standard deviation of the per-graph mean IPR (0 for one graph).
    double std_ipr = 0.0;
    double mean_var = 0.0;
    double std_var = 0.0;
    /// 1 − ⟨mean_ipr⟩/μ1
    double delta1 = 0.0;
    /// 1 − ⟨variance⟩/μ2; NaN when μ2 = 0.
    double delta2 = 0.0;
};

EnsembleIprStats ensemble_stats(std::span<const GraphIprSummary> summaries, double mu1, double mu2);

struct IprHistogram {
    std::vector<double> edges;
    std::vector<double> masses;
    std::size_t graphs = 0;

    std::size_t bins() const noexcept { return masses.size(); }
    double center(std::size_t b) const { return 0.5 * (edges[b] + edges[b + 1]); }
    double width(std::size_t b) const { return edges[b + 1] - edges[b]; }
};

inline constexpr std::size_t kDefaultIprBins = 50;
inline constexpr double kDefaultIprMin = 1.0;
inline constexpr double kDefaultIprMax = 6.0;

/// Each graph's mode IPRs are histogrammed and normalized by that graph's
/// mode count first; the normalized histograms are then averaged. Values
/// outside [lo, hi] are dropped; a value equal to hi lands in the last bin.
IprHistogram ipr_histogram(std::span<const GraphIprSummary> summaries, std::size_t bins = kDefaultIprBins,
                           double lo = kDefaultIprMin, double hi = kDefaultIprMax);

/// Third standardized moment of the binned distribution (bin centers weighted by mass).
double histogram_skewness(const IprHistogram& h);

struct GaussianFit {
    double amplitude = 0.0;
    double mean = 0.0;
    double sigma = 0.0;
    /// Σ (density − model)² over bins.
    double rss = 0.0;
};

/// Levenberg-Marquardt fit of A·N(x; μ, σ) to the bin densities mass/width
/// at the bin centers. Throws FitError with fewer than three non-empty bins.
GaussianFit gaussian_fit(const IprHistogram& h);

/// n!/(m!·m!·(n−2m)!), requires 1 ≤ m ≤ ⌊n/2⌋.
mpz_class localized_candidate_count(std::size_t n, std::size_t m);

struct LocalizedMode {
    std::size_t mode_index = 0;
    double eigenvalue = 0.0;
    double ipr = 0.0;
    /// Components with |x_i| > support_tol.
    std::size_t support = 0;
    /// All support components equal 1/√k in magnitude within support_tol.
    bool equal_magnitude = false;
    /// Equal numbers of positive and negative support components.
    bool balanced = false;
    /// equal_magnitude, 2 ≤ k ≤ n/2 and |IPR − n/k| ≤ ipr_tol.
    bool localized = false;
};

/// Support analysis of one vector.
LocalizedMode classify_vector(std::span<const double> x, double support_tol, double ipr_tol);

struct LocalizedModeReport {
    std::size_t n = 0;
    double support_tol = 0.0;
    double ipr_tol = 0.0;
    /// Non-zero modes with an equal-magnitude support of size k < n.
    std::vector<LocalizedMode> modes;
    /// (m, n!/(m!m!(n−2m)!)) for m = 1..⌊n/2⌋.
    std::vector<std::pair<std::size_t, mpz_class>> candidate_counts;

    std::size_t localized_count() const;
};

inline constexpr double kDefaultSupportTol = 1e-6;
inline constexpr double kDefaultLocalizedIprTol = 1e-8;

LocalizedModeReport detect_localized(const spectra::EigenDecomposition& d, double support_tol = kDefaultSupportTol,
                                     double ipr_tol = kDefaultLocalizedIprTol);

}  // namespace rrg::iprstats
