#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace citesim {

enum class QuantileMethod {
    /// Linear interpolation at position (n-1)p. R type 7.
    Linear,
    /// Linear interpolation at position (n+1)p, clamped to the ends. R type 6.
    Weibull,
};

/// Quantile of an ascending-sorted, nonempty sample.
double quantile_sorted(std::span<const double> sorted, double p,
                       QuantileMethod method = QuantileMethod::Linear);

struct BootstrapConfig {
    std::int64_t resamples = 500;
    double confidence = 0.95;
    std::uint64_t seed = 0;
};

struct IntervalEstimate {
    double lower = 0.0;
    double upper = 0.0;
    double point = 0.0;
    double confidence = 0.0;

    double half_width() const noexcept { return 0.5 * (upper - lower); }
    bool contains(double v) const noexcept { return lower <= v && v <= upper; }
};

/// A paired observation, e.g. the AoR and RoA of one replication.
struct PairedValue {
    double first;
    double second;
};

/**
 * Percentile bootstrap interval for mean(first) - mean(second).
 *
 * Pairs are resampled jointly with replacement. The bounds are the
 * (1 -/+ confidence)/2 linear quantiles of the resampled differences; the
 * point estimate is the full-sample difference. Throws for fewer than two
 * pairs or an invalid config.
 */
IntervalEstimate bootstrap_mean_diff_ci(std::span<const PairedValue> pairs,
                                        const BootstrapConfig& cfg);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
};

/// sup |F1 - F2| over the pooled sample, tie-aware.
double ks_statistic(std::span<const double> x, std::span<const double> y);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

/// Two-sample KS test with the asymptotic p-value
/// Q((sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D), ne = n1 n2 / (n1 + n2).
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

/// Exact permutation p-value P(D' >= D) conditional on the pooled values,
/// ties included. Requires n1 * n2 <= 10^4.
double ks_exact_p_value(std::span<const double> x, std::span<const double> y);

/// Right-continuous step function. heights[i] is F at points[i].
struct Ecdf {
    std::vector<double> points;
    std::vector<double> heights;

    double operator()(double x) const noexcept;
};

Ecdf ecdf(std::span<const double> sample);

struct HistogramBin {
    double left;
    double right;
    std::int64_t count;
};

/// Equal-width bins over [min, max]; the last bin is closed. A constant
/// sample yields a single bin of zero width.
std::vector<HistogramBin> histogram(std::span<const double> sample, std::int64_t bin_count);

struct Summary {
    double mean = 0.0;
    /// Unbiased (n-1) variance; empty for a single observation.
    std::optional<double> variance;
    double min = 0.0;
    double max = 0.0;
    std::int64_t n = 0;
};

Summary summarize(std::span<const double> sample);

/// Pearson correlation; empty when either sample variance is zero.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

}  // namespace citesim
