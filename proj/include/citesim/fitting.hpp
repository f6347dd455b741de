#pragma once

#include <span>
#include <vector>

#include "citesim/distributions.hpp"

namespace citesim {

/// -sum log f(x_i) under the log-logistic density, evaluated in log space.
/// Throws std::invalid_argument if any value is not strictly positive.
double negative_log_likelihood(std::span<const double> sample, const LogLogisticParams& p);

/// Quartile-based start: beta = median, alpha = log 9 / log(q75 / q25).
/// Quartiles use the (n+1)p convention. Throws for fewer than two points,
/// a nonpositive value or a zero interquartile ratio.
LogLogisticParams initial_params(std::span<const double> sample);

struct FitOptions {
    double tolerance = 1e-8;
    int max_iterations = 2000;
};

struct FitResult {
    LogLogisticParams params{1.0, 1.0};
    LogLogisticParams start{1.0, 1.0};
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
    /// sup |ecdf - fitted cdf|. Descriptive only: the parameters come from
    /// the same data, so no p-value is attached.
    double ks_against_fit = 0.0;
};

/**
 * Maximum-likelihood log-logistic fit.
 *
 * Minimizes the negative log-likelihood over (log alpha, log beta) with a
 * Nelder-Mead simplex started from initial_params(). Requires at least ten
 * strictly positive values. Running out of iterations is not an error: the
 * best point found is returned with converged == false.
 */
FitResult fit_loglogistic(std::span<const double> sample, const FitOptions& options = {});

/// One-sample sup |ecdf - F| against a log-logistic cdf.
double ks_distance_to_loglogistic(std::span<const double> sample, const LogLogisticParams& p);

struct CurvePoint {
    double x;
    double density;
};

/// Density on `grid`, multiplied by `scale` (sample size times bin width to
/// overlay a count histogram).
std::vector<CurvePoint> fitted_density_curve(const LogLogisticParams& p,
                                             std::span<const double> grid, double scale = 1.0);

}  // namespace citesim
