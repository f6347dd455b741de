#include "citesim/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <stdexcept>

#include "citesim/simplex.hpp"
#include "citesim/stats.hpp"

namespace citesim {

namespace {

void require_positive(std::span<const double> sample, const char* who) {
    for (const double v : sample) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string(who) +
                                        ": sample values must be positive and finite");
        }
    }
}

}  // namespace

double negative_log_likelihood(std::span<const double> sample, const LogLogisticParams& p) {
    require_positive(sample, "negative_log_likelihood");
    long double total = 0.0L;
    for (const double x : sample) total -= loglogistic_log_pdf(x, p);
    return static_cast<double>(total);
}

LogLogisticParams initial_params(std::span<const double> sample) {
    if (sample.size() < 2) throw std::invalid_argument("initial_params: need at least two values");
    require_positive(sample, "initial_params");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double q25 = quantile_sorted(sorted, 0.25, QuantileMethod::Weibull);
    const double q50 = quantile_sorted(sorted, 0.50, QuantileMethod::Weibull);
    const double q75 = quantile_sorted(sorted, 0.75, QuantileMethod::Weibull);
    // For the log-logistic q75 / q25 = 9^(1/alpha).
    const double log_iqr = std::log(q75 / q25);
    if (!(log_iqr > 0.0)) {
        throw std::invalid_argument("initial_params: sample has zero interquartile spread");
    }
    return {std::log(9.0) / log_iqr, q50};
}

double ks_distance_to_loglogistic(std::span<const double> sample, const LogLogisticParams& p) {
    if (sample.empty()) throw std::invalid_argument("ks_distance_to_loglogistic: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = loglogistic_cdf(sorted[i], p);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

FitResult fit_loglogistic(std::span<const double> sample, const FitOptions& options) {
    if (sample.size() < 10) {
        throw std::invalid_argument("fit_loglogistic: need at least ten values");
    }
    require_positive(sample, "fit_loglogistic");

    FitResult result;
    result.start = initial_params(sample);

    auto objective = [&](const Point<2>& z) {
        const double alpha = std::exp(z[0]);
        const double beta = std::exp(z[1]);
        if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha <= 0.0 || beta <= 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        return negative_log_likelihood(sample, LogLogisticParams(alpha, beta));
    };

    SimplexOptions opt;
    opt.f_tolerance = options.tolerance;
    opt.max_iterations = options.max_iterations;
    const Point<2> start{std::log(result.start.alpha()), std::log(result.start.beta())};
    const auto best = nelder_mead<2>(objective, start, opt);

    result.params = LogLogisticParams(std::exp(best.x[0]), std::exp(best.x[1]));
    result.log_likelihood = -best.f;
    result.iterations = best.iterations;
    result.converged = best.converged;
    result.ks_against_fit = ks_distance_to_loglogistic(sample, result.params);
    return result;
}

std::vector<CurvePoint> fitted_density_curve(const LogLogisticParams& p,
                                             std::span<const double> grid, double scale) {
    std::vector<CurvePoint> out;
    out.reserve(grid.size());
    for (const double x : grid) {
        if (!(x >= 0.0)) throw std::domain_error("fitted_density_curve: negative grid point");
        out.push_back({x, scale * loglogistic_pdf(x, p)});
    }
    return out;
}

}  // namespace citesim
