#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace citesim {

/// Riemann zeta function for real s > 1, absolute error below 1e-10.
/// Throws std::domain_error when s <= 1 + 1e-9.
double riemann_zeta(double s);

/// Mean of the untruncated zeta law, zeta(s-1)/zeta(s). Requires s > 2.
double zeta_theoretical_mean(double gamma);

/**
 * Zeta (discrete Pareto) law on k = 1..k_max, p(k) proportional to k^-gamma.
 *
 * The normalizing constant is the reciprocal of the truncated partial sum, so
 * the cumulative table ends at exactly 1. Immutable after construction.
 */
class TruncatedZeta {
public:
    TruncatedZeta(double gamma, std::int64_t k_max);

    double gamma() const noexcept { return gamma_; }
    std::int64_t k_max() const noexcept { return k_max_; }
    double zeta() const noexcept { return zeta_; }
    /// Truncation constant C multiplying k^-gamma / zeta(gamma).
    double normalizer() const noexcept { return normalizer_; }

    /// Probability of k; zero outside 1..k_max.
    double pmf(std::int64_t k) const noexcept;
    /// P(K <= k).
    double cdf(std::int64_t k) const noexcept;
    double mean() const noexcept { return mean_; }

    std::span<const double> pmf_table() const noexcept { return pmf_; }
    std::span<const double> cum_table() const noexcept { return cum_; }

    /// Inverse-cdf lookup: the smallest k with cdf(k) > u. u in [0, 1).
    std::int64_t sample(double u) const noexcept;

private:
    double gamma_;
    std::int64_t k_max_;
    double zeta_ = 0.0;
    double normalizer_ = 0.0;
    double mean_ = 0.0;
    std::vector<double> pmf_;  // index k-1
    std::vector<double> cum_;  // index k-1
};

/// One (value, count) row of a frequency table.
struct ValueCount {
    std::int64_t value;
    std::int64_t count;
};

/**
 * Discrete law estimated from a frequency table: P(v) = count(v) / total.
 * Values are nonnegative and may include 0.
 */
class EmpiricalDiscrete {
public:
    /// Rows may arrive in any order. Throws std::invalid_argument on empty
    /// input, a duplicate value, a negative value or a count below 1.
    explicit EmpiricalDiscrete(std::span<const ValueCount> rows);

    std::span<const std::int64_t> values() const noexcept { return values_; }
    std::span<const std::int64_t> counts() const noexcept { return counts_; }
    std::span<const double> probs() const noexcept { return probs_; }
    std::span<const double> cum() const noexcept { return cum_; }
    std::int64_t total() const noexcept { return total_; }
    double mean() const noexcept { return mean_; }

    /// Probability of `value`; zero when it is not in the table.
    double prob(std::int64_t value) const noexcept;

    std::int64_t sample(double u) const noexcept;

private:
    std::vector<std::int64_t> values_;
    std::vector<std::int64_t> counts_;
    std::vector<double> probs_;
    std::vector<double> cum_;
    std::int64_t total_ = 0;
    double mean_ = 0.0;
};

/// Log-logistic law with shape alpha and scale beta (the median).
class LogLogisticParams {
public:
    LogLogisticParams(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    friend bool operator==(const LogLogisticParams&, const LogLogisticParams&) = default;

private:
    double alpha_;
    double beta_;
};

/// Location/scale of the logistic law followed by log(X).
struct LogisticForm {
    double location;  // log(beta)
    double scale;     // 1 / alpha
};

double loglogistic_pdf(double x, const LogLogisticParams& p);
double loglogistic_log_pdf(double x, const LogLogisticParams& p);
double loglogistic_cdf(double x, const LogLogisticParams& p);
/// Inverse cdf for q in [0, 1).
double loglogistic_quantile(double q, const LogLogisticParams& p);
/// (pi/alpha) * beta / sin(pi/alpha). Throws std::domain_error for alpha <= 1.
double loglogistic_mean(const LogLogisticParams& p);

LogisticForm to_logistic_form(const LogLogisticParams& p);
LogLogisticParams from_logistic_form(const LogisticForm& f);

/// Scales of the correlated bivariate Pareto pair whose ratio X/Y is studied.
class ParetoRatioParams {
public:
    ParetoRatioParams(double k1, double k2);

    double k1() const noexcept { return k1_; }
    double k2() const noexcept { return k2_; }

private:
    double k1_;
    double k2_;
};

/// cdf of X/Y: 1 - k1 / (x k2 + k1). A log-logistic law with alpha = 1,
/// beta = k1 / k2.
double pareto_ratio_cdf(double x, const ParetoRatioParams& p);

}  // namespace citesim
