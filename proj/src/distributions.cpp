#include "citesim/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace citesim {

namespace {

// B_{2j} / (2j)! for j = 1..7.
constexpr double kBernoulliOverFactorial[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
};

constexpr int kZetaHead = 32;

// log(1 + e^t) without overflow.
double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

}  // namespace

double riemann_zeta(double s) {
    if (!(s > 1.0 + 1e-9)) {
        throw std::domain_error("riemann_zeta: series diverges for s <= 1");
    }
    // Head sum over k < N, then the tail from N onward by Euler-Maclaurin: the
    // integral N^(1-s)/(s-1), the half end term, and Bernoulli corrections.
    const double n = kZetaHead;
    double head = 0.0;
    for (int k = kZetaHead - 1; k >= 1; --k) {
        head += std::pow(static_cast<double>(k), -s);
    }
    const double n_pow = std::pow(n, -s);
    double tail = n * n_pow / (s - 1.0) + 0.5 * n_pow;
    // rising = s (s+1) ... (s+2j-2), power = N^(-s-2j+1)
    double rising = s;
    double power = n_pow / n;
    for (int j = 0; j < 7; ++j) {
        const double term = kBernoulliOverFactorial[j] * rising * power;
        tail += term;
        if (std::abs(term) < 1e-17 * tail) break;
        rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
        power /= n * n;
    }
    return head + tail;
}

double zeta_theoretical_mean(double gamma) {
    if (!(gamma > 2.0)) {
        throw std::domain_error("zeta_theoretical_mean: mean is infinite for gamma <= 2");
    }
    return riemann_zeta(gamma - 1.0) / riemann_zeta(gamma);
}

// ---------------------------------------------------------------------------

TruncatedZeta::TruncatedZeta(double gamma, std::int64_t k_max) : gamma_(gamma), k_max_(k_max) {
    if (!(gamma > 1.0)) {
        throw std::domain_error("TruncatedZeta: gamma must exceed 1");
    }
    if (k_max < 1) {
        throw std::domain_error("TruncatedZeta: k_max must be at least 1");
    }
    zeta_ = riemann_zeta(gamma);

    const auto size = static_cast<std::size_t>(k_max);
    pmf_.resize(size);
    // Sum from the small terms upward to limit rounding.
    double partial = 0.0;
    for (std::int64_t k = k_max; k >= 1; --k) {
        const double w = std::pow(static_cast<double>(k), -gamma);
        pmf_[static_cast<std::size_t>(k - 1)] = w;
        partial += w;
    }
    normalizer_ = zeta_ / partial;

    cum_.resize(size);
    double running = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        pmf_[i] /= partial;
        running += pmf_[i];
        cum_[i] = running;
    }
    for (std::size_t i = size; i-- > 0;) {
        mean += static_cast<double>(i + 1) * pmf_[i];
    }
    cum_.back() = 1.0;
    mean_ = mean;
}

double TruncatedZeta::pmf(std::int64_t k) const noexcept {
    if (k < 1 || k > k_max_) return 0.0;
    return pmf_[static_cast<std::size_t>(k - 1)];
}

double TruncatedZeta::cdf(std::int64_t k) const noexcept {
    if (k < 1) return 0.0;
    if (k >= k_max_) return 1.0;
    return cum_[static_cast<std::size_t>(k - 1)];
}

std::int64_t TruncatedZeta::sample(double u) const noexcept {
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    if (it == cum_.end()) return k_max_;
    return static_cast<std::int64_t>(it - cum_.begin()) + 1;
}

// ---------------------------------------------------------------------------

EmpiricalDiscrete::EmpiricalDiscrete(std::span<const ValueCount> rows) {
    if (rows.empty()) {
        throw std::invalid_argument("EmpiricalDiscrete: no rows");
    }
    std::vector<ValueCount> sorted(rows.begin(), rows.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const ValueCount& a, const ValueCount& b) { return a.value < b.value; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& row = sorted[i];
        if (row.value < 0) {
            throw std::invalid_argument("EmpiricalDiscrete: negative value " +
                                        std::to_string(row.value));
        }
        if (row.count < 1) {
            throw std::invalid_argument("EmpiricalDiscrete: count for value " +
                                        std::to_string(row.value) + " must be positive");
        }
        if (i > 0 && sorted[i - 1].value == row.value) {
            throw std::invalid_argument("EmpiricalDiscrete: duplicate value " +
                                        std::to_string(row.value));
        }
        values_.push_back(row.value);
        counts_.push_back(row.count);
        total_ += row.count;
    }

    const auto total = static_cast<double>(total_);
    probs_.reserve(values_.size());
    cum_.reserve(values_.size());
    std::int64_t running = 0;
    long double weighted = 0.0L;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        probs_.push_back(static_cast<double>(counts_[i]) / total);
        running += counts_[i];
        // Cumulative counts are exact integers, so cum ends at exactly 1.
        cum_.push_back(static_cast<double>(running) / total);
        weighted += static_cast<long double>(values_[i]) * static_cast<long double>(counts_[i]);
    }
    mean_ = static_cast<double>(weighted / static_cast<long double>(total_));
}

double EmpiricalDiscrete::prob(std::int64_t value) const noexcept {
    const auto it = std::lower_bound(values_.begin(), values_.end(), value);
    if (it == values_.end() || *it != value) return 0.0;
    return probs_[static_cast<std::size_t>(it - values_.begin())];
}

std::int64_t EmpiricalDiscrete::sample(double u) const noexcept {
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    if (it == cum_.end()) return values_.back();
    return values_[static_cast<std::size_t>(it - cum_.begin())];
}

// ---------------------------------------------------------------------------

LogLogisticParams::LogLogisticParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::domain_error("LogLogisticParams: alpha must be positive and finite");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::domain_error("LogLogisticParams: beta must be positive and finite");
    }
}

double loglogistic_log_pdf(double x, const LogLogisticParams& p) {
    if (!(x >= 0.0)) {
        throw std::domain_error("loglogistic_pdf: x must be nonnegative");
    }
    const double a = p.alpha();
    const double b = p.beta();
    if (x == 0.0) {
        if (a < 1.0) return std::numeric_limits<double>::infinity();
        if (a == 1.0) return -std::log(b);
        return -std::numeric_limits<double>::infinity();
    }
    const double log_ratio = std::log(x / b);
    return std::log(a / b) + (a - 1.0) * log_ratio - 2.0 * softplus(a * log_ratio);
}

double loglogistic_pdf(double x, const LogLogisticParams& p) {
    return std::exp(loglogistic_log_pdf(x, p));
}

double loglogistic_cdf(double x, const LogLogisticParams& p) {
    if (!(x >= 0.0)) {
        throw std::domain_error("loglogistic_cdf: x must be nonnegative");
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    // t / (1 + t) with t = (x/beta)^alpha, written as a logistic in log space.
    const double z = p.alpha() * std::log(x / p.beta());
    return 1.0 / (1.0 + std::exp(-z));
}

double loglogistic_quantile(double q, const LogLogisticParams& p) {
    if (!(q >= 0.0 && q < 1.0)) {
        throw std::domain_error("loglogistic_quantile: q must lie in [0, 1)");
    }
    if (q == 0.0) return 0.0;
    return p.beta() * std::exp((std::log(q) - std::log1p(-q)) / p.alpha());
}

double loglogistic_mean(const LogLogisticParams& p) {
    if (!(p.alpha() > 1.0)) {
        throw std::domain_error("loglogistic_mean: mean is infinite for alpha <= 1");
    }
    const double theta = std::numbers::pi / p.alpha();
    return theta * p.beta() / std::sin(theta);
}

LogisticForm to_logistic_form(const LogLogisticParams& p) {
    return {std::log(p.beta()), 1.0 / p.alpha()};
}

LogLogisticParams from_logistic_form(const LogisticForm& f) {
    return {1.0 / f.scale, std::exp(f.location)};
}

// ---------------------------------------------------------------------------

ParetoRatioParams::ParetoRatioParams(double k1, double k2) : k1_(k1), k2_(k2) {
    if (!(k1 > 0.0) || !(k2 > 0.0)) {
        throw std::domain_error("ParetoRatioParams: scales must be positive");
    }
}

double pareto_ratio_cdf(double x, const ParetoRatioParams& p) {
    if (!(x >= 0.0)) {
        throw std::domain_error("pareto_ratio_cdf: x must be nonnegative");
    }
    return 1.0 - p.k1() / (x * p.k2() + p.k1());
}

}  // namespace citesim
