#include "citesim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "citesim/random.hpp"

namespace citesim {

double quantile_sorted(std::span<const double> sorted, double p, QuantileMethod method) {
    if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile_sorted: p outside [0, 1]");
    const auto n = static_cast<double>(sorted.size());
    // Zero-based fractional position.
    double h = method == QuantileMethod::Linear ? (n - 1.0) * p : (n + 1.0) * p - 1.0;
    h = std::clamp(h, 0.0, n - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    if (frac == 0.0 || lo + 1 >= sorted.size()) return sorted[lo];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

IntervalEstimate bootstrap_mean_diff_ci(std::span<const PairedValue> pairs,
                                        const BootstrapConfig& cfg) {
    if (pairs.size() < 2) {
        throw std::invalid_argument("bootstrap_mean_diff_ci: need at least two pairs");
    }
    if (cfg.resamples < 1) {
        throw std::invalid_argument("bootstrap_mean_diff_ci: resamples must be at least 1");
    }
    if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0)) {
        throw std::invalid_argument("bootstrap_mean_diff_ci: confidence must lie in (0, 1)");
    }

    const std::size_t n = pairs.size();
    std::vector<double> diffs(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diffs[i] = pairs[i].first - pairs[i].second;
        total += diffs[i];
    }

    Xoshiro256 rng(cfg.seed);
    std::vector<double> stats(static_cast<std::size_t>(cfg.resamples));
    for (auto& s : stats) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += diffs[rng.below(n)];
        s = sum / static_cast<double>(n);
    }
    std::sort(stats.begin(), stats.end());

    const double tail = 0.5 * (1.0 - cfg.confidence);
    IntervalEstimate est;
    est.point = total / static_cast<double>(n);
    est.lower = quantile_sorted(stats, tail);
    est.upper = quantile_sorted(stats, 1.0 - tail);
    est.confidence = cfg.confidence;
    return est;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> sorted_copy(std::span<const double> v) {
    std::vector<double> out(v.begin(), v.end());
    std::sort(out.begin(), out.end());
    return out;
}

double ks_statistic_sorted(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n1 = static_cast<double>(x.size());
    const auto n2 = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }
    // Once one sample is exhausted its ecdf is 1 and the gap only shrinks.
    return d;
}

}  // namespace

double ks_statistic(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    return ks_statistic_sorted(sorted_copy(x), sorted_copy(y));
}

double kolmogorov_survival(double lambda) {
    if (!(lambda > 0.0)) return 1.0;
    if (lambda < 1.18) {
        // Dual theta series for the cdf converges fast for small lambda.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double cdf = 0.0;
        for (int k = 1; k < 100; ++k) {
            const double odd = 2.0 * k - 1.0;
            const double term = std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
            cdf += term;
            if (term < 1e-16 * cdf || term == 0.0) break;
        }
        cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j < 200; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    KsResult r;
    r.n1 = static_cast<std::int64_t>(x.size());
    r.n2 = static_cast<std::int64_t>(y.size());
    r.statistic = ks_statistic(x, y);
    const double ne = static_cast<double>(r.n1) * static_cast<double>(r.n2) /
                      static_cast<double>(r.n1 + r.n2);
    const double root = std::sqrt(ne);
    r.p_value = kolmogorov_survival((root + 0.12 + 0.11 / root) * r.statistic);
    return r;
}

double ks_exact_p_value(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("ks_exact_p_value: empty sample");
    const std::size_t n1 = x.size();
    const std::size_t n2 = y.size();
    if (n1 * n2 > 10000) {
        throw std::invalid_argument("ks_exact_p_value: n1 * n2 exceeds 10^4");
    }
    const auto xs = sorted_copy(x);
    const auto ys = sorted_copy(y);
    const double d = ks_statistic_sorted(xs, ys);
    if (d == 0.0) return 1.0;

    // Positions (count of pooled values consumed) at which the ecdfs are
    // compared: the end of each run of tied pooled values.
    std::vector<double> pooled(xs);
    pooled.insert(pooled.end(), ys.begin(), ys.end());
    std::sort(pooled.begin(), pooled.end());
    std::vector<char> checkpoint(pooled.size() + 1, 0);
    for (std::size_t k = 1; k <= pooled.size(); ++k) {
        if (k == pooled.size() || pooled[k] != pooled[k - 1]) checkpoint[k] = 1;
    }

    // Random labelling of the pooled positions is a hypergeometric walk on
    // the (i, j) lattice; track the probability of never reaching the gap d.
    const double threshold = d - 1e-12;
    std::vector<double> row(n2 + 1, 0.0);
    std::vector<double> prev(n2 + 1, 0.0);
    const double dn1 = static_cast<double>(n1);
    const double dn2 = static_cast<double>(n2);
    for (std::size_t i = 0; i <= n1; ++i) {
        for (std::size_t j = 0; j <= n2; ++j) {
            double p = 0.0;
            if (i == 0 && j == 0) {
                p = 1.0;
            } else {
                const double remaining_from_left = static_cast<double>(n1 + n2 - (i - 1) - j);
                const double remaining_from_down = static_cast<double>(n1 + n2 - i - (j - 1));
                if (i > 0) p += prev[j] * static_cast<double>(n1 - (i - 1)) / remaining_from_left;
                if (j > 0) p += row[j - 1] * static_cast<double>(n2 - (j - 1)) / remaining_from_down;
            }
            if (checkpoint[i + j] &&
                std::abs(static_cast<double>(i) / dn1 - static_cast<double>(j) / dn2) >= threshold) {
                p = 0.0;
            }
            row[j] = p;
        }
        std::swap(row, prev);
    }
    return std::clamp(1.0 - prev[n2], 0.0, 1.0);
}

// ---------------------------------------------------------------------------

double Ecdf::operator()(double x) const noexcept {
    const auto it = std::upper_bound(points.begin(), points.end(), x);
    if (it == points.begin()) return 0.0;
    return heights[static_cast<std::size_t>(it - points.begin()) - 1];
}

Ecdf ecdf(std::span<const double> sample) {
    if (sample.empty()) throw std::invalid_argument("ecdf: empty sample");
    const auto sorted = sorted_copy(sample);
    const auto n = static_cast<double>(sorted.size());
    Ecdf f;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        f.points.push_back(sorted[i]);
        f.heights.push_back(static_cast<double>(i + 1) / n);
    }
    f.heights.back() = 1.0;
    return f;
}

std::vector<HistogramBin> histogram(std::span<const double> sample, std::int64_t bin_count) {
    if (sample.empty()) throw std::invalid_argument("histogram: empty sample");
    if (bin_count < 1) throw std::invalid_argument("histogram: bin_count must be at least 1");
    const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) {
        return {{lo, hi, static_cast<std::int64_t>(sample.size())}};
    }
    const double width = (hi - lo) / static_cast<double>(bin_count);
    std::vector<HistogramBin> bins(static_cast<std::size_t>(bin_count));
    for (std::size_t b = 0; b < bins.size(); ++b) {
        bins[b].left = lo + width * static_cast<double>(b);
        bins[b].right = b + 1 == bins.size() ? hi : lo + width * static_cast<double>(b + 1);
        bins[b].count = 0;
    }
    for (const double v : sample) {
        auto b = static_cast<std::int64_t>(std::floor((v - lo) / width));
        b = std::clamp<std::int64_t>(b, 0, bin_count - 1);
        // Keep membership consistent with the stored edges.
        while (b > 0 && v < bins[static_cast<std::size_t>(b)].left) --b;
        while (b + 1 < bin_count && v >= bins[static_cast<std::size_t>(b + 1)].left) ++b;
        ++bins[static_cast<std::size_t>(b)].count;
    }
    return bins;
}

Summary summarize(std::span<const double> sample) {
    if (sample.empty()) throw std::invalid_argument("summarize: empty sample");
    Summary s;
    s.n = static_cast<std::int64_t>(sample.size());
    const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
    s.min = *lo;
    s.max = *hi;
    double sum = 0.0;
    for (const double v : sample) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (const double v : sample) ss += (v - s.mean) * (v - s.mean);
        s.variance = ss / static_cast<double>(s.n - 1);
    }
    return s;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson: need at least two points");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace citesim
