#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "citesim/distributions.hpp"
#include "citesim/random.hpp"

using namespace citesim;

namespace {

// Partial sum to k0 plus the midpoint of the integral bracket for the tail.
double zeta_oracle(double s, long k0) {
    double sum = 0.0;
    for (long k = k0; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    const double lower = std::pow(static_cast<double>(k0 + 1), 1.0 - s) / (s - 1.0);
    const double upper = std::pow(static_cast<double>(k0), 1.0 - s) / (s - 1.0);
    return sum + 0.5 * (lower + upper);
}

double simpson(auto&& f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("riemann_zeta closed forms and domain") {
    CHECK(riemann_zeta(2.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-12));
    CHECK(std::abs(riemann_zeta(2.0) - 1.6449340668) < 1e-9);
    CHECK(std::abs(riemann_zeta(4.0) - std::pow(std::numbers::pi, 4) / 90.0) < 1e-12);
    CHECK_THROWS_AS(riemann_zeta(1.0), std::domain_error);
    CHECK_THROWS_AS(riemann_zeta(0.5), std::domain_error);
    CHECK_THROWS_AS(riemann_zeta(1.0 + 1e-10), std::domain_error);
}

TEST_CASE("riemann_zeta matches brute-force partial sums") {
    // Bracket width is about k0^-s; k0 = 1e6 keeps it below 1e-12 for s >= 2.
    const double z3 = zeta_oracle(3.0, 1'000'000);
    CHECK(std::abs(z3 - 1.2020569032) < 1e-9);
    CHECK(std::abs(riemann_zeta(3.0) - z3) < 1e-10);
    for (double s : {1.5, 2.5, 3.5, 4.5, 7.0, 12.0, 30.0}) {
        const long k0 = s < 2.0 ? 20'000'000 : 1'000'000;
        CAPTURE(s);
        CHECK(std::abs(riemann_zeta(s) - zeta_oracle(s, k0)) < 1e-10);
    }
}

TEST_CASE("riemann_zeta agrees with std::riemann_zeta near the pole") {
    for (double s : {1.001, 1.01, 1.1, 1.3, 60.0, 200.0}) {
        CAPTURE(s);
        CHECK(riemann_zeta(s) == doctest::Approx(std::riemann_zeta(s)).epsilon(1e-11));
    }
}

TEST_CASE("truncated zeta table") {
    SUBCASE("gamma 3, k_max 5000") {
        const TruncatedZeta law(3.0, 5000);
        double direct = 0.0;
        for (int j = 1; j <= 5000; ++j) direct += std::pow(static_cast<double>(j), -3.0);
        CHECK(law.pmf(1) == doctest::Approx(1.0 / direct).epsilon(1e-13));
        CHECK(std::abs(law.pmf(1) - 0.83190) < 1e-4);
        CHECK(std::abs(law.mean() - 1.3683) < 5e-4);
        // C = 1 / sum_j (j^-g / zeta(g))
        CHECK(law.normalizer() == doctest::Approx(riemann_zeta(3.0) / direct).epsilon(1e-13));
        CHECK(law.pmf(7) == doctest::Approx(law.normalizer() * std::pow(7.0, -3.0) / law.zeta()));
        CHECK(law.pmf(0) == 0.0);
        CHECK(law.pmf(5001) == 0.0);
    }
    SUBCASE("single point support") {
        const TruncatedZeta law(3.0, 1);
        CHECK(law.pmf(1) == 1.0);
        CHECK(law.sample(0.0) == 1);
        CHECK(law.sample(0.999999) == 1);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(TruncatedZeta(1.0, 10), std::domain_error);
        CHECK_THROWS_AS(TruncatedZeta(3.0, 0), std::domain_error);
    }
}

TEST_CASE("truncated zeta invariants across gammas") {
    for (double g : {1.2, 2.0, 2.5, 3.0, 3.5, 6.0}) {
        for (std::int64_t k_max : {1, 2, 50, 5000}) {
            CAPTURE(g);
            CAPTURE(k_max);
            const TruncatedZeta law(g, k_max);
            double total = 0.0;
            for (double p : law.pmf_table()) {
                CHECK(p >= 0.0);
                total += p;
            }
            CHECK(std::abs(total - 1.0) <= 1e-12);
            const auto pmf = law.pmf_table();
            for (std::size_t i = 1; i < pmf.size(); ++i) CHECK(pmf[i] < pmf[i - 1]);
            const auto cum = law.cum_table();
            for (std::size_t i = 1; i < cum.size(); ++i) CHECK(cum[i] >= cum[i - 1]);
            CHECK(cum.back() == 1.0);
        }
    }
}

TEST_CASE("truncated mean approximates the untruncated mean") {
    const TruncatedZeta law(3.0, 5000);
    const double theory = riemann_zeta(2.0) / riemann_zeta(3.0);
    CHECK(std::abs(law.mean() - theory) < 1e-3);
    CHECK(std::abs(zeta_theoretical_mean(3.0) - 1.3684) < 5e-4);
    CHECK(zeta_theoretical_mean(3.5) ==
          doctest::Approx(zeta_oracle(2.5, 1'000'000) / zeta_oracle(3.5, 1'000'000)).epsilon(1e-10));
    CHECK_THROWS_AS(zeta_theoretical_mean(2.0), std::domain_error);
}

TEST_CASE("truncated zeta inverse-cdf thresholds") {
    const TruncatedZeta law(3.0, 5000);
    const double c1 = law.cum_table()[0];
    CHECK(law.sample(0.0) == 1);
    CHECK(law.sample(std::nextafter(c1, 0.0)) == 1);
    CHECK(law.sample(c1) == 2);
    CHECK(law.sample(std::nextafter(c1, 1.0)) == 2);
    CHECK(law.sample(std::nextafter(1.0, 0.0)) <= 5000);
}

TEST_CASE("truncated zeta sampler frequencies") {
    const TruncatedZeta law(3.0, 5000);
    Xoshiro256 rng(12345);
    constexpr int draws = 1'000'000;
    // Cells 1..15 plus a pooled tail; every expected count exceeds 5.
    constexpr int cells = 16;
    std::vector<double> observed(cells, 0.0);
    for (int i = 0; i < draws; ++i) {
        const auto k = law.sample(rng.uniform());
        observed[static_cast<std::size_t>(std::min<std::int64_t>(k, cells) - 1)] += 1.0;
    }
    CHECK(std::abs(observed[0] / draws - 0.8319) < 0.002);

    double chi2 = 0.0;
    for (int c = 0; c < cells; ++c) {
        const double p = c + 1 < cells ? law.pmf(c + 1) : 1.0 - law.cdf(cells - 1);
        const double expected = p * draws;
        REQUIRE(expected > 5.0);
        chi2 += (observed[static_cast<std::size_t>(c)] - expected) *
                (observed[static_cast<std::size_t>(c)] - expected) / expected;
    }
    const boost::math::chi_squared dist(cells - 1);
    CHECK(chi2 < boost::math::quantile(dist, 0.999));
}

TEST_CASE("empirical law construction") {
    SUBCASE("single row") {
        const std::vector<ValueCount> rows{{1, 70836}};
        const EmpiricalDiscrete law(rows);
        CHECK(law.prob(1) == 1.0);
        CHECK(law.sample(0.0) == 1);
        CHECK(law.sample(0.75) == 1);
    }
    SUBCASE("one-citation share of a census") {
        const std::vector<ValueCount> rows{{0, 700000}, {1, 70836}, {2, 783339 - 700000 - 70836}};
        const EmpiricalDiscrete law(rows);
        CHECK(law.total() == 783339);
        CHECK(std::abs(law.prob(1) - 0.0904) < 1e-4);
        CHECK(law.prob(1) == 70836.0 / 783339.0);
    }
    SUBCASE("two-point law") {
        const std::vector<ValueCount> rows{{2, 1}, {0, 1}};
        const EmpiricalDiscrete law(rows);
        CHECK(law.mean() == 1.0);
        CHECK(law.values()[0] == 0);
        CHECK(law.sample(0.25) == 0);
        CHECK(law.sample(0.75) == 2);
        CHECK(law.cum().back() == 1.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(EmpiricalDiscrete(std::span<const ValueCount>{}), std::invalid_argument);
        const std::vector<ValueCount> dup{{1, 3}, {1, 4}};
        CHECK_THROWS_AS(EmpiricalDiscrete{dup}, std::invalid_argument);
        const std::vector<ValueCount> zero{{1, 0}};
        CHECK_THROWS_AS(EmpiricalDiscrete{zero}, std::invalid_argument);
        const std::vector<ValueCount> neg_count{{1, -2}};
        CHECK_THROWS_AS(EmpiricalDiscrete{neg_count}, std::invalid_argument);
        const std::vector<ValueCount> neg_value{{-1, 2}};
        CHECK_THROWS_AS(EmpiricalDiscrete{neg_value}, std::invalid_argument);
    }
}

TEST_CASE("empirical sampler frequencies") {
    const std::vector<ValueCount> rows{{0, 47}, {1, 9}, {3, 20}, {10, 15}, {250, 9}};
    const EmpiricalDiscrete law(rows);
    double sum = 0.0;
    for (double p : law.probs()) sum += p;
    CHECK(std::abs(sum - 1.0) < 1e-12);

    Xoshiro256 rng(99);
    constexpr int draws = 1'000'000;
    std::vector<int> hits(rows.size(), 0);
    for (int i = 0; i < draws; ++i) {
        const auto v = law.sample(rng.uniform());
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (law.values()[j] == v) ++hits[j];
        }
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
        CAPTURE(j);
        CHECK(std::abs(static_cast<double>(hits[j]) / draws - law.probs()[j]) < 0.002);
    }
}

TEST_CASE("log-logistic density") {
    const LogLogisticParams ref(4.7054, 7.8930);
    for (double a : {0.5, 1.0, 2.0, 4.7054}) {
        const LogLogisticParams p(a, 3.0);
        CHECK(loglogistic_pdf(3.0, p) == doctest::Approx(a / 12.0).epsilon(1e-14));
    }
    CHECK(loglogistic_pdf(0.0, LogLogisticParams(1.0, 1.0)) == 1.0);
    CHECK(loglogistic_pdf(0.0, LogLogisticParams(2.0, 1.0)) == 0.0);
    CHECK(std::abs(loglogistic_pdf(7.8930, ref) - 0.14902) < 1e-4);
    CHECK_THROWS_AS(loglogistic_pdf(-1.0, ref), std::domain_error);
    // Extreme ratios stay finite.
    CHECK(std::isfinite(loglogistic_log_pdf(1e300, LogLogisticParams(50.0, 1.0))));
    CHECK(loglogistic_pdf(1e-300, LogLogisticParams(50.0, 1.0)) == 0.0);
}

TEST_CASE("log-logistic cdf") {
    const LogLogisticParams ref(4.7054, 7.8930);
    CHECK(loglogistic_cdf(7.8930, ref) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(loglogistic_cdf(0.0, ref) == 0.0);
    CHECK(loglogistic_cdf(1e6, ref) == doctest::Approx(1.0));
    CHECK_THROWS_AS(loglogistic_cdf(-0.1, ref), std::domain_error);
    for (double q : {0.1, 0.5, 0.9}) {
        CHECK(std::abs(loglogistic_cdf(loglogistic_quantile(q, ref), ref) - q) < 1e-10);
    }
    double prev = 0.0;
    for (double x = 0.0; x < 100.0; x += 0.25) {
        const double f = loglogistic_cdf(x, ref);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("log-logistic cdf integrates the density") {
    for (double a : {1.0, 1.5, 3.0, 4.7054, 8.0}) {
        for (double b : {0.5, 7.893}) {
            for (double x_over_b : {0.3, 1.0, 2.5}) {
                const LogLogisticParams p(a, b);
                const double x = x_over_b * b;
                const double area =
                    simpson([&](double t) { return loglogistic_pdf(t, p); }, 0.0, x, 200'000);
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(x);
                CHECK(std::abs(area - loglogistic_cdf(x, p)) < 1e-6);
            }
        }
    }
}

TEST_CASE("log-logistic mean") {
    CHECK(loglogistic_mean(LogLogisticParams(2.0, 1.0)) ==
          doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(loglogistic_mean(LogLogisticParams(1.0, 3.0)), std::domain_error);
    CHECK_THROWS_AS(loglogistic_mean(LogLogisticParams(0.7, 3.0)), std::domain_error);

    // Monte Carlo oracle through the quantile transform.
    const LogLogisticParams ref(4.7054, 7.8930);
    Xoshiro256 rng(2024);
    constexpr int draws = 10'000'000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) sum += loglogistic_quantile(rng.uniform(), ref);
    const double mc = sum / draws;
    CHECK(std::abs(loglogistic_mean(ref) - mc) < 0.05);
    CHECK(std::abs(loglogistic_mean(ref) - 8.5114) < 1e-4);
}

TEST_CASE("pareto ratio cdf") {
    CHECK(pareto_ratio_cdf(0.0, ParetoRatioParams(2.0, 5.0)) == 0.0);
    CHECK(pareto_ratio_cdf(1.0, ParetoRatioParams(3.0, 3.0)) == 0.5);
    CHECK(pareto_ratio_cdf(4.0, ParetoRatioParams(2.0, 1.0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(pareto_ratio_cdf(-1.0, ParetoRatioParams(2.0, 1.0)), std::domain_error);
    CHECK_THROWS_AS(ParetoRatioParams(0.0, 1.0), std::domain_error);

    // Index-one generalized Pareto is the alpha = 1 log-logistic.
    for (double k1 : {0.1, 1.0, 2.0, 17.5}) {
        for (double k2 : {0.3, 1.0, 4.0}) {
            const ParetoRatioParams pr(k1, k2);
            const LogLogisticParams ll(1.0, k1 / k2);
            for (double x : {0.0, 0.01, 0.5, 1.0, 3.0, 100.0}) {
                CHECK(std::abs(pareto_ratio_cdf(x, pr) - loglogistic_cdf(x, ll)) < 1e-14);
            }
        }
    }
}

TEST_CASE("logistic parameterization") {
    const auto unit = to_logistic_form(LogLogisticParams(1.0, 1.0));
    CHECK(unit.location == 0.0);
    CHECK(unit.scale == 1.0);

    const LogLogisticParams ref(4.7054, 7.8930);
    const auto form = to_logistic_form(ref);
    CHECK(std::abs(form.location - 2.0660) < 1e-3);
    CHECK(std::abs(form.scale - 0.21252) < 1e-4);

    for (double a : {0.3, 1.0, 4.7054, 123.0}) {
        for (double b : {1e-3, 1.0, 7.893, 5e4}) {
            const auto back = from_logistic_form(to_logistic_form(LogLogisticParams(a, b)));
            CHECK(back.alpha() == doctest::Approx(a).epsilon(1e-12));
            CHECK(back.beta() == doctest::Approx(b).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(LogLogisticParams(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(LogLogisticParams(1.0, -1.0), std::domain_error);
}
