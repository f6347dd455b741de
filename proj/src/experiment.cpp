#include "citesim/experiment.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace citesim {

namespace {

constexpr std::uint64_t kBootstrapStream = 0xB007'57A9'0000'0001ULL;

template <class... Args>
std::string printf_string(const char* fmt, Args... args) {
    const int size = std::snprintf(nullptr, 0, fmt, args...);
    std::string out(static_cast<std::size_t>(size) + 1, '\0');
    std::snprintf(out.data(), out.size(), fmt, args...);
    out.pop_back();
    return out;
}

std::string fixed4(double v) { return printf_string("%.4f", v); }

std::string general(double v) { return printf_string("%.10g", v); }

}  // namespace

std::uint64_t cell_seed(std::uint64_t master, double gamma, std::int64_t n) {
    return derive_seed(derive_seed(master, std::bit_cast<std::uint64_t>(gamma)),
                       static_cast<std::uint64_t>(n));
}

std::optional<LogLogisticFit> fit_positive(std::span<const double> values) {
    std::vector<double> positive;
    positive.reserve(values.size());
    for (const double v : values) {
        if (v > 0.0) positive.push_back(v);
    }
    if (positive.size() < 10) return std::nullopt;
    LogLogisticFit fit{fit_loglogistic(positive),
                       static_cast<std::int64_t>(values.size() - positive.size())};
    return fit;
}

CellResult run_cell(const SweepConfig& cfg, double gamma, std::int64_t n,
                    const EmpiricalDiscrete& citations) {
    ExperimentConfig ec;
    ec.gamma = gamma;
    ec.n_researchers = n;
    ec.k_max = cfg.truncation;
    ec.m_replications = cfg.replications;
    ec.master_seed = cell_seed(cfg.seed, gamma, n);

    CellResult cell;
    cell.replications = run_replications(ec, citations, cfg.threads);

    const auto aor = cell.replications.aor_values();
    const auto roa = cell.replications.roa_values();

    auto& s = cell.summary;
    s.gamma = gamma;
    s.n = n;
    s.mean_aor = summarize(aor).mean;
    s.mean_roa = summarize(roa).mean;
    s.ks = ks_two_sample(aor, roa);
    for (std::size_t j = 0; j < aor.size(); ++j) {
        if (aor[j] > roa[j]) ++s.aor_exceeds_roa;
    }
    if (aor.size() >= 2) {
        std::vector<PairedValue> pairs(aor.size());
        for (std::size_t j = 0; j < aor.size(); ++j) pairs[j] = {aor[j], roa[j]};
        BootstrapConfig bc;
        bc.resamples = cfg.bootstrap_resamples;
        bc.confidence = cfg.confidence;
        bc.seed = derive_seed(ec.master_seed, kBootstrapStream);
        s.ci = bootstrap_mean_diff_ci(pairs, bc);
    } else {
        const double d = s.mean_aor - s.mean_roa;
        s.ci = {d, d, d, cfg.confidence};
    }

    if (cfg.correlation_table) {
        const auto corr = cell.replications.correlations();
        if (!corr.empty()) cell.correlation = summarize(corr);
    }
    if (cfg.fit_loglogistic || cfg.emit_figures) {
        cell.fit_aor = fit_positive(aor);
        cell.fit_roa = fit_positive(roa);
    }
    return cell;
}

std::vector<CellResult> run_sweep(const SweepConfig& cfg, const EmpiricalDiscrete& citations) {
    std::vector<CellResult> cells;
    cells.reserve(cfg.gammas.size() * cfg.ns.size());
    for (const double gamma : cfg.gammas) {
        for (const std::int64_t n : cfg.ns) cells.push_back(run_cell(cfg, gamma, n, citations));
    }
    return cells;
}

std::string format_summary_table(const std::vector<CellResult>& cells) {
    std::string out =
        "gamma\tn\tmean_aor\tmean_roa\tci_lower\tci_upper\tks_p_value\tks_statistic"
        "\taor_exceeds_roa\treplications\n";
    for (const auto& c : cells) {
        const auto& s = c.summary;
        out += general(s.gamma) + '\t' + std::to_string(s.n) + '\t' + fixed4(s.mean_aor) + '\t' +
               fixed4(s.mean_roa) + '\t' + fixed4(s.ci.lower) + '\t' + fixed4(s.ci.upper) + '\t' +
               fixed4(s.ks.p_value) + '\t' + fixed4(s.ks.statistic) + '\t' +
               std::to_string(s.aor_exceeds_roa) + '\t' +
               std::to_string(c.replications.replications.size()) + '\n';
    }
    return out;
}

std::string format_correlation_table(const std::vector<CellResult>& cells) {
    std::string out = "gamma\tn\tmean_correlation\tvariance\tminimum\tmaximum\tundefined\n";
    for (const auto& c : cells) {
        const auto& s = c.summary;
        out += general(s.gamma) + '\t' + std::to_string(s.n) + '\t';
        if (c.correlation) {
            const auto& k = *c.correlation;
            out += fixed4(k.mean) + '\t' + (k.variance ? fixed4(*k.variance) : "NA") + '\t' +
                   fixed4(k.min) + '\t' + fixed4(k.max);
        } else {
            out += "NA\tNA\tNA\tNA";
        }
        out += '\t' + std::to_string(c.replications.undefined_correlations()) + '\n';
    }
    return out;
}

std::string format_fit_table(const std::vector<CellResult>& cells) {
    std::string out =
        "gamma\tn\tsample\talpha\tbeta\tlog_beta\tinv_alpha\tlog_likelihood\titerations"
        "\tconverged\tks_distance\texcluded_zeros\n";
    auto row = [&](const CellResult& c, const char* which, const std::optional<LogLogisticFit>& f) {
        out += general(c.summary.gamma) + '\t' + std::to_string(c.summary.n) + '\t' + which + '\t';
        if (!f) {
            out += "NA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\n";
            return;
        }
        const auto& r = f->result;
        const auto form = to_logistic_form(r.params);
        out += fixed4(r.params.alpha()) + '\t' + fixed4(r.params.beta()) + '\t' +
               fixed4(form.location) + '\t' + fixed4(form.scale) + '\t' +
               fixed4(r.log_likelihood) + '\t' + std::to_string(r.iterations) + '\t' +
               (r.converged ? "yes" : "no") + '\t' + fixed4(r.ks_against_fit) + '\t' +
               std::to_string(f->excluded_zeros) + '\n';
    };
    for (const auto& c : cells) {
        row(c, "aor", c.fit_aor);
        row(c, "roa", c.fit_roa);
    }
    return out;
}

std::string format_histogram_csv(std::span<const double> values, std::int64_t bins,
                                 const std::optional<LogLogisticParams>& fit) {
    std::string out = "bin_left,bin_right,count,fitted_density_scaled\n";
    const auto n = static_cast<double>(values.size());
    for (const auto& b : histogram(values, bins)) {
        out += general(b.left) + ',' + general(b.right) + ',' + std::to_string(b.count) + ',';
        if (fit) {
            const double mid = 0.5 * (b.left + b.right);
            const double scale = n * (b.right - b.left);
            out += mid >= 0.0 ? general(fitted_density_curve(*fit, std::span(&mid, 1), scale)[0].density)
                              : "NA";
        } else {
            out += "NA";
        }
        out += '\n';
    }
    return out;
}

std::string format_ecdf_csv(std::span<const double> values,
                            const std::optional<LogLogisticParams>& fit) {
    std::string out = "x,ecdf,fitted_cdf\n";
    const auto f = ecdf(values);
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const double x = f.points[i];
        out += general(x) + ',' + general(f.heights[i]) + ',' +
               (fit && x >= 0.0 ? general(loglogistic_cdf(x, *fit)) : std::string("NA")) + '\n';
    }
    return out;
}

std::string figure_tag(const std::string& which, double gamma, std::int64_t n) {
    return which + "_g" + printf_string("%g", gamma) + "_n" + std::to_string(n);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace citesim
