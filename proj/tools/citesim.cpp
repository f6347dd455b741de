// Command-line front end: simulate, rank, fit, ks, zeta-check.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "citesim/distributions.hpp"
#include "citesim/experiment.hpp"
#include "citesim/fitting.hpp"
#include "citesim/io.hpp"
#include "citesim/stats.hpp"

#ifndef CITESIM_VERSION
#define CITESIM_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using namespace citesim;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kInput = 3, kNumeric = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    SweepConfig sweep;
    std::string citations_file;
    std::string out_dir;
};

void validate(const SimulateArgs& a) {
    const auto& s = a.sweep;
    if (s.gammas.empty()) throw UsageError("simulate: at least one --gamma is required");
    if (s.ns.empty()) throw UsageError("simulate: at least one --n is required");
    for (const double g : s.gammas) {
        if (!(g > 1.0)) throw UsageError("simulate: --gamma must exceed 1");
    }
    for (const auto n : s.ns) {
        if (n < 1) throw UsageError("simulate: --n must be at least 1");
    }
    if (s.replications < 2) throw UsageError("simulate: --reps must be at least 2");
    if (s.bootstrap_resamples < 1) throw UsageError("simulate: --bootstrap must be at least 1");
    if (!(s.confidence > 0.0 && s.confidence < 1.0)) {
        throw UsageError("simulate: --confidence must lie in (0, 1)");
    }
    if (s.truncation < 1) throw UsageError("simulate: --truncation must be at least 1");
    if (s.histogram_bins < 1) throw UsageError("simulate: --bins must be at least 1");
}

int run_simulate(const SimulateArgs& args, const std::vector<std::string>& argv) {
    validate(args);
    const auto started = std::chrono::steady_clock::now();
    const auto citations = parse_citation_counts(fs::path(args.citations_file));

    const fs::path out_dir(args.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw std::runtime_error("cannot create output directory " + out_dir.string());
    }

    const auto cells = run_sweep(args.sweep, citations);

    // Single writer, after all computation.
    std::vector<std::string> outputs;
    auto emit = [&](const std::string& name, const std::string& contents) {
        write_file_atomic(out_dir / name, contents);
        outputs.push_back(name);
    };
    emit("summary.tsv", format_summary_table(cells));
    if (args.sweep.correlation_table) emit("correlation.tsv", format_correlation_table(cells));
    if (args.sweep.fit_loglogistic) emit("fits.tsv", format_fit_table(cells));
    if (args.sweep.emit_figures) {
        for (const auto& c : cells) {
            const auto g = c.summary.gamma;
            const auto n = c.summary.n;
            auto params = [](const std::optional<LogLogisticFit>& f) {
                return f ? std::optional<LogLogisticParams>(f->result.params) : std::nullopt;
            };
            const auto aor = c.replications.aor_values();
            const auto roa = c.replications.roa_values();
            emit("hist_" + figure_tag("aor", g, n) + ".csv",
                 format_histogram_csv(aor, args.sweep.histogram_bins, params(c.fit_aor)));
            emit("hist_" + figure_tag("roa", g, n) + ".csv",
                 format_histogram_csv(roa, args.sweep.histogram_bins, params(c.fit_roa)));
            emit("ecdf_" + figure_tag("aor", g, n) + ".csv", format_ecdf_csv(aor, params(c.fit_aor)));
            emit("ecdf_" + figure_tag("roa", g, n) + ".csv", format_ecdf_csv(roa, params(c.fit_roa)));
        }
    }

    std::int64_t undefined = 0;
    for (const auto& c : cells) undefined += c.replications.undefined_correlations();
    if (args.sweep.correlation_table && undefined > 0) {
        std::cerr << "warning: " << undefined
                  << " replication(s) had an undefined ratio/publication correlation"
                     " (zero variance) and were excluded\n";
    }

    const auto& s = args.sweep;
    nlohmann::ordered_json manifest;
    manifest["tool"] = "citesim";
    manifest["version"] = CITESIM_VERSION;
    manifest["command"] = "simulate";
    manifest["argv"] = argv;
    manifest["config"] = {
        {"gamma", s.gammas},
        {"n", s.ns},
        {"reps", s.replications},
        {"bootstrap", s.bootstrap_resamples},
        {"confidence", s.confidence},
        {"truncation", s.truncation},
        {"seed", s.seed},
        {"citations_file", args.citations_file},
        {"fit_loglogistic", s.fit_loglogistic},
        {"emit_figures", s.emit_figures},
        {"correlation_table", s.correlation_table},
        {"bins", s.histogram_bins},
    };
    manifest["seed"] = s.seed;
    manifest["citation_law"] = {{"papers", citations.total()},
                                {"distinct_values", citations.values().size()},
                                {"mean", citations.mean()}};
    manifest["outputs"] = outputs;
    manifest["undefined_correlations"] = undefined;
    manifest["finished_at_unix"] = static_cast<std::int64_t>(std::time(nullptr));
    manifest["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_file_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << format_summary_table(cells);
    return kOk;
}

// ---------------------------------------------------------------------------

int run_rank(const std::string& input, std::int64_t top) {
    const auto ranked = rank_countries(parse_country_totals(fs::path(input)));
    std::cout << "rank\tcountry\tcitations_per_document\n";
    for (const auto& r : ranked) {
        if (top > 0 && r.rank > top) break;
        std::cout << r.rank << '\t' << r.record.name << '\t' << fmt("%.2f", r.record.ratio())
                  << '\n';
    }
    return kOk;
}

int run_fit(const std::string& input, const std::string& column, const FitOptions& options) {
    const auto values = read_csv_column(fs::path(input), column);
    std::vector<double> positive;
    std::int64_t zeros = 0;
    for (const double v : values) {
        if (v == 0.0) {
            ++zeros;
        } else if (v < 0.0 || !std::isfinite(v)) {
            throw InputFormatError(input, 0, "column '" + column + "' has a negative value");
        } else {
            positive.push_back(v);
        }
    }
    const auto fit = fit_loglogistic(positive, options);
    const auto form = to_logistic_form(fit.params);
    std::cout << "n\t" << positive.size() << '\n'
              << "excluded_zeros\t" << zeros << '\n'
              << "alpha\t" << fmt("%.6f", fit.params.alpha()) << '\n'
              << "beta\t" << fmt("%.6f", fit.params.beta()) << '\n'
              << "log_beta\t" << fmt("%.6f", form.location) << '\n'
              << "inv_alpha\t" << fmt("%.6f", form.scale) << '\n'
              << "log_likelihood\t" << fmt("%.6f", fit.log_likelihood) << '\n'
              << "iterations\t" << fit.iterations << '\n'
              << "converged\t" << (fit.converged ? "yes" : "no") << '\n'
              << "ks_distance\t" << fmt("%.6f", fit.ks_against_fit) << '\n';
    if (!fit.converged) throw NumericalFailure("fit did not converge within the iteration limit");
    return kOk;
}

int run_ks(const std::string& x_path, const std::string& y_path) {
    const auto x = read_value_file(fs::path(x_path));
    const auto y = read_value_file(fs::path(y_path));
    if (x.empty()) throw InputFormatError(x_path, 0, "no values");
    if (y.empty()) throw InputFormatError(y_path, 0, "no values");
    const auto r = ks_two_sample(x, y);
    std::cout << "n1\t" << r.n1 << '\n'
              << "n2\t" << r.n2 << '\n'
              << "statistic\t" << fmt("%.6f", r.statistic) << '\n'
              << "p_value\t" << fmt("%.6f", r.p_value) << '\n';
    if (x.size() * y.size() <= 10000) {
        std::cout << "exact_p_value\t" << fmt("%.6f", ks_exact_p_value(x, y)) << '\n';
    }
    return kOk;
}

int run_zeta_check(const std::vector<double>& gammas, std::int64_t truncation) {
    if (gammas.empty()) throw UsageError("zeta-check: at least one --gamma is required");
    if (truncation < 1) throw UsageError("zeta-check: --truncation must be at least 1");
    std::cout << "gamma\ttruncation\ttruncated_mean\ttheoretical_mean\tdifference\n";
    for (const double g : gammas) {
        if (!(g > 1.0)) throw UsageError("zeta-check: --gamma must exceed 1");
        const TruncatedZeta law(g, truncation);
        std::cout << fmt("%g", g) << '\t' << truncation << '\t' << fmt("%.6f", law.mean()) << '\t';
        if (g > 2.0) {
            const double theory = zeta_theoretical_mean(g);
            std::cout << fmt("%.6f", theory) << '\t' << fmt("%.6f", law.mean() - theory) << '\n';
        } else {
            std::cout << "inf\tNA\n";
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Averages of ratios versus ratios of averages: Monte Carlo and statistics tools"};
    app.set_version_flag("--version", CITESIM_VERSION);
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run the AoR/RoA replication sweep");
    simulate->add_option("--gamma", sim.sweep.gammas, "Zeta exponent (repeatable)")->required();
    simulate->add_option("--n", sim.sweep.ns, "Researchers per cohort (repeatable)")->required();
    simulate->add_option("--reps", sim.sweep.replications, "Replications per cell")
        ->capture_default_str();
    simulate->add_option("--bootstrap", sim.sweep.bootstrap_resamples, "Bootstrap resamples")
        ->capture_default_str();
    simulate->add_option("--confidence", sim.sweep.confidence, "Bootstrap confidence level")
        ->capture_default_str();
    simulate->add_option("--truncation", sim.sweep.truncation, "Largest publication count")
        ->capture_default_str();
    simulate->add_option("--seed", sim.sweep.seed, "Master seed")->capture_default_str();
    simulate->add_option("--citations-file", sim.citations_file, "citations,count table")
        ->required();
    simulate->add_option("--out-dir", sim.out_dir, "Output directory")->required();
    simulate->add_flag("--fit-loglogistic", sim.sweep.fit_loglogistic, "Write fits.tsv");
    simulate->add_flag("--emit-figures", sim.sweep.emit_figures, "Write histogram/ecdf CSVs");
    simulate->add_flag("--correlation-table", sim.sweep.correlation_table,
                       "Write correlation.tsv");
    simulate->add_option("--bins", sim.sweep.histogram_bins, "Histogram bins")
        ->capture_default_str();
    simulate->add_option("--threads", sim.sweep.threads, "Worker threads, 0 = all cores")
        ->capture_default_str();

    std::string rank_input;
    std::int64_t rank_top = 0;
    auto* rank = app.add_subcommand("rank", "Rank countries by citations per document");
    rank->add_option("--input", rank_input, "country,documents,citations table")->required();
    rank->add_option("--top", rank_top, "Print only the first N (0 = all)");

    std::string fit_input;
    std::string fit_column;
    FitOptions fit_options;
    auto* fit = app.add_subcommand("fit", "Fit a log-logistic law to a CSV column");
    fit->add_option("--input", fit_input, "CSV file with a header row")->required();
    fit->add_option("--column", fit_column, "Column name")->required();
    fit->add_option("--tolerance", fit_options.tolerance, "Simplex function-spread tolerance")
        ->capture_default_str();
    fit->add_option("--max-iters", fit_options.max_iterations, "Iteration limit")
        ->capture_default_str();

    std::string ks_x;
    std::string ks_y;
    auto* ks = app.add_subcommand("ks", "Two-sample Kolmogorov-Smirnov test");
    ks->add_option("--x", ks_x, "First value file")->required();
    ks->add_option("--y", ks_y, "Second value file")->required();

    std::vector<double> zeta_gammas;
    std::int64_t zeta_truncation = 5000;
    auto* zeta = app.add_subcommand("zeta-check", "Truncated versus theoretical zeta means");
    zeta->add_option("--gamma", zeta_gammas, "Zeta exponent (repeatable)")->required();
    zeta->add_option("--truncation", zeta_truncation, "Largest publication count")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*simulate) return run_simulate(sim, std::vector<std::string>(argv, argv + argc));
        if (*rank) return run_rank(rank_input, rank_top);
        if (*fit) return run_fit(fit_input, fit_column, fit_options);
        if (*ks) return run_ks(ks_x, ks_y);
        if (*zeta) return run_zeta_check(zeta_gammas, zeta_truncation);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const InputFormatError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
    return kUsage;
}
