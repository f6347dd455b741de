#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "citesim/distributions.hpp"
#include "citesim/engine.hpp"
#include "citesim/fitting.hpp"
#include "citesim/stats.hpp"

namespace citesim {

struct SweepConfig {
    std::vector<double> gammas;
    std::vector<std::int64_t> ns;
    std::int64_t replications = 1000;
    std::int64_t bootstrap_resamples = 500;
    double confidence = 0.95;
    std::int64_t truncation = 5000;
    std::uint64_t seed = 0;
    bool fit_loglogistic = false;
    bool emit_figures = false;
    bool correlation_table = false;
    std::int64_t histogram_bins = 30;
    unsigned threads = 1;
};

/// One row of the AoR/RoA summary table.
struct ExperimentSummary {
    double gamma = 0.0;
    std::int64_t n = 0;
    double mean_aor = 0.0;
    double mean_roa = 0.0;
    /// Bootstrap interval for mean(AoR) - mean(RoA).
    IntervalEstimate ci;
    KsResult ks;
    /// Replications in which AoR > RoA.
    std::int64_t aor_exceeds_roa = 0;
};

struct LogLogisticFit {
    FitResult result;
    /// Zero-valued replications dropped before fitting.
    std::int64_t excluded_zeros = 0;
};

struct CellResult {
    ReplicationSet replications;
    ExperimentSummary summary;
    /// Defined correlations only; see replications.undefined_correlations().
    std::optional<Summary> correlation;
    std::optional<LogLogisticFit> fit_aor;
    std::optional<LogLogisticFit> fit_roa;
};

/// Seed of the (gamma, n) cell. Independent of which other cells are run.
std::uint64_t cell_seed(std::uint64_t master, double gamma, std::int64_t n);

/// Runs one cell: replications, summary row, and the optional correlation
/// summary and fits requested in `cfg`.
CellResult run_cell(const SweepConfig& cfg, double gamma, std::int64_t n,
                    const EmpiricalDiscrete& citations);

/// Every (gamma, n) pair, gamma-major in request order.
std::vector<CellResult> run_sweep(const SweepConfig& cfg, const EmpiricalDiscrete& citations);

/// Log-logistic fit of the strictly positive values. Empty when fewer than
/// ten remain.
std::optional<LogLogisticFit> fit_positive(std::span<const double> values);

std::string format_summary_table(const std::vector<CellResult>& cells);
std::string format_correlation_table(const std::vector<CellResult>& cells);
std::string format_fit_table(const std::vector<CellResult>& cells);
/// bin_left,bin_right,count,fitted_density_scaled
std::string format_histogram_csv(std::span<const double> values, std::int64_t bins,
                                 const std::optional<LogLogisticParams>& fit);
/// x,ecdf,fitted_cdf
std::string format_ecdf_csv(std::span<const double> values,
                            const std::optional<LogLogisticParams>& fit);

/// Suffix used in figure file names, e.g. "aor_g3.5_n50".
std::string figure_tag(const std::string& which, double gamma, std::int64_t n);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace citesim
