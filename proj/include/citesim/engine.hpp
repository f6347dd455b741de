#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "citesim/distributions.hpp"
#include "citesim/random.hpp"

namespace citesim {

/// One simulated researcher.
struct ResearcherOutcome {
    std::int64_t publications = 1;
    std::int64_t citations = 0;

    double ratio() const noexcept {
        return static_cast<double>(citations) / static_cast<double>(publications);
    }
};

/// Draws a publication count, then one citation count per publication.
ResearcherOutcome simulate_researcher(const TruncatedZeta& publications,
                                      const EmpiricalDiscrete& citations, Xoshiro256& rng);

/// Average of the per-researcher ratios.
double cohort_aor(std::span<const ResearcherOutcome> cohort);
/// Total citations over total publications.
double cohort_roa(std::span<const ResearcherOutcome> cohort);
/// Pearson correlation of ratio against publications. Empty when either
/// variable has zero sample variance. Throws for fewer than two researchers.
std::optional<double> cohort_correlation(std::span<const ResearcherOutcome> cohort);

struct CohortStats {
    double aor = 0.0;
    double roa = 0.0;
    std::optional<double> corr;
    std::int64_t n = 0;
};

CohortStats summarize_cohort(std::span<const ResearcherOutcome> cohort);

struct ExperimentConfig {
    std::int64_t n_researchers = 50;
    double gamma = 3.0;
    std::int64_t k_max = 5000;
    std::int64_t m_replications = 1000;
    std::uint64_t master_seed = 0;
};

struct ReplicationSet {
    ExperimentConfig config;
    std::vector<CohortStats> replications;

    std::vector<double> aor_values() const;
    std::vector<double> roa_values() const;
    /// Defined correlations only, in replication order.
    std::vector<double> correlations() const;
    std::int64_t undefined_correlations() const;
};

/**
 * Runs `m_replications` independent cohorts. Replication j draws from a
 * generator seeded with derive_seed(master_seed, j), so the result does not
 * depend on `threads` or on scheduling. threads == 0 means one per core.
 */
ReplicationSet run_replications(const ExperimentConfig& config, const EmpiricalDiscrete& citations,
                                unsigned threads = 1);

/// Same as above with a prebuilt publication law (k_max and gamma in
/// `config` must describe it).
ReplicationSet run_replications(const ExperimentConfig& config, const TruncatedZeta& publications,
                                const EmpiricalDiscrete& citations, unsigned threads = 1);

}  // namespace citesim
