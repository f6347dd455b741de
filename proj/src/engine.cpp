#include "citesim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "citesim/stats.hpp"

namespace citesim {

ResearcherOutcome simulate_researcher(const TruncatedZeta& publications,
                                      const EmpiricalDiscrete& citations, Xoshiro256& rng) {
    ResearcherOutcome out;
    out.publications = publications.sample(rng.uniform());
    for (std::int64_t i = 0; i < out.publications; ++i) {
        out.citations += citations.sample(rng.uniform());
    }
    return out;
}

double cohort_aor(std::span<const ResearcherOutcome> cohort) {
    if (cohort.empty()) throw std::invalid_argument("cohort_aor: empty cohort");
    double sum = 0.0;
    for (const auto& r : cohort) sum += r.ratio();
    return sum / static_cast<double>(cohort.size());
}

double cohort_roa(std::span<const ResearcherOutcome> cohort) {
    if (cohort.empty()) throw std::invalid_argument("cohort_roa: empty cohort");
    std::int64_t cites = 0;
    std::int64_t pubs = 0;
    for (const auto& r : cohort) {
        cites += r.citations;
        pubs += r.publications;
    }
    return static_cast<double>(cites) / static_cast<double>(pubs);
}

std::optional<double> cohort_correlation(std::span<const ResearcherOutcome> cohort) {
    if (cohort.size() < 2) {
        throw std::invalid_argument("cohort_correlation: need at least two researchers");
    }
    std::vector<double> ratios;
    std::vector<double> pubs;
    ratios.reserve(cohort.size());
    pubs.reserve(cohort.size());
    for (const auto& r : cohort) {
        ratios.push_back(r.ratio());
        pubs.push_back(static_cast<double>(r.publications));
    }
    return pearson(ratios, pubs);
}

CohortStats summarize_cohort(std::span<const ResearcherOutcome> cohort) {
    CohortStats s;
    s.aor = cohort_aor(cohort);
    s.roa = cohort_roa(cohort);
    s.n = static_cast<std::int64_t>(cohort.size());
    if (cohort.size() >= 2) s.corr = cohort_correlation(cohort);
    return s;
}

std::vector<double> ReplicationSet::aor_values() const {
    std::vector<double> out;
    out.reserve(replications.size());
    for (const auto& r : replications) out.push_back(r.aor);
    return out;
}

std::vector<double> ReplicationSet::roa_values() const {
    std::vector<double> out;
    out.reserve(replications.size());
    for (const auto& r : replications) out.push_back(r.roa);
    return out;
}

std::vector<double> ReplicationSet::correlations() const {
    std::vector<double> out;
    for (const auto& r : replications) {
        if (r.corr) out.push_back(*r.corr);
    }
    return out;
}

std::int64_t ReplicationSet::undefined_correlations() const {
    return std::count_if(replications.begin(), replications.end(),
                         [](const CohortStats& s) { return !s.corr.has_value(); });
}

ReplicationSet run_replications(const ExperimentConfig& config, const EmpiricalDiscrete& citations,
                                unsigned threads) {
    const TruncatedZeta publications(config.gamma, config.k_max);
    return run_replications(config, publications, citations, threads);
}

ReplicationSet run_replications(const ExperimentConfig& config, const TruncatedZeta& publications,
                                const EmpiricalDiscrete& citations, unsigned threads) {
    if (config.n_researchers < 1) {
        throw std::invalid_argument("run_replications: n_researchers must be at least 1");
    }
    if (config.m_replications < 1) {
        throw std::invalid_argument("run_replications: m_replications must be at least 1");
    }

    ReplicationSet set;
    set.config = config;
    set.replications.resize(static_cast<std::size_t>(config.m_replications));

    auto run_one = [&](std::size_t j, std::vector<ResearcherOutcome>& cohort) {
        Xoshiro256 rng(derive_seed(config.master_seed, j));
        for (auto& r : cohort) r = simulate_researcher(publications, citations, rng);
        set.replications[j] = summarize_cohort(cohort);
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::int64_t>(threads, config.m_replications));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        std::vector<ResearcherOutcome> cohort(static_cast<std::size_t>(config.n_researchers));
        for (std::size_t j = next++; j < set.replications.size(); j = next++) {
            run_one(j, cohort);
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return set;
}

}  // namespace citesim
