// Simulation of the Cramer urn models (natural and progression) and the
// empirical check that trial statistics match the normal-approximation
// predictions. Trials are reproducible: every per-trial seed is a fixed
// mix of (master_seed, trial_index), so any parallel schedule produces the
// same report.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "primedist/models.hpp"
#include "primedist/sieve.hpp"

namespace primedist::mc {

// splitmix64: state walks by the golden-gamma increment, output is the
// murmur-style finalizer. This is the project's fixed mixing function.
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += kGoldenGamma;
        return mix64(state);
    }
    // uniform in [0, 1), 53 random bits
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed + (trial_index + 1) * kGoldenGamma);
}

struct TrialConfig {
    models::ModelKind model = models::m2();  // M2 or M4 only
    std::uint64_t x = 0;
    std::optional<primes::ProgressionClass> cls;
    std::uint32_t trials = 2000;
    std::uint64_t master_seed = 1;
    std::vector<double> c_list = {1.0, 2.0, 3.0};
};

struct ZSummary {
    double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

struct SimReport {
    std::uint64_t x = 0;
    std::uint32_t trials = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t start_index = 0;  // first urn actually sampled
    double model_mean = 0.0;
    double model_variance = 0.0;
    double empirical_mean = 0.0;
    double empirical_variance = 0.0;  // unbiased, over trials
    std::vector<std::pair<double, double>> coverage;  // (C, fraction), c_list order
    ZSummary z;
};

// One draw of I(x) = sum of Bernoulli(p_i); deterministic in seed.
std::uint64_t simulate_trajectory(models::ModelKind model, std::uint64_t x,
                                  std::optional<primes::ProgressionClass> cls,
                                  std::uint64_t seed);

// Runs cfg.trials independent trajectories and aggregates them against the
// model band. The report is a pure function of cfg.
SimReport run_experiment(const TrialConfig& cfg);

struct CoverageRow {
    std::uint64_t x = 0;
    std::uint32_t trials = 0;
    double c = 0.0;
    double empirical = 0.0;
    double expected = 0.0;   // F(c)
    double tolerance = 0.0;  // 3 * binomial sd
    bool ok = false;
};

struct CoverageTable {
    std::vector<CoverageRow> rows;  // ascending x
    bool all_pass = false;
};

// Tabulates empirical coverage against F(c) across reports; c must be one of
// each report's c_list entries.
CoverageTable coverage_report(const std::vector<SimReport>& reports, double c);

}  // namespace primedist::mc
