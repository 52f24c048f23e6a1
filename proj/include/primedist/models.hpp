// Predicted moments of the four probabilistic prime-count models, deviation
// bands, z-scores, and the variance-ordering checks.
//
//   M1  natural numbers, with-replacement draws (binomial count)
//   M2  natural numbers, one Bernoulli urn per integer (Cramer count)
//   M3  arithmetic progression ki + l, with-replacement draws
//   M4  arithmetic progression, one urn per progression term

#pragma once

#include <cstdint>
#include <optional>

#include "primedist/sieve.hpp"

namespace primedist::models {

enum class ModelVariant {
    M1BinomialNatural,
    M2CramerNatural,
    M3BinomialProgression,
    M4CramerProgression,
};

// Success probability used by the binomial models: the crude 1/ln x or the
// corrected Li(x)/x.
enum class SuccessProbMode { CrudeInvLog, LiCorrected };

struct ModelKind {
    ModelVariant variant = ModelVariant::M1BinomialNatural;
    SuccessProbMode success_prob_mode = SuccessProbMode::LiCorrected;

    bool progression() const {
        return variant == ModelVariant::M3BinomialProgression ||
               variant == ModelVariant::M4CramerProgression;
    }
    bool cramer() const {
        return variant == ModelVariant::M2CramerNatural ||
               variant == ModelVariant::M4CramerProgression;
    }
};

inline ModelKind m1(SuccessProbMode mode = SuccessProbMode::LiCorrected) {
    return {ModelVariant::M1BinomialNatural, mode};
}
inline ModelKind m2() { return {ModelVariant::M2CramerNatural, SuccessProbMode::LiCorrected}; }
inline ModelKind m3(SuccessProbMode mode = SuccessProbMode::LiCorrected) {
    return {ModelVariant::M3BinomialProgression, mode};
}
inline ModelKind m4() { return {ModelVariant::M4CramerProgression, SuccessProbMode::LiCorrected}; }

const char* variant_name(ModelVariant v);

struct ModelConfig {
    // Cramer sums switch to the integral-plus-constant form above this many
    // direct terms; both forms agree within the summation-constant bounds.
    std::uint64_t direct_sum_cap = 10'000'000;

    double quad_tol(double x) const {
        double t = 1e-13 * x;
        return t < 1e-10 ? 1e-10 : t;
    }
};

struct ModelMoments {
    double mean = 0.0;
    double variance = 0.0;
    std::uint64_t x = 0;
    ModelKind model;
    std::optional<primes::ProgressionClass> cls;
    // quadrature + boundary + summation-constant allowances
    double mean_error_bound = 0.0;
    double variance_error_bound = 0.0;
    // Cramer models: first urn index whose raw success probability is < 1
    std::uint64_t start_index = 0;
};

ModelMoments model_moments(ModelKind model, std::uint64_t x,
                           std::optional<primes::ProgressionClass> cls = std::nullopt,
                           const ModelConfig& cfg = {});

struct DeviationBand {
    double center = 0.0;
    double halfwidth = 0.0;
    double c = 0.0;
    double coverage = 0.0;  // F(c)

    double lo() const { return center - halfwidth; }
    double hi() const { return center + halfwidth; }
    bool contains(double v) const { return v > lo() && v < hi(); }
};

DeviationBand deviation_band(const ModelMoments& moments, double c);

double z_score(double actual, const ModelMoments& moments);

struct VarianceChainReport {
    std::uint64_t x = 0;
    std::optional<primes::ProgressionClass> cls;
    double li_x = 0.0;
    double d1 = 0.0;  // binomial natural variance
    double d2 = 0.0;  // Cramer natural variance
    bool natural_ok = false;
    // progression part, populated when a class is given
    double d3 = 0.0;
    double d4 = 0.0;
    double li_over_phi = 0.0;
    bool progression_ok = true;
    double rel_slack = 0.0;
    bool pass = false;
};

// Asserts d2 <= d1 <= Li(x) and, with a class, d4 < d3 < Li(x)/phi(k), each
// inequality up to rel_slack plus the moment error bounds.
VarianceChainReport variance_chain_check(std::uint64_t x,
                                         std::optional<primes::ProgressionClass> cls = std::nullopt,
                                         const ModelConfig& cfg = {},
                                         double rel_slack = 1e-6);

// Summation constants C1, C2 behind the integral form of the Cramer moments,
// estimated once at a fixed truncation and cached.
double cramer_c1();
double cramer_c2();

// First urn index with raw success probability strictly below 1.
std::uint64_t cramer_start_index(const std::optional<primes::ProgressionClass>& cls);

// Raw (unclamped) Cramer success probability for urn i.
double cramer_success_prob_raw(const std::optional<primes::ProgressionClass>& cls,
                               std::uint64_t i);

// Number of urns for a Cramer model at x: x itself for the natural model,
// floor((x - l)/k) progression terms otherwise.
std::uint64_t cramer_urn_count(std::uint64_t x,
                               const std::optional<primes::ProgressionClass>& cls);

}  // namespace primedist::models
