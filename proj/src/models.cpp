#include "primedist/models.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "primedist/analytic.hpp"

namespace primedist::models {

namespace {

constexpr double kLn2 = 0.6931471805599453094;
constexpr std::uint64_t kEmTruncation = 10'000'000;

// tail of the truncated summation constant, |estimate(n) - limit| ~ F(n)/2
double em_tail(int p, std::uint64_t n) {
    double l = std::log(static_cast<double>(n));
    return 0.5 / std::pow(l, p);
}

struct EmConstants {
    double c1, c2;
};

const EmConstants& em_constants() {
    static EmConstants consts;
    static std::once_flag flag;
    std::call_once(flag, [] {
        consts.c1 = analytic::em_constant_estimate(1, 2.0, kEmTruncation).estimate;
        consts.c2 = analytic::em_constant_estimate(2, 2.0, kEmTruncation).estimate;
    });
    return consts;
}

void check_validity(ModelKind model, std::uint64_t x,
                    const std::optional<primes::ProgressionClass>& cls) {
    if (model.progression()) {
        if (!cls)
            throw std::invalid_argument("model_moments: progression model needs a class");
        if (std::gcd(cls->k, cls->l) != 1)
            throw std::invalid_argument("model_moments: gcd(k, l) must be 1");
        if (x / cls->k < 10)
            throw std::invalid_argument("model_moments: require x/k >= 10");
    } else {
        if (cls)
            throw std::invalid_argument("model_moments: natural model forbids a class");
        if (x < 10) throw std::invalid_argument("model_moments: require x >= 10");
    }
}

struct CramerSums {
    double sum_p = 0.0;
    double sum_p2 = 0.0;
    std::uint64_t terms = 0;
};

// sum of p_i and p_i^2 over urns start..n with p_i = (k/phi)/ln(k*i+l);
// the natural model is the (1, 0) progression
CramerSums cramer_direct_sums(std::uint64_t n, const primes::ProgressionClass& cls,
                              std::uint64_t start) {
    analytic::CompensatedSum sp, sp2;
    double pref = static_cast<double>(cls.k) / static_cast<double>(cls.phi_k);
    std::uint64_t count = 0;
    for (std::uint64_t i = start; i <= n; ++i) {
        double f = static_cast<double>(cls.k * i + cls.l);
        double p = pref / std::log(f);
        sp.add(p);
        sp2.add(p * p);
        ++count;
    }
    return {sp.value(), sp2.value(), count};
}

primes::ProgressionClass natural_class() { return primes::ProgressionClass{1, 0, 1}; }

}  // namespace

const char* variant_name(ModelVariant v) {
    switch (v) {
        case ModelVariant::M1BinomialNatural: return "m1";
        case ModelVariant::M2CramerNatural: return "m2";
        case ModelVariant::M3BinomialProgression: return "m3";
        case ModelVariant::M4CramerProgression: return "m4";
    }
    return "?";
}

double cramer_c1() { return em_constants().c1; }
double cramer_c2() { return em_constants().c2; }

double cramer_success_prob_raw(const std::optional<primes::ProgressionClass>& cls,
                               std::uint64_t i) {
    primes::ProgressionClass c = cls ? *cls : natural_class();
    std::uint64_t f = c.k * i + c.l;
    if (f < 2) return std::numeric_limits<double>::infinity();
    return (static_cast<double>(c.k) / static_cast<double>(c.phi_k)) /
           std::log(static_cast<double>(f));
}

std::uint64_t cramer_start_index(const std::optional<primes::ProgressionClass>& cls) {
    for (std::uint64_t i = 1;; ++i)
        if (cramer_success_prob_raw(cls, i) < 1.0) return i;
}

std::uint64_t cramer_urn_count(std::uint64_t x,
                               const std::optional<primes::ProgressionClass>& cls) {
    if (!cls) return x;
    if (x < cls->l) return 0;
    return (x - cls->l) / cls->k;
}

ModelMoments model_moments(ModelKind model, std::uint64_t x,
                           std::optional<primes::ProgressionClass> cls,
                           const ModelConfig& cfg) {
    check_validity(model, x, cls);

    ModelMoments m;
    m.x = x;
    m.model = model;
    m.cls = cls;

    const double xd = static_cast<double>(x);
    const double lnx = std::log(xd);

    switch (model.variant) {
        case ModelVariant::M1BinomialNatural:
        case ModelVariant::M3BinomialProgression: {
            double k = cls ? static_cast<double>(cls->k) : 1.0;
            double phi = cls ? static_cast<double>(cls->phi_k) : 1.0;
            if (model.success_prob_mode == SuccessProbMode::CrudeInvLog) {
                // x/k draws with p = (k/phi)/ln x
                double p = (k / phi) / lnx;
                m.mean = xd / (phi * lnx);
                m.variance = m.mean * (1.0 - p);
                m.mean_error_bound = 8 * std::numeric_limits<double>::epsilon() * m.mean;
                m.variance_error_bound = m.mean_error_bound;
            } else {
                auto L = analytic::li(xd, cfg.quad_tol(xd));
                m.mean = L.value / phi;
                m.variance = L.value / phi - k * L.value * L.value / (phi * phi * xd);
                double e = L.abs_error_bound;
                m.mean_error_bound = e / phi;
                m.variance_error_bound = e / phi + 2.0 * k * L.value * e / (phi * phi * xd);
            }
            break;
        }
        case ModelVariant::M2CramerNatural:
        case ModelVariant::M4CramerProgression: {
            primes::ProgressionClass c = cls ? *cls : natural_class();
            double k = static_cast<double>(c.k);
            double phi = static_cast<double>(c.phi_k);
            std::uint64_t n = cramer_urn_count(x, cls);
            std::uint64_t start = cramer_start_index(cls);
            m.start_index = start;
            if (n < start)
                throw std::domain_error("model_moments: no urns below the clamping index");
            if (n - start + 1 <= cfg.direct_sum_cap) {
                CramerSums s = cramer_direct_sums(n, c, start);
                m.mean = s.sum_p;
                m.variance = s.sum_p - s.sum_p2;
                double round = 16 * std::numeric_limits<double>::epsilon() * s.sum_p;
                m.mean_error_bound = round;
                m.variance_error_bound = 2 * round;
            } else {
                // integral form plus summation constants, minus the terms the
                // direct sum would have skipped below the start index
                auto L = analytic::li(xd, cfg.quad_tol(xd));
                auto L2 = analytic::li2(xd, cfg.quad_tol(xd));
                double head_p = 0.0, head_p2 = 0.0;
                for (std::uint64_t i = 1; i < start; ++i) {
                    std::uint64_t f = c.k * i + c.l;
                    if (f < 2) continue;
                    double lf = std::log(static_cast<double>(f));
                    double pref = k / phi;
                    head_p += pref / lf;
                    head_p2 += (pref / lf) * (pref / lf);
                }
                double c1 = cramer_c1(), c2 = cramer_c2();
                // boundary of the shifted integration range [k+l, x] -> [2, x]
                double boundary = (c.k + c.l >= 2)
                    ? (static_cast<double>(c.k + c.l) - 2.0) / kLn2 / phi
                    : 0.0;
                m.mean = L.value / phi + c1 - head_p;
                m.variance = (L.value / phi - k / (phi * phi) * L2.value) +
                             (c1 - c2) - (head_p - head_p2);
                double em_err = em_tail(1, kEmTruncation) + em_tail(2, kEmTruncation);
                m.mean_error_bound = L.abs_error_bound / phi + em_err + boundary;
                m.variance_error_bound = L.abs_error_bound / phi +
                    k / (phi * phi) * L2.abs_error_bound + 2 * em_err +
                    boundary * (1.0 + 1.0 / kLn2);
            }
            break;
        }
    }
    return m;
}

DeviationBand deviation_band(const ModelMoments& moments, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("deviation_band: require c > 0");
    DeviationBand band;
    band.center = moments.mean;
    band.halfwidth = c * std::sqrt(moments.variance);
    band.c = c;
    band.coverage = analytic::normal_module_cdf(c);
    return band;
}

double z_score(double actual, const ModelMoments& moments) {
    if (!(moments.variance > 0.0)) throw std::domain_error("z_score: zero variance");
    return (actual - moments.mean) / std::sqrt(moments.variance);
}

VarianceChainReport variance_chain_check(std::uint64_t x,
                                         std::optional<primes::ProgressionClass> cls,
                                         const ModelConfig& cfg, double rel_slack) {
    if (x < 10) throw std::invalid_argument("variance_chain_check: require x >= 10");
    if (cls && x / cls->k < 10)
        throw std::invalid_argument("variance_chain_check: require x/k >= 10");

    VarianceChainReport rep;
    rep.x = x;
    rep.cls = cls;
    rep.rel_slack = rel_slack;

    const double xd = static_cast<double>(x);
    auto L = analytic::li(xd, cfg.quad_tol(xd));
    auto L2 = analytic::li2(xd, cfg.quad_tol(xd));
    rep.li_x = L.value;

    ModelMoments nat1 = model_moments(m1(), x, std::nullopt, cfg);
    ModelMoments nat2 = model_moments(m2(), x, std::nullopt, cfg);
    rep.d1 = nat1.variance;
    rep.d2 = nat2.variance;
    auto leq = [&](double a, double b, double err) {
        return a <= b + rel_slack * std::fabs(b) + err;
    };
    rep.natural_ok = leq(rep.d2, rep.d1, nat1.variance_error_bound + nat2.variance_error_bound) &&
                     leq(rep.d1, rep.li_x, nat1.variance_error_bound + L.abs_error_bound);

    if (cls) {
        double k = static_cast<double>(cls->k);
        double phi = static_cast<double>(cls->phi_k);
        rep.li_over_phi = L.value / phi;
        rep.d3 = L.value / phi - k * L.value * L.value / (phi * phi * xd);
        rep.d4 = L.value / phi - k / (phi * phi) * L2.value;
        double err = (L.abs_error_bound + L2.abs_error_bound) * (1.0 + k) / phi;
        rep.progression_ok = leq(rep.d4, rep.d3, err) && leq(rep.d3, rep.li_over_phi, err);
    }
    rep.pass = rep.natural_ok && rep.progression_ok;
    return rep;
}

}  // namespace primedist::models
