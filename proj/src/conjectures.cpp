#include "primedist/conjectures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "primedist/analytic.hpp"
#include "primedist/models.hpp"

namespace primedist::conjectures {

namespace {

constexpr double kEPowE = 15.154262241479264;  // e^e
constexpr double kLn2 = 0.6931471805599453094;

double quad_tol(double x) {
    double t = 1e-13 * x;
    return t < 1e-10 ? 1e-10 : t;
}

double d1_variance(double x) {
    double L = analytic::li(x, quad_tol(x)).value;
    return L - L * L / x;
}

}  // namespace

std::vector<std::uint64_t> decade_grid(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> grid;
    for (std::uint64_t x = 1; x <= hi / 10 * 10; x *= 10)
        if (x >= lo && x <= hi) grid.push_back(x);
    return grid;
}

std::vector<std::uint64_t> log_grid(std::uint64_t lo, std::uint64_t hi, int points) {
    if (lo < 1 || lo > hi || points < 2)
        throw std::invalid_argument("log_grid: bad parameters");
    std::vector<std::uint64_t> grid;
    double la = std::log(static_cast<double>(lo));
    double lb = std::log(static_cast<double>(hi));
    for (int i = 0; i < points; ++i) {
        double t = static_cast<double>(i) / (points - 1);
        auto x = static_cast<std::uint64_t>(std::llround(std::exp(la + t * (lb - la))));
        x = std::clamp(x, lo, hi);
        if (grid.empty() || x > grid.back()) grid.push_back(x);
    }
    if (grid.back() != hi) grid.push_back(hi);
    return grid;
}

LegendreScan legendre_scan(std::uint64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("legendre_scan: require n_max >= 1");
    if (n_max >= 3'000'000'000ull)
        throw std::invalid_argument("legendre_scan: (n_max + 1)^2 would overflow");
    LegendreScan scan;
    scan.all_pass = true;
    scan.witnesses.resize(n_max, 0);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        auto found = primes::primes_in_interval(n * n, (n + 1) * (n + 1));
        if (found.first) {
            scan.witnesses[n - 1] = *found.first;
        } else {
            scan.all_pass = false;
        }
    }
    return scan;
}

IntervalPrimeResult interval_prime_check(std::uint64_t x, double c) {
    if (x < 100) throw std::invalid_argument("interval_prime_check: require x >= 100");
    if (!(c > 0.0)) throw std::invalid_argument("interval_prime_check: require c > 0");
    double len = c * std::sqrt(d1_variance(static_cast<double>(x)));
    if (len < 1.0)
        throw std::invalid_argument("interval_prime_check: degenerate interval, length < 1");
    IntervalPrimeResult res;
    res.interval_len = len;
    auto hi = x + static_cast<std::uint64_t>(len);  // candidates in (x, x + floor(len)]
    auto found = primes::primes_in_interval(x, hi + 1);
    res.found = found.count > 0;
    res.prime = found.first;
    return res;
}

GapBoundTriple gap_bound_triple(std::uint64_t x, double a, double b, double c) {
    if (x < 1000) throw std::invalid_argument("gap_bound_triple: require x >= 1e3");
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
        throw std::invalid_argument("gap_bound_triple: constants must be positive");
    GapBoundTriple g;
    g.x = x;
    g.a = a;
    g.b = b;
    g.c = c;
    double xd = static_cast<double>(x);
    double lnx = std::log(xd);
    g.riemann_gap = a * std::sqrt(xd) * lnx;
    g.model_gap = c * std::sqrt(d1_variance(xd));
    g.cramer_gap = b * lnx * lnx;
    g.ordering_holds = g.cramer_gap < g.model_gap && g.model_gap < g.riemann_gap;

    // smallest x where both orderings persist, found by doubling + bisection
    auto holds_at = [&](double t) {
        double l = std::log(t);
        double mg = c * std::sqrt(d1_variance(t));
        return b * l * l < mg && mg < a * std::sqrt(t) * l;
    };
    double lo = 8.0, hi = 8.0;
    bool found = false;
    for (int i = 0; i < 48; ++i) {
        if (holds_at(hi)) { found = true; break; }
        lo = hi;
        hi *= 2.0;
        if (hi > 1e15) break;
    }
    if (!found) {
        g.ordering_threshold = std::numeric_limits<double>::infinity();
        return g;
    }
    for (int i = 0; i < 80 && hi - lo > std::max(1.0, 1e-9 * hi); ++i) {
        double mid = 0.5 * (lo + hi);
        if (holds_at(mid))
            hi = mid;
        else
            lo = mid;
    }
    g.ordering_threshold = hi;
    return g;
}

double littlewood_ratio(double x) {
    if (!(x > kEPowE))
        throw std::invalid_argument("littlewood_ratio: require x > e^e");
    double lnx = std::log(x);
    double lll = std::log(std::log(lnx));
    double denom_integral = analytic::li(x, quad_tol(x)).value -
                            analytic::li2(x, quad_tol(x)).value;
    return x * lll * lll / (lnx * lnx * denom_integral);
}

SignTable li_minus_pi_sign(const std::vector<std::uint64_t>& checkpoints) {
    for (std::uint64_t x : checkpoints)
        if (x > 1'000'000'000ull)
            throw std::invalid_argument("li_minus_pi_sign: checkpoints above 1e9");
    auto table = primes::PrimeCountTable::build(checkpoints);
    SignTable out;
    out.all_positive = true;
    for (std::uint64_t x : table.checkpoints()) {
        SignRow row;
        row.x = x;
        row.pi_x = table.count_at(x);
        row.li_x = x >= 2 ? analytic::li(static_cast<double>(x), quad_tol(double(x))).value : 0.0;
        row.diff = row.li_x - static_cast<double>(row.pi_x);
        if (row.diff <= 0.0) out.all_positive = false;
        out.rows.push_back(row);
    }
    return out;
}

ChebyshevCheck chebyshev_bounds_check(std::uint64_t x) {
    if (x < 100'000)
        throw std::invalid_argument("chebyshev_bounds_check: below validity floor 1e5");
    ChebyshevCheck chk;
    chk.x = x;
    chk.pi_x = primes::prime_count(x);
    double xd = static_cast<double>(x);
    double base = xd / std::log(xd);
    chk.ratio = static_cast<double>(chk.pi_x) / base;
    chk.lower_ok = 0.921 * base < static_cast<double>(chk.pi_x);
    chk.upper_ok = static_cast<double>(chk.pi_x) < 1.106 * base;
    return chk;
}

ResidueRace residue_race(std::uint64_t x) {
    if (x < 10) throw std::invalid_argument("residue_race: require x >= 10");
    ResidueRace race;
    race.x = x;
    primes::stream_segments(2, x + 1, {}, [&](const primes::SieveSegment& seg) {
        seg.for_each_prime([&](std::uint64_t p) {
            if (p % 4 == 1) ++race.count_1mod4;
            if (p % 4 == 3) ++race.count_3mod4;
        });
        return true;
    });
    race.abs_diff = race.count_1mod4 > race.count_3mod4
                        ? race.count_1mod4 - race.count_3mod4
                        : race.count_3mod4 - race.count_1mod4;
    double xd = static_cast<double>(x);
    if (xd > kEPowE) {
        double lnx = std::log(xd);
        double scale = std::sqrt(xd) * std::log(std::log(lnx)) / lnx;
        race.normalized = static_cast<double>(race.abs_diff) / scale;
    }
    return race;
}

EhSumRecord eh_sum(std::uint64_t x, double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("eh_sum: require 0 < a < 1");
    if (x < 1000) throw std::invalid_argument("eh_sum: require x >= 1e3");
    long double kmax_ld = std::floor(powl(static_cast<long double>(x), static_cast<long double>(a)) +
                                     1e-9L);
    if (kmax_ld > 1e4L) throw std::invalid_argument("eh_sum: x^a exceeds the work bound 1e4");
    auto kmax = static_cast<std::uint64_t>(kmax_ld);

    EhSumRecord rec;
    rec.x = x;
    rec.a = a;
    rec.k_max = kmax;
    rec.li_x = analytic::li(static_cast<double>(x), quad_tol(double(x))).value;

    std::vector<std::uint32_t> prime_list = primes::primes_upto(x);
    std::vector<std::uint32_t> phi = primes::totient_table(static_cast<std::uint32_t>(kmax));

    // worst-residue deviation per modulus; each k is an independent unit, so
    // a parallel schedule reproduces the sequential values exactly
    std::vector<double> dev(kmax + 1, 0.0);
    const auto kmax_i = static_cast<std::int64_t>(kmax);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 1; k <= kmax_i; ++k) {
        const auto ku = static_cast<std::uint32_t>(k);
        std::vector<std::uint32_t> cnt(ku, 0);
        for (std::uint32_t p : prime_list) ++cnt[p % ku];
        double mu = rec.li_x / static_cast<double>(phi[ku]);
        double best = -1.0;
        for (std::uint32_t l = 0; l < ku; ++l) {
            if (std::gcd(ku, l) != 1u) continue;
            double d = std::fabs(static_cast<double>(cnt[l]) - mu);
            if (d > best) best = d;
        }
        dev[static_cast<std::size_t>(k)] = best;
    }
    // plain ascending accumulation; the brute-force oracle reproduces it bit
    // for bit
    double total = 0.0;
    for (std::uint64_t k = 1; k <= kmax; ++k) total += dev[k];
    rec.sum = total;
    return rec;
}

LandauScan landau_totient_scan(std::uint32_t n_max) {
    if (n_max < 3) throw std::invalid_argument("landau_totient_scan: require n_max >= 3");
    LandauScan scan;
    scan.n_max = n_max;
    std::vector<std::uint32_t> phi = primes::totient_table(n_max);
    scan.min_value = std::numeric_limits<double>::infinity();
    scan.upper_decade_min = std::numeric_limits<double>::infinity();
    std::uint32_t decade_lo = n_max / 10;
    for (std::uint32_t n = 3; n <= n_max; ++n) {
        double v = static_cast<double>(phi[n]) *
                   std::log(std::log(static_cast<double>(n))) / static_cast<double>(n);
        if (v < scan.min_value) {
            scan.min_value = v;
            scan.argmin = n;
        }
        if (n > decade_lo && v < scan.upper_decade_min) {
            scan.upper_decade_min = v;
            scan.upper_decade_argmin = n;
        }
    }
    return scan;
}

double eh_crossover(double a, double big_a) {
    if (!(a > 0.0 && a < 1.0) || !(big_a > 0.0))
        throw std::invalid_argument("eh_crossover: require 0 < a < 1 and A > 0");
    // on u = ln x the condition reads g(u) = (1-a)/2 * u - A ln u > 0;
    // g has its minimum at u = 2A/(1-a)
    double coef = 0.5 * (1.0 - a);
    double u_min = big_a / coef;
    if (coef * u_min - big_a * std::log(u_min) > 0.0)
        return std::exp(1.0);  // holds beyond the trivial dip already
    double lo = u_min, hi = u_min;
    while (coef * hi - big_a * std::log(hi) <= 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        if (coef * mid - big_a * std::log(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return std::exp(hi);
}

EhBoundReport eh_bound_check(const EhSumRecord& record, double big_a) {
    if (record.k_max < 1 || !(record.sum >= 0.0))
        throw std::invalid_argument("eh_bound_check: invalid record");
    if (!(big_a > 0.0)) throw std::invalid_argument("eh_bound_check: require A > 0");

    EhBoundReport rep;
    rep.record = record;
    rep.record.big_a = big_a;
    double xd = static_cast<double>(record.x);
    double lnx = std::log(xd);
    double lnA = std::pow(lnx, big_a);
    rep.record.bound = xd / lnA;
    rep.record.fitted_c = record.sum * lnA / xd;

    std::vector<std::uint32_t> phi =
        primes::totient_table(static_cast<std::uint32_t>(record.k_max));
    analytic::CompensatedSum majorant, inv_sqrt_phi, inv_sqrt_k;
    double c3 = std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 1; k <= record.k_max; ++k) {
        majorant.add(std::sqrt(record.li_x / static_cast<double>(phi[k])));
        inv_sqrt_phi.add(1.0 / std::sqrt(static_cast<double>(phi[k])));
        if (k >= 3) {
            inv_sqrt_k.add(1.0 / std::sqrt(static_cast<double>(k)));
            double v = static_cast<double>(phi[k]) *
                       std::log(std::log(static_cast<double>(k))) / static_cast<double>(k);
            if (v < c3) c3 = v;
        }
    }
    rep.sqrt_li_majorant = majorant.value();
    rep.power_form_plain = std::pow(xd, 0.5 * (record.a + 1.0));
    rep.power_form_weighted = rep.power_form_plain * std::sqrt(std::log(lnx) / lnx);
    rep.majorant_fitted_c = rep.sqrt_li_majorant / rep.power_form_weighted;
    rep.crossover_x = eh_crossover(record.a, big_a);
    if (xd > rep.crossover_x)
        rep.majorant_vs_power = rep.sqrt_li_majorant <= rep.power_form_weighted
                                    ? ChainStatus::Holds
                                    : ChainStatus::Fails;

    rep.landau = landau_totient_scan(1'000'000);
    rep.landau_c3 = record.k_max >= 3 ? c3 : rep.landau.min_value;
    rep.inv_sqrt_phi_sum = inv_sqrt_phi.value();
    double lnln_xa = std::log(record.a * lnx);  // lnln(x^a)
    rep.inv_sqrt_phi_bound = 2.0 + std::sqrt(lnln_xa / rep.landau_c3) * inv_sqrt_k.value();
    rep.totient_chain_holds = rep.inv_sqrt_phi_sum <= rep.inv_sqrt_phi_bound;
    return rep;
}

double li_expansion_constant(double x) {
    if (!(x > std::exp(1.0)))
        throw std::invalid_argument("li_expansion_constant: require x > e");
    double lnx = std::log(x);
    double L = analytic::li(x, quad_tol(x)).value;
    return (L - x / lnx) * lnx * lnx / x;
}

VarianceHeadReport variance_head_report() {
    VarianceHeadReport rep;
    rep.integral_2_7 = 7.0 / std::log(7.0) - 2.0 / kLn2;
    for (int i = 2; i <= 7; ++i) {
        double l = std::log(static_cast<double>(i));
        double term = 1.0 / l - 1.0 / (l * l);
        rep.sum_2_to_7 += term;
        if (i <= 6) rep.sum_2_to_6 += term;
    }
    return rep;
}

}  // namespace primedist::conjectures
