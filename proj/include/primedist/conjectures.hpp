// Applications of the models against exact prime data: the Legendre scan,
// gap-bound comparisons, the Littlewood ratio decay, the sign of Li - pi,
// Chebyshev bounds, the mod-4 residue race, and the Elliott-Halberstam sum
// with its majorant chain.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "primedist/sieve.hpp"

namespace primedist::conjectures {

// powers of 10 in [lo, hi]
std::vector<std::uint64_t> decade_grid(std::uint64_t lo, std::uint64_t hi);

// rounded log-spaced grid, deduplicated, endpoints included
std::vector<std::uint64_t> log_grid(std::uint64_t lo, std::uint64_t hi, int points);

struct LegendreScan {
    bool all_pass = false;
    // witnesses[i] = first prime in (n^2, (n+1)^2) for n = i + 1, 0 when none
    std::vector<std::uint64_t> witnesses;
};

// Checks every n <= n_max for a prime strictly between n^2 and (n+1)^2.
LegendreScan legendre_scan(std::uint64_t n_max);

struct IntervalPrimeResult {
    bool found = false;
    std::optional<std::uint64_t> prime;
    double interval_len = 0.0;
};

// First prime in (x, x + C*sqrt(Li(x) - Li^2(x)/x)]. Throws when the interval
// is degenerate (length below 1).
IntervalPrimeResult interval_prime_check(std::uint64_t x, double c);

struct GapBoundTriple {
    std::uint64_t x = 0;
    double riemann_gap = 0.0;  // A sqrt(x) ln x
    double model_gap = 0.0;    // C sqrt(Li - Li^2/x)
    double cramer_gap = 0.0;   // B ln^2 x
    double a = 1.0, b = 1.0, c = 1.0;
    bool ordering_holds = false;       // cramer < model < riemann at this x
    double ordering_threshold = 0.0;   // smallest x where the ordering persists
};

GapBoundTriple gap_bound_triple(std::uint64_t x, double a, double b, double c);

// x * (lnlnln x)^2 / (ln^2 x * (li(x) - li2(x))); requires x > e^e
double littlewood_ratio(double x);

struct SignRow {
    std::uint64_t x = 0;
    double li_x = 0.0;
    std::uint64_t pi_x = 0;
    double diff = 0.0;  // Li(x) - pi(x)
};

struct SignTable {
    std::vector<SignRow> rows;
    bool all_positive = false;
};

SignTable li_minus_pi_sign(const std::vector<std::uint64_t>& checkpoints);

struct ChebyshevCheck {
    std::uint64_t x = 0;
    std::uint64_t pi_x = 0;
    double ratio = 0.0;  // pi(x) ln x / x
    bool lower_ok = false;
    bool upper_ok = false;
};

// 0.921 x/ln x < pi(x) < 1.106 x/ln x; validity floor x >= 1e5
ChebyshevCheck chebyshev_bounds_check(std::uint64_t x);

struct ResidueRace {
    std::uint64_t x = 0;
    std::uint64_t count_1mod4 = 0;
    std::uint64_t count_3mod4 = 0;
    std::uint64_t abs_diff = 0;
    // abs_diff / (sqrt(x) lnlnln x / ln x), meaningful for x > e^e
    std::optional<double> normalized;
};

ResidueRace residue_race(std::uint64_t x);

struct EhSumRecord {
    std::uint64_t x = 0;
    double a = 0.0;           // exponent, moduli run to x^a
    std::uint64_t k_max = 0;  // floor(x^a)
    double li_x = 0.0;
    double sum = 0.0;         // sum over k of the worst-residue deviation
    // filled by eh_bound_check
    double big_a = 0.0;
    double bound = 0.0;     // x / ln^A x
    double fitted_c = 0.0;  // sum * ln^A x / x
};

// Exact per-class counts via a single sieve pass with residue bucketing.
// Requires 0 < a < 1, x >= 1e3, x^a <= 1e4.
EhSumRecord eh_sum(std::uint64_t x, double a);

struct LandauScan {
    std::uint64_t n_max = 0;
    double min_value = 0.0;  // min of phi(n) lnln n / n over [3, n_max]
    std::uint64_t argmin = 0;
    double upper_decade_min = 0.0;  // same, restricted to (n_max/10, n_max]
    std::uint64_t upper_decade_argmin = 0;
};

LandauScan landau_totient_scan(std::uint32_t n_max);

enum class ChainStatus { NotAssertable, Holds, Fails };

struct EhBoundReport {
    EhSumRecord record;                // with big_a/bound/fitted_c filled
    double sqrt_li_majorant = 0.0;     // sum_k sqrt(li_x / phi(k))
    double power_form_weighted = 0.0;  // x^{(a+1)/2} sqrt(lnln x / ln x)
    double power_form_plain = 0.0;     // x^{(a+1)/2}
    double majorant_fitted_c = 0.0;    // sqrt_li_majorant / power_form_weighted
    double crossover_x = 0.0;          // smallest x with x^{(1-a)/2} > ln^A x
    ChainStatus majorant_vs_power = ChainStatus::NotAssertable;
    // totient lower-bound constant measured over the moduli actually used
    double landau_c3 = 0.0;
    LandauScan landau;  // reference scan to 1e6
    // sum_k 1/sqrt(phi(k)) <= 2 + sqrt(lnln(x^a)/c3) * sum_{3<=k} 1/sqrt(k)
    double inv_sqrt_phi_sum = 0.0;
    double inv_sqrt_phi_bound = 0.0;
    bool totient_chain_holds = false;
};

EhBoundReport eh_bound_check(const EhSumRecord& record, double big_a);

// smallest x (beyond the small-x dip) with x^{(1-a)/2} > ln^A x
double eh_crossover(double a, double big_a);

// the x-dependent constant in Li(x) = x/ln x + C(x) x/ln^2 x,
// C(x) = (Li(x) - x/ln x) ln^2 x / x; reported, tends to 1 from above
double li_expansion_constant(double x);

// Head-of-range bookkeeping for the variance function 1/ln - 1/ln^2 on [2, 7]:
// the integral and the discrete sums over both plausible index ranges.
struct VarianceHeadReport {
    double integral_2_7 = 0.0;   // = 7/ln 7 - 2/ln 2
    double sum_2_to_7 = 0.0;
    double sum_2_to_6 = 0.0;
};

VarianceHeadReport variance_head_report();

}  // namespace primedist::conjectures
