#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "primedist/analytic.hpp"
#include "primedist/conjectures.hpp"
#include "primedist/sieve.hpp"

using namespace primedist;
using namespace primedist::conjectures;

TEST_CASE("grids") {
    CHECK(decade_grid(100, 100000) ==
          std::vector<std::uint64_t>{100, 1000, 10000, 100000});
    auto g = log_grid(10000, 100000000, 50);
    CHECK(g.front() == 10000);
    CHECK(g.back() == 100000000);
    CHECK(g.size() >= 45);  // rounding may merge a few
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("legendre scan") {
    auto scan = legendre_scan(30);
    CHECK(scan.all_pass);
    CHECK(scan.witnesses[0] == 2);   // (1, 4)
    CHECK(scan.witnesses[2] == 11);  // (9, 16)
    CHECK(scan.witnesses[3] == 17);  // (16, 25)

    auto big = legendre_scan(3000);
    CHECK(big.all_pass);
    for (std::uint64_t n = 1; n <= 3000; n += 371) {
        std::uint64_t w = big.witnesses[n - 1];
        CHECK(w > n * n);
        CHECK(w < (n + 1) * (n + 1));
        CHECK(oracles::is_prime_td(w));
    }
    CHECK_THROWS_AS(legendre_scan(0), std::invalid_argument);
}

TEST_CASE("interval_prime_check") {
    auto r = interval_prime_check(1000000, 3.0);
    CHECK(r.found);
    CHECK(r.interval_len == doctest::Approx(807.46).epsilon(1e-3));
    CHECK(r.prime.value() > 1000000);
    CHECK(double(r.prime.value()) <= 1000000 + r.interval_len);

    CHECK(interval_prime_check(10000, 3.0).found);
    CHECK_THROWS_AS(interval_prime_check(10000, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(interval_prime_check(50, 3.0), std::invalid_argument);
}

TEST_CASE("gap bound triple") {
    auto g = gap_bound_triple(1000000, 1.0, 1.0, 1.0);
    CHECK(g.cramer_gap == doctest::Approx(190.9).epsilon(1e-3));
    CHECK(g.model_gap == doctest::Approx(269.2).epsilon(1e-3));
    CHECK(g.riemann_gap == doctest::Approx(13815.5).epsilon(1e-4));
    CHECK(g.ordering_holds);
    // with unit constants the cramer/model crossing sits near 3.3e5
    CHECK(g.ordering_threshold > 3.0e5);
    CHECK(g.ordering_threshold < 3.6e5);

    // small-x regime: evaluated, ordering does not hold yet
    auto small = gap_bound_triple(1000, 1.0, 1.0, 1.0);
    CHECK_FALSE(small.ordering_holds);
    auto ten4 = gap_bound_triple(10000, 1.0, 1.0, 1.0);
    CHECK_FALSE(ten4.ordering_holds);  // ln^2 x still exceeds sqrt(D1) here

    CHECK_THROWS_AS(gap_bound_triple(100, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(gap_bound_triple(10000, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("sqrt(D1) < sqrt(x) past e^2") {
    for (double x : {10.0, 100.0, 1e4, 1e6, 1e8}) {
        double L = analytic::li(x, 1e-6).value;
        CHECK(std::sqrt(L - L * L / x) < std::sqrt(x));
    }
}

TEST_CASE("littlewood ratio values and shape") {
    CHECK(littlewood_ratio(1e6) == doctest::Approx(0.06746).epsilon(2e-3));
    CHECK(littlewood_ratio(1e8) < littlewood_ratio(1e6));

    // the ratio peaks near 3.6e4: it still rises over the first decade and
    // only then decays, and the decade-grid decay factor stays near 1.1
    CHECK(littlewood_ratio(1e4) == doctest::Approx(0.0692643).epsilon(1e-4));
    CHECK(littlewood_ratio(1e5) == doctest::Approx(0.0693536).epsilon(1e-4));
    CHECK(littlewood_ratio(1e5) > littlewood_ratio(1e4));
    double factor = littlewood_ratio(1e4) / littlewood_ratio(1e8);
    CHECK(factor > 1.0);
    CHECK(factor < 1.2);

    CHECK_THROWS_AS(littlewood_ratio(10.0), std::invalid_argument);
}

TEST_CASE("li minus pi sign") {
    auto table = li_minus_pi_sign({100, 1000, 10000, 100000, 1000000});
    CHECK(table.all_positive);
    CHECK(table.rows.front().diff == doctest::Approx(4.08).epsilon(1e-2));
    CHECK(table.rows.back().diff == doctest::Approx(128.5).epsilon(1e-3));
    CHECK_THROWS_AS(li_minus_pi_sign({2'000'000'000ull}), std::invalid_argument);
}

TEST_CASE("chebyshev bounds") {
    auto c6 = chebyshev_bounds_check(1000000);
    CHECK(c6.ratio == doctest::Approx(1.0845).epsilon(1e-3));
    CHECK(c6.lower_ok);
    CHECK(c6.upper_ok);

    auto c5 = chebyshev_bounds_check(100000);
    CHECK(c5.ratio == doctest::Approx(1.1043).epsilon(1e-3));
    CHECK(c5.upper_ok);  // narrowly below 1.106

    CHECK_THROWS_AS(chebyshev_bounds_check(1000), std::invalid_argument);
}

TEST_CASE("residue race") {
    auto r10 = residue_race(10);
    CHECK(r10.abs_diff == 1);  // 5 = 1 mod 4; 3, 7 = 3 mod 4
    auto r100 = residue_race(100);
    CHECK(r100.count_1mod4 == 11);
    CHECK(r100.count_3mod4 == 13);
    CHECK(r100.abs_diff == 2);
    REQUIRE(r100.normalized.has_value());
    double lnx = std::log(100.0);
    double scale = std::sqrt(100.0) * std::log(std::log(lnx)) / lnx;
    CHECK(*r100.normalized == doctest::Approx(2.0 / scale).epsilon(1e-12));
    CHECK(residue_race(10000).abs_diff == 10);
}

TEST_CASE("eh_sum equals the brute-force oracle exactly") {
    for (auto [x, a] :
         {std::pair<std::uint64_t, double>{1000, 0.5}, {10000, 0.5}, {10000, 0.3}}) {
        auto rec = eh_sum(x, a);
        CAPTURE(x);
        CAPTURE(a);
        CHECK(rec.sum == oracles::eh_brute(x, rec.k_max, rec.li_x));
    }
    // regression baselines
    CHECK(eh_sum(1000, 0.5).sum == doctest::Approx(147.469225).epsilon(1e-5));
    CHECK(eh_sum(10000, 0.5).sum == doctest::Approx(653.935881).epsilon(1e-5));
    CHECK(eh_sum(10000, 0.3).sum == doctest::Approx(152.363643).epsilon(1e-5));
    CHECK(eh_sum(1000, 0.5).k_max == 31);
    CHECK(eh_sum(10000, 0.3).k_max == 15);
}

TEST_CASE("eh_sum structure") {
    auto rec = eh_sum(10000, 0.5);
    // the k = 1 term alone is |pi(x) - Li(x)|
    double k1 = std::fabs(1229.0 - rec.li_x);
    CHECK(rec.sum >= k1);
    CHECK(eh_sum(10000, 0.3).sum <= rec.sum);

    CHECK_THROWS_AS(eh_sum(100, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(eh_sum(10000, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(eh_sum(100000000, 0.9), std::invalid_argument);  // x^a > 1e4
}

TEST_CASE("eh crossover and bound report") {
    // x^{0.25} = ln^2 x crosses for good near 2.15e11
    double xc = eh_crossover(0.5, 2.0);
    CHECK(xc == doctest::Approx(2.149e11).epsilon(0.01));

    auto rec = eh_sum(10000, 0.5);
    auto rep = eh_bound_check(rec, 2.0);
    double lnx = std::log(10000.0);
    CHECK(rep.record.fitted_c ==
          doctest::Approx(rec.sum * lnx * lnx / 10000.0).epsilon(1e-12));
    CHECK(rep.record.bound == doctest::Approx(10000.0 / (lnx * lnx)).epsilon(1e-12));
    CHECK(rep.crossover_x == doctest::Approx(xc).epsilon(1e-9));
    CHECK(rep.majorant_vs_power == ChainStatus::NotAssertable);  // desk x below crossover
    CHECK(rep.sqrt_li_majorant > 0.0);
    CHECK(rep.power_form_weighted < rep.power_form_plain);

    // totient chain: sum 1/sqrt(phi) <= 2 + sqrt(lnln(x^a)/c3) sum 1/sqrt(k)
    CHECK(rep.totient_chain_holds);
    CHECK(rep.inv_sqrt_phi_sum < rep.inv_sqrt_phi_bound);

    CHECK_THROWS_AS(eh_bound_check(rec, 0.0), std::invalid_argument);
}

TEST_CASE("landau totient scan") {
    auto scan = landau_totient_scan(1000000);
    // the global minimum sits at n = 3 where lnln is tiny
    CHECK(scan.argmin == 3);
    CHECK(scan.min_value == doctest::Approx(0.0626986).epsilon(1e-4));
    // in the top decade the primorial 510510 is the worst case, near e^-gamma
    CHECK(scan.upper_decade_argmin == 510510);
    CHECK(scan.upper_decade_min == doctest::Approx(0.4650156).epsilon(1e-4));
    CHECK(scan.min_value > 0.0);
    CHECK_THROWS_AS(landau_totient_scan(2), std::invalid_argument);
}

TEST_CASE("li expansion constant sits in (1, 2) and drifts toward 1") {
    double prev = 2.0;
    for (double x : {1e2, 1e4, 1e6, 1e8}) {
        double c = li_expansion_constant(x);
        CAPTURE(x);
        CHECK(c > 1.0);
        CHECK(c < 2.0);
        if (x > 1e2) CHECK(c < prev);
        prev = c;
    }
    CHECK(li_expansion_constant(1e4) == doctest::Approx(1.3519).epsilon(1e-3));
    CHECK_THROWS_AS(li_expansion_constant(2.0), std::invalid_argument);
}

TEST_CASE("variance head report") {
    auto head = variance_head_report();
    CHECK(head.integral_2_7 == doctest::Approx(0.7119).epsilon(7e-4));
    CHECK(head.integral_2_7 ==
          doctest::Approx(7.0 / std::log(7.0) - 2.0 / std::log(2.0)).epsilon(1e-12));
    CHECK(head.sum_2_to_7 == doctest::Approx(0.375746).epsilon(1e-4));
    CHECK(head.sum_2_to_6 == doctest::Approx(0.125939).epsilon(1e-4));
}
