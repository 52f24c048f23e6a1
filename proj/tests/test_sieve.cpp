#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "primedist/sieve.hpp"

using namespace primedist::primes;

TEST_CASE("sieve_segment marks exactly the primes") {
    auto seg = sieve_segment(2, 12);
    CHECK(seg.primes() == std::vector<std::uint64_t>{2, 3, 5, 7, 11});

    CHECK(sieve_segment(24, 28).count() == 0);
    CHECK(sieve_segment(9, 16).primes() == std::vector<std::uint64_t>{11, 13});
}

TEST_CASE("sieve flags match trial division up to 1e5") {
    const std::uint64_t limit = 100000;
    auto seg = sieve_segment(2, limit + 1, SieveConfig{1u << 20, 1u << 20});
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (seg.is_prime(n) != oracles::is_prime_td(n)) {
            CAPTURE(n);
            CHECK(seg.is_prime(n) == oracles::is_prime_td(n));
        }
    }
    // prefix counts give pi(x) for every x <= 1e5 at once
    std::uint64_t running = 0;
    std::mt19937_64 rng(12345);
    std::vector<std::uint64_t> sampled;
    for (int i = 0; i < 64; ++i) sampled.push_back(rng() % limit + 2);
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (seg.is_prime(n)) ++running;
        CHECK(seg.count_upto(n) == running);
    }
    for (std::uint64_t x : sampled) CHECK(prime_count(x) == seg.count_upto(x));
}

TEST_CASE("prime_count known values") {
    CHECK(prime_count(0) == 0);
    CHECK(prime_count(1) == 0);
    CHECK(prime_count(2) == 1);
    CHECK(prime_count(100) == 25);
    CHECK(prime_count(100) == oracles::pi_td(100));
    const std::uint64_t pi6 = oracles::full_sieve_pi(1000000);
    CHECK(pi6 == 78498);
    CHECK(prime_count(1000000) == pi6);
}

TEST_CASE("prime_count is monotone") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 24; ++i) {
        std::uint64_t a = rng() % 50000;
        std::uint64_t b = a + rng() % 50000;
        CHECK(prime_count(a) <= prime_count(b));
    }
}

TEST_CASE("sieving is independent of segment partitioning") {
    const std::uint64_t n = 100000;
    auto whole = sieve_segment(2, n);
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 4; ++trial) {
        // random cut points
        std::vector<std::uint64_t> cuts{2, n};
        for (int i = 0; i < 6; ++i) cuts.push_back(2 + rng() % (n - 2));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::uint64_t total = 0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            auto part = sieve_segment(cuts[i], cuts[i + 1]);
            total += part.count();
            for (std::uint64_t v = cuts[i]; v < cuts[i + 1]; v += 997)
                CHECK(part.is_prime(v) == whole.is_prime(v));
        }
        CHECK(total == whole.count());
    }
}

TEST_CASE("sieve_segment argument checks") {
    CHECK_THROWS_AS(sieve_segment(1, 10), std::invalid_argument);
    CHECK_THROWS_AS(sieve_segment(10, 10), std::invalid_argument);
    CHECK_THROWS_AS(sieve_segment(12, 10), std::invalid_argument);
    SieveConfig tiny;
    tiny.max_segment_flags = 16;
    CHECK_THROWS_AS(sieve_segment(2, 100, tiny), std::invalid_argument);
    CHECK_NOTHROW(sieve_segment(2, 18, tiny));
}

TEST_CASE("prime_count_progression") {
    CHECK(prime_count_progression(100, ProgressionClass::make(4, 1)) == 11);
    CHECK(prime_count_progression(100, ProgressionClass::make(4, 3)) == 13);
    // k = 1 admits the single class (1, 0) and counts everything
    CHECK(prime_count_progression(10, ProgressionClass::make(1, 0)) == 4);

    CHECK_THROWS_AS(ProgressionClass::make(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(ProgressionClass::make(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(ProgressionClass::make(4, 5), std::invalid_argument);
}

TEST_CASE("classes partition the primes") {
    for (std::uint64_t k : {1, 2, 3, 4, 6, 7, 12, 30, 49, 50}) {
        for (std::uint64_t x : {1000, 10000}) {
            std::uint64_t class_sum = 0;
            for (std::uint64_t l = 0; l < k; ++l)
                if (std::gcd(k, l) == 1)
                    class_sum += prime_count_progression(x, ProgressionClass::make(k, l));
            std::uint64_t dividing = 0;
            for (std::uint64_t p = 2; p <= k; ++p)
                if (oracles::is_prime_td(p) && k % p == 0 && p <= x) ++dividing;
            CAPTURE(k);
            CAPTURE(x);
            CHECK(class_sum + dividing == prime_count(x));
        }
    }
}

TEST_CASE("primes_in_interval") {
    auto r = primes_in_interval(9, 16);
    CHECK(r.count == 2);
    CHECK(r.first == 11);

    r = primes_in_interval(24, 28);
    CHECK(r.count == 0);
    CHECK(!r.first);

    r = primes_in_interval(1, 4);
    CHECK(r.count == 2);
    CHECK(r.first == 2);

    CHECK_THROWS_AS(primes_in_interval(10, 10), std::invalid_argument);
    CHECK_THROWS_AS(primes_in_interval(0, 5), std::invalid_argument);
}

TEST_CASE("totient") {
    CHECK(totient(1) == 1);
    CHECK(totient(12) == 4);
    CHECK(totient(97) == 96);
    CHECK_THROWS_AS(totient(0), std::invalid_argument);
    for (std::uint64_t k = 1; k <= 200; ++k) CHECK(totient(k) == oracles::phi_brute(k));

    auto table = totient_table(200);
    for (std::uint64_t k = 1; k <= 200; ++k) CHECK(table[k] == totient(k));
}

TEST_CASE("residue_max_deviation") {
    const double li100 = 29.0809778039621371;  // int_2^100 dt/ln t
    auto dev = residue_max_deviation(100, 4, li100);
    // classes hold 11 and 13 primes against a shared Li/phi of 14.54
    CHECK(dev.max_dev == doctest::Approx(std::fabs(11.0 - li100 / 2.0)).epsilon(1e-12));
    CHECK(dev.argmax_l == 1);

    // k = 1 degenerates to |pi(x) - Li(x)|
    auto one = residue_max_deviation(100, 1, li100);
    CHECK(one.max_dev == doctest::Approx(std::fabs(25.0 - li100)).epsilon(1e-12));
    CHECK(one.argmax_l == 0);

    // direct two-class enumeration for k = 3
    const double li1e5 = 9628.7638372707;
    auto d3 = residue_max_deviation(100000, 3, li1e5);
    std::uint64_t c1 = prime_count_progression(100000, ProgressionClass::make(3, 1));
    std::uint64_t c2 = prime_count_progression(100000, ProgressionClass::make(3, 2));
    double mu = li1e5 / 2.0;
    double expect = std::max(std::fabs(double(c1) - mu), std::fabs(double(c2) - mu));
    CHECK(d3.max_dev == doctest::Approx(expect).epsilon(1e-15));

    CHECK_THROWS_AS(residue_max_deviation(3, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(residue_max_deviation(10, 0, 1.0), std::invalid_argument);
}

TEST_CASE("prime count table") {
    std::vector<std::uint64_t> cps{1, 10, 100, 1000, 10000};
    auto table = PrimeCountTable::build(cps, 4);
    CHECK(table.count_at(1) == 0);
    CHECK(table.count_at(10) == 4);
    CHECK(table.count_at(100) == 25);
    CHECK(table.count_at(1000) == 168);
    CHECK(table.count_at(10000) == 1229);
    for (std::size_t i = 1; i < table.counts().size(); ++i)
        CHECK(table.counts()[i - 1] <= table.counts()[i]);

    // per-class counts against the direct op; 2 is the only prime dividing 4
    CHECK(table.class_count_at(100, 1) == 11);
    CHECK(table.class_count_at(100, 3) == 13);
    CHECK(table.class_count_at(100, 1) + table.class_count_at(100, 3) + 1 ==
          table.count_at(100));

    CHECK_THROWS_AS(table.count_at(55), std::invalid_argument);
    auto plain = PrimeCountTable::build({100});
    CHECK_THROWS_AS(plain.class_count_at(100, 1), std::logic_error);
}

TEST_CASE("segment accessors") {
    auto seg = sieve_segment(10, 30);
    CHECK(seg.first_prime() == 11);
    CHECK(seg.count() == 6);  // 11 13 17 19 23 29
    CHECK(seg.count_upto(19) == 4);
    CHECK(seg.count_upto(9) == 0);
    CHECK_THROWS_AS(seg.is_prime(30), std::out_of_range);
    CHECK(primes_upto(30).size() == 10);
}
