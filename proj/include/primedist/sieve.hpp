// Exact prime enumeration and counting over intervals and residue classes.
// A segmented sieve of Eratosthenes with a shared base-prime cache is the
// ground truth every model check in this project is measured against.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace primedist::primes {

struct SieveConfig {
    // streaming granularity, in flags (bits) per segment
    std::size_t segment_flags = std::size_t{1} << 20;
    // hard cap for a single materialized segment
    std::size_t max_segment_flags = std::size_t{1} << 26;
};

// Primality flags for [lo, hi): bit i marks lo + i.
class SieveSegment {
public:
    SieveSegment(std::uint64_t lo, std::uint64_t hi);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    std::uint64_t size() const { return hi_ - lo_; }

    bool flag(std::uint64_t index) const;
    bool is_prime(std::uint64_t n) const;  // n must lie in [lo, hi)
    std::uint64_t count() const;
    std::uint64_t count_upto(std::uint64_t n) const;  // primes p in [lo, min(n + 1, hi))
    std::optional<std::uint64_t> first_prime() const;
    std::vector<std::uint64_t> primes() const;

    template <class Fn>
    void for_each_prime(Fn&& fn) const {
        for (std::uint64_t i = 0; i < size(); ++i)
            if (flag(i)) fn(lo_ + i);
    }

    void clear(std::uint64_t index);

private:
    std::uint64_t lo_ = 0, hi_ = 0;
    std::vector<std::uint64_t> words_;
};

// Primes <= limit from the shared cache. Callers keep the snapshot alive, so
// concurrent growth by another thread cannot invalidate it.
std::shared_ptr<const std::vector<std::uint32_t>> base_primes(std::uint32_t limit);

SieveSegment sieve_segment(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg = {});

// Streams [lo, hi) in configured segments; fn(const SieveSegment&) -> bool,
// return false to stop early.
template <class Fn>
void stream_segments(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg, Fn&& fn);

// pi(x): streams segments, never materializes all primes
std::uint64_t prime_count(std::uint64_t x, const SieveConfig& cfg = {});

// materialized list of primes <= x (x must fit in 32 bits)
std::vector<std::uint32_t> primes_upto(std::uint64_t x, const SieveConfig& cfg = {});

std::uint64_t totient(std::uint64_t k);
std::vector<std::uint32_t> totient_table(std::uint32_t n);  // phi(0..n)

// Residue class (k, l) with gcd(k, l) = 1. k = 1 is admitted as the single
// class (1, 0), phi(1) = 1.
struct ProgressionClass {
    std::uint64_t k = 1;
    std::uint64_t l = 0;
    std::uint64_t phi_k = 1;

    static ProgressionClass make(std::uint64_t k, std::uint64_t l);
};

// pi(x; k, l): primes p <= x with p = l (mod k)
std::uint64_t prime_count_progression(std::uint64_t x, const ProgressionClass& cls,
                                      const SieveConfig& cfg = {});

struct IntervalPrimes {
    std::uint64_t count = 0;
    std::optional<std::uint64_t> first;
};

// primes in the open interval (a, b)
IntervalPrimes primes_in_interval(std::uint64_t a, std::uint64_t b, const SieveConfig& cfg = {});

struct ResidueDeviation {
    double max_dev = 0.0;
    std::uint64_t argmax_l = 0;  // smallest l on ties
};

// max over l coprime to k of |pi(x;k,l) - li_x/phi(k)|
ResidueDeviation residue_max_deviation(std::uint64_t x, std::uint64_t k, double li_x,
                                       const SieveConfig& cfg = {});

// Exact pi(x), and optionally pi(x; k, l) for one modulus k, at a sorted set
// of checkpoints, collected in a single streaming pass.
class PrimeCountTable {
public:
    static PrimeCountTable build(std::vector<std::uint64_t> checkpoints,
                                 std::optional<std::uint64_t> modulus = std::nullopt,
                                 const SieveConfig& cfg = {});

    const std::vector<std::uint64_t>& checkpoints() const { return checkpoints_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t count_at(std::uint64_t x) const;
    std::optional<std::uint64_t> modulus() const { return modulus_; }
    std::uint64_t class_count_at(std::uint64_t x, std::uint64_t l) const;

private:
    std::size_t index_of(std::uint64_t x) const;

    std::vector<std::uint64_t> checkpoints_;
    std::vector<std::uint64_t> counts_;
    std::optional<std::uint64_t> modulus_;
    std::vector<std::vector<std::uint64_t>> class_counts_;  // [checkpoint][l]
};

namespace detail {
void check_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg, bool capped);
void fill_segment(SieveSegment& seg);
}  // namespace detail

template <class Fn>
void stream_segments(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg, Fn&& fn) {
    detail::check_range(lo, hi, cfg, /*capped=*/false);
    for (std::uint64_t start = lo; start < hi; ) {
        std::uint64_t stop = start + std::min<std::uint64_t>(cfg.segment_flags, hi - start);
        SieveSegment seg(start, stop);
        detail::fill_segment(seg);
        if (!fn(static_cast<const SieveSegment&>(seg))) return;
        start = stop;
    }
}

}  // namespace primedist::primes
