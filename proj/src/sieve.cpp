#include "primedist/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace primedist::primes {

namespace {

constexpr std::uint64_t kMaxInput = std::uint64_t{0x7FFFFFFFFFFFFFFF};  // 2^63 - 1

std::uint64_t isqrt64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::vector<std::uint32_t> simple_sieve(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t p = 2; p * p <= limit; ++p)
        if (!comp[p])
            for (std::uint64_t m = p * p; m <= limit; m += p) comp[m] = true;
    for (std::uint32_t n = 2; n <= limit; ++n)
        if (!comp[n]) out.push_back(n);
    return out;
}

}  // namespace

SieveSegment::SieveSegment(std::uint64_t lo, std::uint64_t hi)
    : lo_(lo), hi_(hi), words_((hi - lo + 63) / 64, ~std::uint64_t{0}) {
    // mask tail bits beyond hi so popcounts are exact
    std::uint64_t used = (hi - lo) % 64;
    if (used != 0) words_.back() &= (std::uint64_t{1} << used) - 1;
}

bool SieveSegment::flag(std::uint64_t index) const {
    return (words_[index >> 6] >> (index & 63)) & 1;
}

bool SieveSegment::is_prime(std::uint64_t n) const {
    if (n < lo_ || n >= hi_) throw std::out_of_range("SieveSegment::is_prime: n outside [lo, hi)");
    return flag(n - lo_);
}

void SieveSegment::clear(std::uint64_t index) {
    words_[index >> 6] &= ~(std::uint64_t{1} << (index & 63));
}

std::uint64_t SieveSegment::count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

std::uint64_t SieveSegment::count_upto(std::uint64_t n) const {
    if (n < lo_) return 0;
    if (n >= hi_ - 1) return count();
    std::uint64_t last = n - lo_;  // highest included index
    std::uint64_t c = 0;
    std::uint64_t full = (last + 1) >> 6;
    for (std::uint64_t w = 0; w < full; ++w) c += std::popcount(words_[w]);
    std::uint64_t rem = (last + 1) & 63;
    if (rem != 0) c += std::popcount(words_[full] & ((std::uint64_t{1} << rem) - 1));
    return c;
}

std::optional<std::uint64_t> SieveSegment::first_prime() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] != 0)
            return lo_ + (w << 6) + std::countr_zero(words_[w]);
    return std::nullopt;
}

std::vector<std::uint64_t> SieveSegment::primes() const {
    std::vector<std::uint64_t> out;
    for_each_prime([&](std::uint64_t p) { out.push_back(p); });
    return out;
}

std::shared_ptr<const std::vector<std::uint32_t>> base_primes(std::uint32_t limit) {
    static std::mutex mtx;
    static std::shared_ptr<const std::vector<std::uint32_t>> cache =
        std::make_shared<const std::vector<std::uint32_t>>();
    static std::uint32_t cached_limit = 0;

    std::lock_guard<std::mutex> lock(mtx);
    if (limit > cached_limit) {
        // grow geometrically so a sequence of slightly larger requests does
        // not resieve every time
        std::uint64_t grown = std::uint64_t{cached_limit} * 2 + 1024;
        auto target = static_cast<std::uint32_t>(
            std::min<std::uint64_t>(std::max<std::uint64_t>(limit, grown), 0xFFFFFFFFull));
        cache = std::make_shared<const std::vector<std::uint32_t>>(simple_sieve(target));
        cached_limit = target;
    }
    return cache;
}

namespace detail {

void check_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg, bool capped) {
    if (lo < 2 || lo >= hi)
        throw std::invalid_argument("sieve: require 2 <= lo < hi");
    if (hi > kMaxInput)
        throw std::invalid_argument("sieve: hi exceeds 2^63 - 1");
    if (capped && hi - lo > cfg.max_segment_flags)
        throw std::invalid_argument("sieve_segment: range of " + std::to_string(hi - lo) +
                                    " flags exceeds configured cap of " +
                                    std::to_string(cfg.max_segment_flags));
}

void fill_segment(SieveSegment& seg) {
    const std::uint64_t lo = seg.lo(), hi = seg.hi();
    const std::uint64_t root = isqrt64(hi - 1);
    auto primes = base_primes(static_cast<std::uint32_t>(root));
    for (std::uint32_t p : *primes) {
        const std::uint64_t p64 = p;
        if (p64 > root) break;
        // marking starts at p^2, so p itself survives when it lies in range
        std::uint64_t start = std::max(p64 * p64, ((lo + p64 - 1) / p64) * p64);
        for (std::uint64_t m = start; m < hi; m += p64) seg.clear(m - lo);
    }
}

}  // namespace detail

SieveSegment sieve_segment(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg) {
    detail::check_range(lo, hi, cfg, /*capped=*/true);
    SieveSegment seg(lo, hi);
    detail::fill_segment(seg);
    return seg;
}

std::uint64_t prime_count(std::uint64_t x, const SieveConfig& cfg) {
    if (x > kMaxInput) throw std::invalid_argument("prime_count: x exceeds 2^63 - 1");
    if (x < 2) return 0;
    std::uint64_t total = 0;
    stream_segments(2, x + 1, cfg, [&](const SieveSegment& seg) {
        total += seg.count();
        return true;
    });
    return total;
}

std::vector<std::uint32_t> primes_upto(std::uint64_t x, const SieveConfig& cfg) {
    if (x > 0xFFFFFFFFull)
        throw std::invalid_argument("primes_upto: x exceeds 32-bit materialization limit");
    std::vector<std::uint32_t> out;
    if (x < 2) return out;
    out.reserve(static_cast<std::size_t>(1.2 * static_cast<double>(x) /
                                         std::max(1.0, std::log(static_cast<double>(x)))) + 16);
    stream_segments(2, x + 1, cfg, [&](const SieveSegment& seg) {
        seg.for_each_prime([&](std::uint64_t p) { out.push_back(static_cast<std::uint32_t>(p)); });
        return true;
    });
    return out;
}

std::uint64_t totient(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("totient: k = 0");
    std::uint64_t phi = k, rest = k;
    auto primes = base_primes(static_cast<std::uint32_t>(isqrt64(k)));
    for (std::uint32_t p : *primes) {
        std::uint64_t p64 = p;
        if (p64 * p64 > rest) break;
        if (rest % p64 == 0) {
            phi -= phi / p64;
            while (rest % p64 == 0) rest /= p64;
        }
    }
    if (rest > 1) phi -= phi / rest;
    return phi;
}

std::vector<std::uint32_t> totient_table(std::uint32_t n) {
    std::vector<std::uint32_t> phi(static_cast<std::size_t>(n) + 1);
    std::iota(phi.begin(), phi.end(), 0u);
    for (std::uint64_t i = 2; i <= n; ++i)
        if (phi[i] == i)  // i is prime
            for (std::uint64_t j = i; j <= n; j += i) phi[j] -= phi[j] / i;
    return phi;
}

ProgressionClass ProgressionClass::make(std::uint64_t k, std::uint64_t l) {
    if (k < 1) throw std::invalid_argument("ProgressionClass: k must be >= 1");
    if (l >= k) throw std::invalid_argument("ProgressionClass: require 0 <= l < k");
    if (std::gcd(k, l) != 1)
        throw std::invalid_argument("ProgressionClass: gcd(k, l) must be 1");
    return ProgressionClass{k, l, totient(k)};
}

std::uint64_t prime_count_progression(std::uint64_t x, const ProgressionClass& cls,
                                      const SieveConfig& cfg) {
    if (std::gcd(cls.k, cls.l) != 1)
        throw std::invalid_argument("prime_count_progression: gcd(k, l) must be 1");
    if (x < 2) return 0;
    std::uint64_t total = 0;
    stream_segments(2, x + 1, cfg, [&](const SieveSegment& seg) {
        seg.for_each_prime([&](std::uint64_t p) {
            if (p % cls.k == cls.l) ++total;
        });
        return true;
    });
    return total;
}

IntervalPrimes primes_in_interval(std::uint64_t a, std::uint64_t b, const SieveConfig& cfg) {
    if (a < 1 || a >= b) throw std::invalid_argument("primes_in_interval: require 1 <= a < b");
    if (b > kMaxInput) throw std::invalid_argument("primes_in_interval: b exceeds 2^63 - 1");
    IntervalPrimes result;
    std::uint64_t lo = std::max<std::uint64_t>(a + 1, 2);
    if (lo >= b) return result;
    stream_segments(lo, b, cfg, [&](const SieveSegment& seg) {
        if (!result.first) result.first = seg.first_prime();
        result.count += seg.count();
        return true;
    });
    return result;
}

ResidueDeviation residue_max_deviation(std::uint64_t x, std::uint64_t k, double li_x,
                                       const SieveConfig& cfg) {
    if (k < 1) throw std::invalid_argument("residue_max_deviation: k must be >= 1");
    if (x < k) throw std::invalid_argument("residue_max_deviation: require x >= k");
    std::vector<std::uint64_t> cnt(k, 0);
    stream_segments(2, x + 1, cfg, [&](const SieveSegment& seg) {
        seg.for_each_prime([&](std::uint64_t p) { ++cnt[p % k]; });
        return true;
    });
    double phi = static_cast<double>(totient(k));
    double mu = li_x / phi;
    ResidueDeviation best{-1.0, 0};
    for (std::uint64_t l = 0; l < k; ++l) {
        if (std::gcd(k, l) != 1) continue;
        double dev = std::fabs(static_cast<double>(cnt[l]) - mu);
        if (dev > best.max_dev) best = {dev, l};
    }
    return best;
}

PrimeCountTable PrimeCountTable::build(std::vector<std::uint64_t> checkpoints,
                                       std::optional<std::uint64_t> modulus,
                                       const SieveConfig& cfg) {
    if (checkpoints.empty())
        throw std::invalid_argument("PrimeCountTable: no checkpoints");
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    if (checkpoints.back() > kMaxInput)
        throw std::invalid_argument("PrimeCountTable: checkpoint exceeds 2^63 - 1");
    if (modulus && *modulus < 1)
        throw std::invalid_argument("PrimeCountTable: modulus must be >= 1");

    PrimeCountTable table;
    table.checkpoints_ = checkpoints;
    table.counts_.resize(checkpoints.size(), 0);
    table.modulus_ = modulus;
    std::uint64_t k = modulus.value_or(0);
    std::vector<std::uint64_t> running_class(k, 0);
    if (modulus) table.class_counts_.resize(checkpoints.size());

    std::uint64_t running = 0;
    std::size_t next = 0;
    auto snapshot_until = [&](std::uint64_t p) {
        // snapshot every checkpoint strictly below p
        while (next < checkpoints.size() && checkpoints[next] < p) {
            table.counts_[next] = running;
            if (modulus) table.class_counts_[next] = running_class;
            ++next;
        }
    };

    if (checkpoints.back() >= 2) {
        stream_segments(2, checkpoints.back() + 1, cfg, [&](const SieveSegment& seg) {
            seg.for_each_prime([&](std::uint64_t p) {
                snapshot_until(p);
                ++running;
                if (modulus) ++running_class[p % k];
            });
            return next < checkpoints.size();
        });
    }
    while (next < checkpoints.size()) {
        table.counts_[next] = running;
        if (modulus) table.class_counts_[next] = running_class;
        ++next;
    }
    return table;
}

std::size_t PrimeCountTable::index_of(std::uint64_t x) const {
    auto it = std::lower_bound(checkpoints_.begin(), checkpoints_.end(), x);
    if (it == checkpoints_.end() || *it != x)
        throw std::invalid_argument("PrimeCountTable: x is not a checkpoint");
    return static_cast<std::size_t>(it - checkpoints_.begin());
}

std::uint64_t PrimeCountTable::count_at(std::uint64_t x) const {
    return counts_[index_of(x)];
}

std::uint64_t PrimeCountTable::class_count_at(std::uint64_t x, std::uint64_t l) const {
    if (!modulus_) throw std::logic_error("PrimeCountTable: built without a modulus");
    if (l >= *modulus_) throw std::invalid_argument("PrimeCountTable: l out of range");
    return class_counts_[index_of(x)][l];
}

}  // namespace primedist::primes
