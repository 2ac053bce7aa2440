#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gleeful {

// Thrown when a request would exceed a configured memory budget.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

uint64_t isqrt(uint64_t n);

// All primes up to `limit`, ascending. Immutable once built; safe to share.
struct PrimeList {
    std::vector<uint64_t> primes;
    uint64_t limit = 0;
};

// Exactly the primes <= limit. limit < 2 gives an empty list.
PrimeList sieve_upto(uint64_t limit);

// Primes p with a <= p <= b, via segmented sieve with base primes up to sqrt(b).
std::vector<uint64_t> primes_in_interval(uint64_t a, uint64_t b);
// Same, but reusing a caller-held base list (base.limit must be >= sqrt(b)).
std::vector<uint64_t> primes_in_interval(uint64_t a, uint64_t b, const PrimeList& base);

// Deterministic for all 64-bit n: trial division by primes < 100, then
// strong-probable-prime tests on published witness sets.
bool is_prime(uint64_t n);

// A prime list that can be extended in place. Not thread safe; give each
// worker its own.
class GrowingPrimeList {
public:
    explicit GrowingPrimeList(uint64_t initial_limit = 1u << 16);
    const std::vector<uint64_t>& primes() const { return list_.primes; }
    uint64_t limit() const { return list_.limit; }
    void ensure_limit(uint64_t limit);
    // Guarantees primes()[count - 1] exists.
    void ensure_count(size_t count);

private:
    PrimeList list_;
};

// Streams 2, 3, 5, 7, ... from an incremental segmented sieve.
class PrimeStream {
public:
    PrimeStream();
    uint64_t next() {
        if (pos_ == buf_.size()) refill();
        return buf_[pos_++];
    }

private:
    void refill();

    std::vector<uint64_t> buf_;
    size_t pos_ = 0;
    uint64_t seg_lo_ = 0;  // next odd segment start
    std::vector<uint32_t> base_;       // odd base primes
    std::vector<uint64_t> next_mult_;  // next odd multiple to cross off, per base prime
    uint64_t base_limit_ = 1;
    std::vector<uint64_t> words_;
};

// Supplier of next/previous prime. All modes agree on every query; they differ
// in how primes beyond the precomputed bound B are produced:
//   kList  — sieved patches, kept for the lifetime of the source
//   kSieve — sieved patches with a bounded FIFO cache
//   kTest  — window of size 2 ln n sieved by tiny primes, survivors prime-tested
// Queries below B are answered from the precomputed list. Thread safe.
class PrimeSource {
public:
    enum class Mode { kList, kSieve, kTest };

    static constexpr uint64_t kDefaultBound = 1u << 20;

    explicit PrimeSource(Mode mode, uint64_t bound = kDefaultBound);

    // Smallest prime > n (n >= 1).
    uint64_t next_prime(uint64_t n) const;
    // Largest prime < n; n <= 2 is a domain error.
    uint64_t prev_prime(uint64_t n) const;
    bool is_prime(uint64_t n) const { return gleeful::is_prime(n); }

    Mode mode() const { return mode_; }
    uint64_t bound() const { return bound_; }
    const PrimeList& base() const { return base_; }

private:
    static constexpr int kPatchShift = 17;
    static constexpr uint64_t kPatchSpan = 1ull << kPatchShift;
    static constexpr size_t kSieveCacheCap = 512;

    const std::vector<uint64_t>& patch(uint64_t index) const;
    uint64_t next_by_patch(uint64_t n) const;
    uint64_t prev_by_patch(uint64_t n) const;
    uint64_t next_by_test(uint64_t n) const;
    uint64_t prev_by_test(uint64_t n) const;

    Mode mode_;
    uint64_t bound_;
    PrimeList base_;
    mutable std::mutex mu_;
    mutable std::map<uint64_t, std::vector<uint64_t>> patches_;
    mutable std::deque<uint64_t> patch_order_;
    mutable PrimeList patch_base_;
};

}  // namespace gleeful
