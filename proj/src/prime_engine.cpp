#include "gleeful/prime_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace gleeful {
namespace {

// Sieving anything past this would need >512 MB for the bit array.
constexpr uint64_t kMaxSieveLimit = 1ull << 33;

constexpr uint64_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                     29, 31, 37, 41, 43, 47, 53, 59, 61,
                                     67, 71, 73, 79, 83, 89, 97};

// Montgomery arithmetic mod an odd n, for the strong-probable-prime tests.
struct Montgomery {
    uint64_t n;
    uint64_t ninv;  // -n^-1 mod 2^64
    uint64_t r1;    // 2^64 mod n
    uint64_t r2;    // 2^128 mod n

    explicit Montgomery(uint64_t mod) : n(mod) {
        uint64_t inv = mod;  // Newton iterations for n^-1 mod 2^64
        for (int i = 0; i < 5; ++i) inv *= 2 - mod * inv;
        ninv = ~inv + 1;
        r1 = (~uint64_t{0}) % mod + 1;
        r2 = static_cast<uint64_t>((__uint128_t{r1} * r1) % mod);
    }
    uint64_t reduce(__uint128_t t) const {
        uint64_t m = static_cast<uint64_t>(t) * ninv;
        // t + m*n can exceed 2^128; add the high halves plus the carry out of
        // the (zero by construction) low half.
        __uint128_t u = (t >> 64) + ((__uint128_t{m} * n) >> 64) +
                        (static_cast<uint64_t>(t) != 0 ? 1 : 0);
        return static_cast<uint64_t>(u >= n ? u - n : u);
    }
    uint64_t mul(uint64_t a, uint64_t b) const { return reduce(__uint128_t{a} * b); }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t x = r1;
        while (e) {
            if (e & 1) x = mul(x, a);
            a = mul(a, a);
            e >>= 1;
        }
        return x;
    }
};

// Strong-probable-prime test to base a; n odd, n > a.
bool sprp(const Montgomery& mg, uint64_t a) {
    uint64_t d = mg.n - 1;
    int r = __builtin_ctzll(d);
    d >>= r;
    uint64_t x = mg.pow(mg.reduce(__uint128_t{a} * mg.r2), d);
    uint64_t neg1 = mg.n - mg.r1;
    if (x == mg.r1 || x == neg1) return true;
    for (int i = 1; i < r; ++i) {
        x = mg.mul(x, x);
        if (x == neg1) return true;
    }
    return false;
}

// Marks odd composites in `words` covering odd values lo, lo+2, ..., using the
// base prime p starting at odd multiple `start`.
inline void mark_multiples(std::vector<uint64_t>& words, uint64_t lo, uint64_t hi, uint64_t p,
                           uint64_t start) {
    for (uint64_t m = start; m <= hi; m += 2 * p) {
        uint64_t bit = (m - lo) >> 1;
        words[bit >> 6] |= 1ull << (bit & 63);
    }
}

inline uint64_t first_odd_multiple_at_least(uint64_t p, uint64_t lo) {
    uint64_t m = (lo + p - 1) / p * p;
    if ((m & 1) == 0) m += p;
    return std::max(m, p * p);
}

}  // namespace

uint64_t isqrt(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

PrimeList sieve_upto(uint64_t limit) {
    if (limit > kMaxSieveLimit)
        throw CapacityError("sieve_upto: limit exceeds memory budget");
    PrimeList out;
    out.limit = limit;
    if (limit < 2) return out;
    out.primes.push_back(2);
    if (limit < 3) return out;
    // Odd-only bit sieve: bit i represents 3 + 2i.
    uint64_t n_odd = (limit - 1) / 2;  // count of odds in [3, limit]
    std::vector<uint64_t> words((n_odd + 63) / 64, 0);
    uint64_t root = isqrt(limit);
    for (uint64_t v = 3; v <= root; v += 2) {
        uint64_t bit = (v - 3) / 2;
        if (words[bit >> 6] & (1ull << (bit & 63))) continue;
        for (uint64_t m = v * v; m <= limit; m += 2 * v) {
            uint64_t b = (m - 3) / 2;
            words[b >> 6] |= 1ull << (b & 63);
        }
    }
    out.primes.reserve(n_odd / 8 + 16);
    for (uint64_t i = 0; i < n_odd; ++i)
        if (!(words[i >> 6] & (1ull << (i & 63)))) out.primes.push_back(3 + 2 * i);
    return out;
}

std::vector<uint64_t> primes_in_interval(uint64_t a, uint64_t b, const PrimeList& base) {
    std::vector<uint64_t> out;
    if (b < a || b < 2) return out;
    if (a < 2) a = 2;
    if (a <= 2) out.push_back(2);
    uint64_t lo = std::max<uint64_t>(a, 3);
    if ((lo & 1) == 0) ++lo;
    if (lo > b) return out;
    uint64_t n_odd = (b - lo) / 2 + 1;
    std::vector<uint64_t> words((n_odd + 63) / 64, 0);
    uint64_t root = isqrt(b);
    for (uint64_t p : base.primes) {
        if (p > root) break;
        if (p == 2) continue;
        mark_multiples(words, lo, b, p, first_odd_multiple_at_least(p, lo));
    }
    for (uint64_t i = 0; i < n_odd; ++i) {
        if (!(words[i >> 6] & (1ull << (i & 63)))) {
            uint64_t v = lo + 2 * i;
            if (v > 2) out.push_back(v);
        }
    }
    return out;
}

std::vector<uint64_t> primes_in_interval(uint64_t a, uint64_t b) {
    if (b < a || b < 2) return {};
    PrimeList base = sieve_upto(std::max<uint64_t>(isqrt(b), 2));
    return primes_in_interval(a, b, base);
}

namespace {

// Witness sets with published thresholds (Jaeschke; Sorenson-Webster).
bool passes_witnesses(const Montgomery& mg, uint64_t n, size_t first) {
    static constexpr uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    size_t count;
    if (n < 3215031751ull)
        count = 4;
    else if (n < 3474749660383ull)
        count = 6;
    else if (n < 341550071728321ull)
        count = 7;
    else if (n < 3825123056546413051ull)
        count = 9;
    else
        count = 12;
    for (size_t i = first; i < count; ++i)
        if (!sprp(mg, kBases[i])) return false;
    return true;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 101 * 101) return true;
    Montgomery mg(n);
    return passes_witnesses(mg, n, 0);
}

GrowingPrimeList::GrowingPrimeList(uint64_t initial_limit) {
    list_ = sieve_upto(std::max<uint64_t>(initial_limit, 1u << 16));
}

void GrowingPrimeList::ensure_limit(uint64_t limit) {
    while (list_.limit < limit) {
        uint64_t new_limit = std::max(limit, list_.limit * 2);
        // own primes already cover sqrt(new_limit) once limit >= 2^16
        auto more = primes_in_interval(list_.limit + 1, new_limit, list_);
        list_.primes.insert(list_.primes.end(), more.begin(), more.end());
        list_.limit = new_limit;
    }
}

void GrowingPrimeList::ensure_count(size_t count) {
    while (list_.primes.size() < count) ensure_limit(list_.limit * 2);
}

PrimeStream::PrimeStream() {
    buf_ = {2};
    seg_lo_ = 3;
}

void PrimeStream::refill() {
    constexpr uint64_t kSegOdds = 1u << 18;  // 2^18 odd values per segment
    uint64_t lo = seg_lo_;
    uint64_t hi = lo + 2 * (kSegOdds - 1);
    if (base_limit_ * base_limit_ < hi) {
        // extend base primes to cover sqrt(hi)
        uint64_t new_limit = std::max<uint64_t>(isqrt(hi) + 1024, base_limit_ * 2);
        PrimeList ext = sieve_upto(new_limit);
        for (uint64_t p : ext.primes) {
            if (p > 2 && p > base_limit_) {
                base_.push_back(static_cast<uint32_t>(p));
                next_mult_.push_back(p * p);
            }
        }
        base_limit_ = new_limit;
    }
    words_.assign(kSegOdds / 64, 0);
    for (size_t i = 0; i < base_.size(); ++i) {
        uint64_t p = base_[i];
        if (p * p > hi) break;
        uint64_t m = next_mult_[i];
        for (; m <= hi; m += 2 * p) {
            uint64_t bit = (m - lo) >> 1;
            words_[bit >> 6] |= 1ull << (bit & 63);
        }
        next_mult_[i] = m;
    }
    buf_.clear();
    pos_ = 0;
    for (uint64_t w = 0; w < words_.size(); ++w) {
        uint64_t bits = ~words_[w];
        while (bits) {
            int b = __builtin_ctzll(bits);
            bits &= bits - 1;
            buf_.push_back(lo + 2 * (w * 64 + static_cast<uint64_t>(b)));
        }
    }
    seg_lo_ = hi + 2;
}

PrimeSource::PrimeSource(Mode mode, uint64_t bound)
    : mode_(mode), bound_(std::max<uint64_t>(bound, 1u << 16)) {
    base_ = sieve_upto(bound_);
    patch_base_ = sieve_upto(1u << 16);
}

uint64_t PrimeSource::next_prime(uint64_t n) const {
    if (n < base_.primes.back()) {
        auto it = std::upper_bound(base_.primes.begin(), base_.primes.end(), n);
        return *it;
    }
    return mode_ == Mode::kTest ? next_by_test(n) : next_by_patch(n);
}

uint64_t PrimeSource::prev_prime(uint64_t n) const {
    if (n <= 2) throw std::domain_error("prev_prime: no prime below 2");
    if (n <= base_.limit) {
        auto it = std::lower_bound(base_.primes.begin(), base_.primes.end(), n);
        return *(it - 1);
    }
    return mode_ == Mode::kTest ? prev_by_test(n) : prev_by_patch(n);
}

const std::vector<uint64_t>& PrimeSource::patch(uint64_t index) const {
    auto it = patches_.find(index);
    if (it != patches_.end()) return it->second;
    uint64_t lo = index << kPatchShift;
    uint64_t hi = lo + kPatchSpan - 1;
    uint64_t root = isqrt(hi);
    if (patch_base_.limit < root) {
        uint64_t new_limit = std::max(root + 1024, patch_base_.limit * 2);
        patch_base_ = sieve_upto(new_limit);
    }
    auto ps = primes_in_interval(std::max<uint64_t>(lo, 2), hi, patch_base_);
    if (mode_ == Mode::kSieve && patches_.size() >= kSieveCacheCap) {
        patches_.erase(patch_order_.front());
        patch_order_.pop_front();
    }
    patch_order_.push_back(index);
    return patches_.emplace(index, std::move(ps)).first->second;
}

uint64_t PrimeSource::next_by_patch(uint64_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    for (uint64_t idx = (n + 1) >> kPatchShift;; ++idx) {
        const auto& ps = patch(idx);
        auto it = std::upper_bound(ps.begin(), ps.end(), n);
        if (it != ps.end()) return *it;
    }
}

uint64_t PrimeSource::prev_by_patch(uint64_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    for (uint64_t idx = (n - 1) >> kPatchShift;; --idx) {
        const auto& ps = patch(idx);
        auto it = std::lower_bound(ps.begin(), ps.end(), n);
        if (it != ps.begin()) return *(it - 1);
        if (idx == 0) throw std::domain_error("prev_prime: no prime below 2");
    }
}

namespace {

// Wheel mod 30 plus trial division by primes < 100, then staged probable-prime
// tests. Candidates arrive from a window of width ~2 ln n.
inline bool window_candidate_is_prime(uint64_t c) {
    static constexpr bool kWheelOk[30] = {false, true,  false, false, false, false, false, true,
                                          false, false, false, true,  false, true,  false, false,
                                          false, true,  false, true,  false, false, false, true,
                                          false, false, false, false, false, true};
    if (!kWheelOk[c % 30]) return false;
    for (uint64_t p : kSmallPrimes) {
        if (p < 7) continue;
        if (c % p == 0) return c == p;
    }
    Montgomery mg(c);
    if (!sprp(mg, 2)) return false;  // base-2 prefilter
    return passes_witnesses(mg, c, 1);
}

}  // namespace

uint64_t PrimeSource::next_by_test(uint64_t n) const {
    uint64_t window = std::max<uint64_t>(2 * static_cast<uint64_t>(std::log(static_cast<double>(n))), 16);
    uint64_t lo = n + 1;
    for (;;) {
        uint64_t hi = lo + window;
        if (hi < lo) throw std::overflow_error("next_prime: search window past 2^64");
        for (uint64_t c = lo | 1; c <= hi; c += 2)
            if (window_candidate_is_prime(c)) return c;
        lo = hi + 1;
    }
}

uint64_t PrimeSource::prev_by_test(uint64_t n) const {
    uint64_t window = std::max<uint64_t>(2 * static_cast<uint64_t>(std::log(static_cast<double>(n))), 16);
    uint64_t hi = n - 1;
    for (;;) {
        uint64_t lo = hi > window ? hi - window : 3;
        for (uint64_t c = (hi & 1) ? hi : hi - 1; c >= lo && c > 2; c -= 2)
            if (window_candidate_is_prime(c)) return c;
        if (lo <= 3) return 2;
        hi = lo - 1;
    }
}

}  // namespace gleeful
