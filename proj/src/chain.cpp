#include "gleeful/chain.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace gleeful {
namespace {

// Attaches list positions when the chain lies inside the source's base list.
void attach_indices(Chain& c, const PrimeSource& src) {
    const auto& base = src.base().primes;
    if (c.pmax > src.base().limit) return;
    auto lo = std::lower_bound(base.begin(), base.end(), c.pmin);
    c.pmin_index = static_cast<uint32_t>(lo - base.begin());
    c.pmax_index = *c.pmin_index + c.length - 1;
}

}  // namespace

Chain slide(const Chain& c, const PrimeSource& src) {
    if (c.length == 0) throw std::invalid_argument("slide: empty chain");
    const auto& base = src.base().primes;
    Chain out = c;
    if (c.pmin_index && *c.pmin_index + 1 < base.size()) {
        out.pmin_index = *c.pmin_index + 1;
        out.pmin = base[*out.pmin_index];
    } else {
        out.pmin = src.next_prime(c.pmin);
        out.pmin_index.reset();
    }
    if (c.pmax_index && *c.pmax_index + 1 < base.size()) {
        out.pmax_index = *c.pmax_index + 1;
        out.pmax = base[*out.pmax_index];
    } else {
        out.pmax = src.next_prime(c.pmax);
        out.pmax_index.reset();
    }
    uint64_t kept = c.sum - c.pmin;
    if (__builtin_add_overflow(kept, out.pmax, &out.sum))
        throw std::overflow_error("slide: chain sum past 2^64");
    return out;
}

Chain drop_largest(const Chain& c, const PrimeSource& src) {
    if (c.length < 2) throw std::domain_error("drop_largest: chain of length 1");
    Chain out = c;
    out.sum = c.sum - c.pmax;
    out.length = c.length - 1;
    if (c.pmax_index && *c.pmax_index > 0) {
        out.pmax_index = *c.pmax_index - 1;
        out.pmax = src.base().primes[*out.pmax_index];
    } else {
        out.pmax = src.prev_prime(c.pmax);
        out.pmax_index.reset();
    }
    return out;
}

Chain build_initial_chain(uint64_t x2, const PrimeSource& src) {
    if (x2 < 2) throw std::domain_error("build_initial_chain: x2 < 2");
    Chain c;
    c.pmin = 2;
    uint64_t p = 2;
    while (c.sum + p <= x2) {
        c.sum += p;
        c.pmax = p;
        ++c.length;
        p = src.next_prime(p);
    }
    attach_indices(c, src);
    return c;
}

Chain build_chain_of_length(uint32_t m, uint64_t x1, const PrimeSource& src) {
    if (m == 0) throw std::invalid_argument("build_chain_of_length: m = 0");
    std::deque<uint64_t> run;
    uint64_t seed = x1 / m;
    if (seed >= 2) {
        run.push_front(seed == 2 ? 2 : src.prev_prime(seed + 1));
        while (run.size() < m && run.front() > 2) run.push_front(src.prev_prime(run.front()));
    } else {
        run.push_back(2);
    }
    while (run.size() < m) run.push_back(src.next_prime(run.back()));
    uint64_t sum = std::accumulate(run.begin(), run.end(), uint64_t{0});
    while (sum < x1) {  // undershoot: slide forward
        uint64_t nx = src.next_prime(run.back());
        sum += nx - run.front();
        run.pop_front();
        run.push_back(nx);
    }
    while (run.front() > 2) {  // overshoot: slide back while still >= x1
        uint64_t q = src.prev_prime(run.front());
        uint64_t cand = sum - run.back() + q;
        if (cand < x1) break;
        sum = cand;
        run.pop_back();
        run.push_front(q);
    }
    Chain c;
    c.pmin = run.front();
    c.pmax = run.back();
    c.sum = sum;
    c.length = m;
    attach_indices(c, src);
    return c;
}

uint32_t max_chain_length(uint64_t x) {
    PrimeStream ps;
    uint64_t sum = 0;
    uint32_t m = 0;
    for (;;) {
        uint64_t p = ps.next();
        if (sum + p > x) return m;
        sum += p;
        ++m;
    }
}

void for_each_minimal_chain(uint64_t x1, uint32_t m_hi, uint32_t m_lo,
                            const std::function<void(const Chain&)>& fn) {
    if (m_lo < 1) m_lo = 1;
    if (m_hi < m_lo) return;
    PrimeStream ps;
    // The ring caches the stream by absolute prime index. A dropped largest
    // prime stays cached so the next level's slides re-add it instead of
    // skipping ahead in the stream.
    size_t cap = static_cast<size_t>(m_hi) + 2;
    std::vector<uint64_t> ring(cap);
    uint64_t filled = 0;  // primes pulled so far; ring holds indices < filled
    auto prime_at = [&](uint64_t i) {
        while (filled <= i) ring[filled++ % cap] = ps.next();
        return ring[i % cap];
    };
    uint64_t sum = 0;
    for (uint32_t i = 0; i < m_hi; ++i) sum += prime_at(i);
    uint64_t lo = 0, hi = m_hi - 1;  // chain = primes[lo..hi]
    for (uint32_t m = m_hi;; --m) {
        while (sum < x1) {
            sum += prime_at(hi + 1) - prime_at(lo);
            ++hi;
            ++lo;
        }
        Chain c;
        c.pmin = prime_at(lo);
        c.pmax = prime_at(hi);
        c.sum = sum;
        c.length = m;
        fn(c);
        if (m == m_lo) break;
        sum -= prime_at(hi);
        --hi;
    }
}

}  // namespace gleeful
