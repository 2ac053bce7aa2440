#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "gleeful/prime_engine.hpp"

namespace gleeful {

// A run of consecutive primes, carried as its end primes, length and sum.
// When the run lies inside a PrimeSource's precomputed list, the end positions
// are cached so slides cost O(1).
struct Chain {
    uint64_t pmin = 0;
    uint64_t pmax = 0;
    uint64_t sum = 0;
    uint32_t length = 0;
    std::optional<uint32_t> pmin_index;
    std::optional<uint32_t> pmax_index;
};

// Drop the smallest prime, append the next prime above the largest.
// Length is preserved; the sum strictly increases.
Chain slide(const Chain& c, const PrimeSource& src);

// Remove pmax; length must be >= 2.
Chain drop_largest(const Chain& c, const PrimeSource& src);

// Longest prefix-of-primes chain starting at 2 with sum <= x2.
Chain build_initial_chain(uint64_t x2, const PrimeSource& src);

// The unique length-m chain with minimal sum >= x1: seeded near pmax ~ x1/m,
// then corrected by sliding in either direction.
Chain build_chain_of_length(uint32_t m, uint64_t x1, const PrimeSource& src);

// Largest M with 2 + 3 + ... + p_M <= x  (0 for x < 2).
uint32_t max_chain_length(uint64_t x);

// For each length m = m_hi down to m_lo, passes the unique length-m chain with
// minimal sum >= x1. Runs the telescoping drop-largest-then-slide construction
// over a single forward prime stream, so the total cost is bounded by the
// largest prime touched, not by the sum of chain lengths.
void for_each_minimal_chain(uint64_t x1, uint32_t m_hi, uint32_t m_lo,
                            const std::function<void(const Chain&)>& fn);

}  // namespace gleeful
