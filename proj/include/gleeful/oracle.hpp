#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gleeful/chain.hpp"
#include "gleeful/prime_engine.hpp"

namespace gleeful {

inline constexpr uint64_t kDefaultOracleCap = 10'000'000;

// f[n] = number of ways to write n as a sum of consecutive primes, for
// 1 <= n <= x, by enumerating every chain directly. Reference implementation
// for tests and small runs; throws CapacityError when x exceeds `cap`.
std::vector<uint32_t> f_values_bruteforce(uint64_t x, uint64_t cap = kDefaultOracleCap);

// Counts of n in [1, x] with f(n) = k, indexed by k.
std::vector<uint64_t> histogram_from_f(const std::vector<uint32_t>& f);

struct Representation {
    uint32_t length = 0;
    uint64_t pmin = 0;
    uint64_t pmax = 0;
    uint64_t sum = 0;

    friend bool operator==(const Representation&, const Representation&) = default;
};

struct RepsConfig {
    // Lengths below test_cutoff locate their chain with per-candidate
    // primality tests; lengths whose chains sit below stream_bound use one
    // shared sieve stream; the band in between sieves a patch per chain.
    uint32_t test_cutoff = 64;
    uint64_t stream_bound = uint64_t{1} << 34;
    uint64_t prime_bound = PrimeSource::kDefaultBound;
};

// All representations of n, longest first. For each candidate length m the
// minimal chain with sum >= n is unique, so it suffices to build it and keep
// it when the sum lands exactly on n.
std::vector<Representation> representations_of(uint64_t n, const RepsConfig& cfg = {});

// One "length,pmin,pmax" row per representation, no header.
void write_representations_csv(std::ostream& out, const std::vector<Representation>& reps);

}  // namespace gleeful
