#pragma once

#include <cstdint>
#include <vector>

#include "gleeful/chain.hpp"
#include "gleeful/prime_engine.hpp"
#include "gleeful/stats.hpp"

namespace gleeful {

enum class PrimeBackend { kSieve, kTest };
enum class QueueImpl { kHeap, kMap };

// chains[m] = the length-m chain with minimal sum >= x1, for m = 1..M(x2).
// Index 0 is unused.
using ChainArray = std::vector<Chain>;

struct PqConfig {
    uint64_t x1 = 1;
    uint64_t x2 = 0;  // exclusive
    QueueImpl queue = QueueImpl::kHeap;
};

struct PqStats {
    uint64_t peak_queue = 0;
    uint64_t total_slides = 0;
};

struct PqRunConfig {
    uint64_t x = 0;
    uint64_t interval_len = 0;  // 0 = x / workers, at least round(x^(2/3))
    PrimeBackend backend = PrimeBackend::kSieve;
    QueueImpl queue = QueueImpl::kHeap;
    unsigned workers = 1;
    uint64_t prime_bound = 0;  // 0 = round(x^0.6) clamped to [2^16, 2^26]
};

// Minimal chains of every length with sum >= x1: long chains by telescoping
// from the longest downward, short ones (length <= round(x1^(1/3))) built
// from scratch near x1/m.
ChainArray setup_chain_array(uint64_t x1, uint64_t x2, const PrimeSource& src);

// Sweeps n over [x1, x2): f(n) = number of queued chains with sum = n; each
// is slid and requeued while its sum stays below x2. Histogram over
// [x1, x2-1]; events go to the sink in ascending n.
Histogram run_pq_interval(const PqConfig& cfg, const PrimeSource& src,
                          const EventSink& sink = {}, PqStats* stats = nullptr);

// Full run over [1, x]: disjoint intervals on cfg.workers threads, merged
// (and fed to the sink) in ascending order.
Histogram run_pq(const PqRunConfig& cfg, const EventSink& sink = {}, PqStats* stats = nullptr);

}  // namespace gleeful
