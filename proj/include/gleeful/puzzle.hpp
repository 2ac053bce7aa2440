#pragma once

#include <cstdint>
#include <vector>

#include "gleeful/prime_engine.hpp"
#include "gleeful/stats.hpp"

namespace gleeful {

// One processed segment: f_counts[i] = f(x1 + i) for x1 <= x1 + i < x2.
struct Segment {
    uint64_t x1 = 0;
    uint64_t x2 = 0;
    std::vector<uint8_t> f_counts;
};

struct PuzzleConfig {
    uint64_t x = 0;
    uint64_t delta = 0;  // segment length; 0 = round(x^(2/3))
    unsigned workers = 1;
    uint64_t prime_bound = PrimeSource::kDefaultBound;
};

struct PuzzleStats {
    uint64_t segments = 0;
    uint32_t max_m_cutoff = 0;       // largest per-segment cutoff observed
    uint64_t peak_memory_bytes = 0;  // counter array footprint per worker
};

// Work budget s for sliding a length-m chain up to x1 within a segment of
// length delta; floor(delta / (m ln(x1/m))), at least 1. A non-positive log
// (x1 <= m, possible only in the first segments) means sliding is cheap and
// the budget is effectively unbounded.
uint64_t compute_work_budget(uint32_t m, uint64_t x1, uint64_t delta);

// Exact f over [x1, x2) by the sliding sweep: descend from the maximal
// prefix chain, recording sums while each length's budget holds, then
// rebuild short chains near x1/m from scratch. Counters above 255 throw.
Segment process_segment(uint64_t x1, uint64_t x2, uint64_t x, const PrimeSource& src);

// Histogram of f over [1, x]; segments run on cfg.workers threads and are
// merged (and fed to the sink) in ascending order.
Histogram run_puzzle(const PuzzleConfig& cfg, const EventSink& sink = {},
                     PuzzleStats* stats = nullptr);

}  // namespace gleeful
