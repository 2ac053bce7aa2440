#include "gleeful/puzzle.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "gleeful/chain.hpp"

namespace gleeful {

uint64_t compute_work_budget(uint32_t m, uint64_t x1, uint64_t delta) {
    double lg = std::log(static_cast<double>(x1) / m);
    if (!(lg > 0)) return UINT64_MAX;
    double s = static_cast<double>(delta) / (m * lg);
    if (s >= static_cast<double>(UINT64_MAX)) return UINT64_MAX;
    return std::max<uint64_t>(static_cast<uint64_t>(s), 1);
}

namespace {

struct SegmentResult {
    Segment seg;
    uint32_t m_cutoff = 0;
};

SegmentResult process_segment_impl(uint64_t x1, uint64_t x2, uint64_t x,
                                   const PrimeSource& src) {
    if (x1 < 2 || x2 <= x1 || x2 > x + 1)
        throw std::invalid_argument("process_segment: need 2 <= x1 < x2 <= x+1");
    uint64_t delta = x2 - x1;
    SegmentResult res;
    res.seg = {x1, x2, std::vector<uint8_t>(delta, 0)};
    auto& f = res.seg.f_counts;
    auto record = [&](uint64_t sum) {
        if (sum < x1 || sum >= x2) return;
        uint8_t& c = f[sum - x1];
        if (c == 255) throw std::overflow_error("process_segment: f(n) exceeds 255");
        ++c;
    };

    GrowingPrimeList gl;
    auto prime = [&](uint64_t i) -> uint64_t {
        gl.ensure_count(i + 1);
        return gl.primes()[i];
    };

    // Maximal prefix chain from 2 with sum <= x2; primes[lo..hi] inclusive.
    uint64_t lo = 0, sum = prime(0);
    uint64_t hi = 0;
    while (sum + prime(hi + 1) <= x2) sum += prime(++hi);

    uint32_t m_cutoff = 0;
    for (uint32_t m = static_cast<uint32_t>(hi - lo + 1); m > m_cutoff; --m) {
        uint64_t budget = compute_work_budget(m, x1, delta);
        uint64_t slides = 0;
        while (sum < x1) {
            sum += prime(hi + 1) - prime(lo);
            ++hi;
            ++lo;
            if (++slides >= budget && m_cutoff == 0) m_cutoff = m;
        }
        uint64_t clo = lo, chi = hi, csum = sum;
        while (csum < x2) {
            record(csum);
            csum += prime(chi + 1) - prime(clo);
            ++chi;
            ++clo;
        }
        sum -= prime(hi);
        --hi;  // length m-1, sum back below x1
    }
    res.m_cutoff = m_cutoff;

    if (m_cutoff > 1) {
        // Rebuild each short length from an interval sieve around x1/m.
        PrimeList base = sieve_upto(isqrt(x2 + 2'000'000) + 2);
        for (uint32_t m = m_cutoff; m-- > 1;) {
            uint64_t est = x1 / m;
            double ln_local = std::log(static_cast<double>(std::max<uint64_t>(est, 16)));
            uint64_t slack = static_cast<uint64_t>((m / 2.0 + 2) * ln_local) + 64;
            uint64_t win_lo = est > slack + 2 ? est - slack : 2;
            uint64_t win_hi = x2 / m + slack;
            std::vector<uint64_t> ps = primes_in_interval(win_lo, win_hi, base);
            auto ensure = [&](size_t idx) {
                while (ps.size() <= idx) {
                    auto more = primes_in_interval(win_hi + 1, win_hi + slack + 4096, base);
                    win_hi += slack + 4096;
                    ps.insert(ps.end(), more.begin(), more.end());
                }
            };
            auto head_sum = [&]() {
                ensure(m - 1);
                uint64_t s = 0;
                for (uint32_t i = 0; i < m; ++i) s += ps[i];
                return s;
            };
            uint64_t sum = head_sum();
            while (win_lo > 2 && sum >= x1) {
                // Cannot certify minimality from here; widen downward.
                uint64_t new_lo = win_lo > slack + 2 ? win_lo - slack : 2;
                auto below = primes_in_interval(new_lo, win_lo - 1, base);
                ps.insert(ps.begin(), below.begin(), below.end());
                win_lo = new_lo;
                sum = head_sum();
            }
            size_t i = 0;
            while (sum < x1) {
                ensure(i + m);
                sum += ps[i + m] - ps[i];
                ++i;
            }
            while (sum < x2) {
                record(sum);
                ensure(i + m);
                sum += ps[i + m] - ps[i];
                ++i;
            }
        }
    }
    return res;
}

}  // namespace

Segment process_segment(uint64_t x1, uint64_t x2, uint64_t x, const PrimeSource& src) {
    return process_segment_impl(x1, x2, x, src).seg;
}

Histogram run_puzzle(const PuzzleConfig& cfg, const EventSink& sink, PuzzleStats* stats) {
    if (cfg.x < 1) throw std::invalid_argument("run_puzzle: x < 1");
    uint64_t delta = cfg.delta;
    if (delta == 0)
        delta = static_cast<uint64_t>(std::llround(std::pow(static_cast<double>(cfg.x), 2.0 / 3.0)));
    delta = std::max<uint64_t>(delta, 1);
    uint32_t min_delta = max_chain_length(cfg.x);
    if (delta < min_delta)
        throw std::invalid_argument("run_puzzle: delta below max chain length");
    unsigned workers = std::max(1u, cfg.workers);

    Histogram h(1, 1);
    h.add(0, 1);  // n = 1 has no representation
    if (sink) sink(1, 0);
    if (cfg.x == 1) {
        if (stats) *stats = {0, 0, 0};
        return h;
    }

    std::vector<uint64_t> starts;
    for (uint64_t x1 = 2; x1 <= cfg.x; x1 += delta) starts.push_back(x1);
    size_t nseg = starts.size();

    std::mutex mu;
    std::condition_variable cv_done, cv_room;
    std::map<size_t, SegmentResult> ready;
    std::exception_ptr err;
    std::atomic<size_t> next{0};
    size_t consumed = 0;
    const size_t max_pending = workers + 2;

    auto work = [&]() {
        try {
            PrimeSource src(PrimeSource::Mode::kSieve, cfg.prime_bound);
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= nseg) return;
                uint64_t x1 = starts[i];
                uint64_t x2 = std::min(x1 + delta, cfg.x + 1);
                SegmentResult r = process_segment_impl(x1, x2, cfg.x, src);
                std::unique_lock lk(mu);
                // Window keyed on the segment index: the worker holding the
                // next-needed segment can always deposit it.
                cv_room.wait(lk, [&] { return i < consumed + max_pending || err; });
                if (err) return;
                ready.emplace(i, std::move(r));
                cv_done.notify_all();
            }
        } catch (...) {
            std::lock_guard lk(mu);
            if (!err) err = std::current_exception();
            cv_done.notify_all();
            cv_room.notify_all();
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);

    PuzzleStats st{nseg, 0, delta * sizeof(uint8_t)};
    while (consumed < nseg) {
        SegmentResult r;
        {
            std::unique_lock lk(mu);
            cv_done.wait(lk, [&] { return ready.count(consumed) || err; });
            if (err) break;
            r = std::move(ready.at(consumed));
            ready.erase(consumed);
            ++consumed;
            cv_room.notify_all();
        }
        st.max_m_cutoff = std::max(st.max_m_cutoff, r.m_cutoff);
        Histogram part(r.seg.x1, r.seg.x2 - 1);
        for (uint64_t i = 0; i < r.seg.f_counts.size(); ++i) {
            uint32_t fv = r.seg.f_counts[i];
            part.add(fv, 1);
            if (sink) sink(r.seg.x1 + i, fv);
        }
        h.merge(part);
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    if (stats) *stats = st;
    return h;
}

}  // namespace gleeful
