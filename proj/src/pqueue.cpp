#include "gleeful/pqueue.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>

namespace gleeful {

namespace {

uint32_t cbrt_round(uint64_t n) {
    auto r = static_cast<uint32_t>(std::llround(std::cbrt(static_cast<double>(n))));
    return r;
}

// One live chain per length, keyed by sum.
class HeapQueue {
public:
    void push(uint64_t sum, uint32_t m) { heap_.emplace(sum, m); }
    bool empty() const { return heap_.empty(); }
    uint64_t min_sum() const { return heap_.top().first; }
    uint32_t pop() {
        uint32_t m = heap_.top().second;
        heap_.pop();
        return m;
    }
    size_t size() const { return heap_.size(); }

private:
    using Entry = std::pair<uint64_t, uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
};

class MapQueue {
public:
    void push(uint64_t sum, uint32_t m) {
        buckets_[sum].push_back(m);
        ++size_;
    }
    bool empty() const { return size_ == 0; }
    uint64_t min_sum() const { return buckets_.begin()->first; }
    uint32_t pop() {
        auto it = buckets_.begin();
        uint32_t m = it->second.back();
        it->second.pop_back();
        if (it->second.empty()) buckets_.erase(it);
        --size_;
        return m;
    }
    size_t size() const { return size_; }

private:
    std::map<uint64_t, std::vector<uint32_t>> buckets_;
    size_t size_ = 0;
};

template <class Queue>
Histogram sweep(const PqConfig& cfg, ChainArray& chains, const PrimeSource& src,
                const EventSink& sink, PqStats* stats) {
    Queue q;
    for (uint32_t m = 1; m < chains.size(); ++m)
        if (chains[m].sum < cfg.x2) q.push(chains[m].sum, m);
    PqStats st;
    st.peak_queue = q.size();
    Histogram h(cfg.x1, cfg.x2 - 1);
    for (uint64_t n = cfg.x1; n < cfg.x2; ++n) {
        uint32_t f = 0;
        while (!q.empty() && q.min_sum() == n) {
            uint32_t m = q.pop();
            ++f;
            Chain& c = chains[m];
            c = slide(c, src);
            ++st.total_slides;
            if (c.sum < cfg.x2) q.push(c.sum, m);
        }
        st.peak_queue = std::max<uint64_t>(st.peak_queue, q.size());
        h.add(f, 1);
        if (sink) sink(n, f);
    }
    if (stats) *stats = st;
    return h;
}

}  // namespace

ChainArray setup_chain_array(uint64_t x1, uint64_t x2, const PrimeSource& src) {
    if (x1 < 1 || x2 <= x1) throw std::invalid_argument("setup_chain_array: need 1 <= x1 < x2");
    uint32_t m_max = max_chain_length(x2 - 1);
    m_max = std::max(m_max, 1u);  // a length-1 chain always exists
    ChainArray chains(size_t{m_max} + 1);
    uint32_t m_c = std::min(cbrt_round(x1), m_max);
    if (m_max > m_c) {
        for_each_minimal_chain(x1, m_max, m_c + 1,
                               [&](const Chain& c) { chains[c.length] = c; });
    }
    for (uint32_t m = m_c; m >= 1; --m) chains[m] = build_chain_of_length(m, x1, src);
    return chains;
}

Histogram run_pq_interval(const PqConfig& cfg, const PrimeSource& src, const EventSink& sink,
                          PqStats* stats) {
    ChainArray chains = setup_chain_array(cfg.x1, cfg.x2, src);
    if (cfg.queue == QueueImpl::kHeap) return sweep<HeapQueue>(cfg, chains, src, sink, stats);
    return sweep<MapQueue>(cfg, chains, src, sink, stats);
}

Histogram run_pq(const PqRunConfig& cfg, const EventSink& sink, PqStats* stats) {
    if (cfg.x < 1) throw std::invalid_argument("run_pq: x < 1");
    unsigned workers = std::max(1u, cfg.workers);
    uint64_t len = cfg.interval_len;
    if (len == 0) {
        len = (cfg.x + workers - 1) / workers;
        auto floor_len = static_cast<uint64_t>(
            std::llround(std::pow(static_cast<double>(cfg.x), 2.0 / 3.0)));
        len = std::max(len, floor_len);
    }
    len = std::max<uint64_t>(len, 1);
    uint64_t bound = cfg.prime_bound;
    if (bound == 0) {
        bound = static_cast<uint64_t>(std::llround(std::pow(static_cast<double>(cfg.x), 0.6)));
        bound = std::clamp<uint64_t>(bound, uint64_t{1} << 16, uint64_t{1} << 26);
    }

    std::vector<uint64_t> starts;
    for (uint64_t x1 = 1; x1 <= cfg.x; x1 += len) starts.push_back(x1);
    size_t nseg = starts.size();

    struct Part {
        Histogram h;
        PqStats st;
        std::vector<std::pair<uint64_t, uint32_t>> events;
    };
    std::mutex mu;
    std::condition_variable cv_done, cv_room;
    std::map<size_t, Part> ready;
    std::exception_ptr err;
    std::atomic<size_t> next{0};
    size_t consumed = 0;
    const size_t max_pending = workers + 2;

    auto work = [&]() {
        try {
            auto mode = cfg.backend == PrimeBackend::kSieve ? PrimeSource::Mode::kSieve
                                                            : PrimeSource::Mode::kTest;
            PrimeSource src(mode, bound);
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= nseg) return;
                Part part;
                PqConfig pc{starts[i], std::min(starts[i] + len, cfg.x + 1), cfg.queue};
                EventSink collect;
                if (sink)
                    collect = [&part](uint64_t n, uint32_t f) { part.events.emplace_back(n, f); };
                part.h = run_pq_interval(pc, src, collect, &part.st);
                std::unique_lock lk(mu);
                cv_room.wait(lk, [&] { return i < consumed + max_pending || err; });
                if (err) return;
                ready.emplace(i, std::move(part));
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

    Histogram h;
    PqStats st;
    while (consumed < nseg) {
        Part part;
        {
            std::unique_lock lk(mu);
            cv_done.wait(lk, [&] { return ready.count(consumed) || err; });
            if (err) break;
            part = std::move(ready.at(consumed));
            ready.erase(consumed);
            ++consumed;
            cv_room.notify_all();
        }
        h.merge(part.h);
        st.peak_queue = std::max(st.peak_queue, part.st.peak_queue);
        st.total_slides += part.st.total_slides;
        if (sink)
            for (auto [n, f] : part.events) sink(n, f);
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    if (stats) *stats = st;
    return h;
}

}  // namespace gleeful
