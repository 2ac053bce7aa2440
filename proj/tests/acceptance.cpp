// Acceptance checks: published tables at desk scale, cross-algorithm
// equivalence, and the statistical model. One line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <map>
#include <random>
#include <vector>

#include "gleeful/oracle.hpp"
#include "gleeful/pqueue.hpp"
#include "gleeful/puzzle.hpp"
#include "gleeful/stats.hpp"

using namespace gleeful;
using Clock = std::chrono::steady_clock;

namespace {

const std::map<uint64_t, std::vector<uint64_t>> kFrequencyTable = {
    {100, {46, 38, 14, 2}},
    {1000, {520, 310, 140, 28, 0, 2}},
    {10000, {5191, 3290, 1213, 275, 29, 2}},
    {100000, {51462, 34538, 11236, 2396, 323, 44, 1}},
    {1000000, {518001, 344100, 111132, 22916, 3409, 403, 37, 2}},
    {10000000, {5205110, 3427038, 1099545, 228659, 35009, 4197, 412, 28, 2}},
};
const std::vector<uint64_t> kFrequency1e8 = {52209546, 34146573, 10950371, 2292360, 353614,
                                             42946,    4205,     356,      28,      1};

const std::map<uint32_t, uint64_t> kSmallestN = {
    {0, 1},           {1, 2},           {2, 5},          {3, 41},        {4, 1151},
    {5, 311},         {6, 34421},       {7, 218918},     {8, 3634531},   {9, 48205429},
    {10, 1798467197}, {11, 12941709050}, {12, 166400805323}, {13, 6123584726269},
    {14, 84941668414584}};

const std::vector<Representation> kBigReps = {
    {2117074, 21797833, 58785359, 84941668414584},
    {361092, 231753581, 238710779, 84941668414584},
    {288268, 291853531, 297473801, 84941668414584},
    {199390, 424030259, 427989799, 84941668414584},
    {112544, 753590641, 755886067, 84941668414584},
    {73026, 1162407049, 1163930791, 84941668414584},
    {68854, 1232927929, 1234369457, 84941668414584},
    {296, 286965092209, 286965099727, 84941668414584},
    {294, 288917235553, 288917243497, 84941668414584},
    {206, 412338193609, 412338198731, 84941668414584},
    {146, 581792247697, 581792251207, 84941668414584},
    {86, 987693817667, 987693819859, 84941668414584},
    {26, 3266987246389, 3266987247019, 84941668414584},
    {2, 42470834207273, 42470834207311, 84941668414584}};

int g_failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail = "") {
    printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what,
           detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

Histogram run_algo(const char* algo, uint64_t x, const EventSink& sink = {},
                   PqStats* pst = nullptr) {
    if (std::string(algo) == "puzzle") return run_puzzle({x, 0, 1}, sink);
    PqRunConfig cfg{x, 0,
                    std::string(algo) == "pq-test" ? PrimeBackend::kTest : PrimeBackend::kSieve,
                    QueueImpl::kHeap, 1, 0};
    return run_pq(cfg, sink, pst);
}

}  // namespace

int main() {
    const char* algos[] = {"puzzle", "pq-sieve", "pq-test"};

    // 1: frequency columns 10^2..10^7, all three algorithms, exact
    {
        bool ok = true;
        std::string detail;
        std::map<uint64_t, uint64_t> chain_totals;
        for (const auto& [x, want] : kFrequencyTable) {
            for (const char* algo : algos) {
                Histogram h = run_algo(algo, x);
                if (h.counts() != want || h.total() != x) {
                    ok = false;
                    detail = "x=" + std::to_string(x) + " algo=" + algo;
                }
                if (chain_totals.count(x) && chain_totals[x] != h.weighted_total()) ok = false;
                chain_totals[x] = h.weighted_total();
            }
        }
        report(1, "frequency table 10^2..10^7 exact for puzzle, pq-sieve, pq-test", ok, detail);
    }

    // 2: frequency column at 10^8, exact (puzzle), reused below for the density trend
    Histogram h1e8 = run_puzzle({100000000, 0, 1});
    report(2, "frequency table at 10^8 exact", h1e8.counts() == kFrequency1e8);

    // 3: smallest-n records at 4*10^6 and 5*10^7
    {
        RecordTable t4;
        run_puzzle({4000000, 0, 1}, [&](uint64_t n, uint32_t f) { t4.update(n, f); });
        std::map<uint32_t, uint64_t> want;
        for (uint32_t k = 0; k <= 8; ++k) want[k] = kSmallestN.at(k);
        bool ok = t4.records() == want;
        RecordTable t5;
        run_puzzle({50000000, 0, 1}, [&](uint64_t n, uint32_t f) { t5.update(n, f); });
        want[9] = kSmallestN.at(9);
        ok = ok && t5.records() == want;
        report(3, "records k<=8 at 4e6 and k=9 at 5e7", ok);
    }

    // 4: representation listings, including the 14-row table under one minute
    {
        auto r2357 = representations_of(2357);
        auto f2357 = f_values_bruteforce(2357).back();
        bool ok = r2357.size() == f2357;
        auto has = [&](const Representation& r) {
            return std::find(r2357.begin(), r2357.end(), r) != r2357.end();
        };
        ok = ok && has({5, 461, 487, 2357}) && has({3, 773, 797, 2357});
        auto t0 = Clock::now();
        auto big = representations_of(84941668414584ull);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        ok = ok && big == kBigReps && secs < 60.0;
        report(4, "representations of 2357 and the 14-row listing", ok,
               "big n in " + std::to_string(secs) + "s");
    }

    // 5: property suite
    {
        bool ok = true;
        std::string detail;
        // exhaustive tri-algorithm equivalence against brute force at 10^5
        auto f = f_values_bruteforce(100000);
        for (const char* algo : algos) {
            bool match = true;
            run_algo(algo, 100000, [&](uint64_t n, uint32_t fv) {
                if (fv != f[n]) match = false;
            });
            if (!match) {
                ok = false;
                detail = std::string("divergence at 1e5: ") + algo;
            }
        }
        // partition invariance: three deltas, three interval decompositions
        auto want = histogram_from_f(f);
        for (uint64_t delta : {uint64_t{450}, uint64_t{317}, uint64_t{100000}})
            if (run_puzzle({100000, delta, 1}).counts() != want) ok = false;
        for (uint64_t len : {uint64_t{100000}, uint64_t{33334}, uint64_t{7919}})
            if (run_pq({100000, len, PrimeBackend::kSieve, QueueImpl::kMap, 1, 0}).counts() !=
                want)
                ok = false;
        // queue bound
        PqStats st;
        run_pq({100000, 0, PrimeBackend::kSieve, QueueImpl::kHeap, 1, 0}, {}, &st);
        if (st.peak_queue > max_chain_length(100000)) ok = false;
        // 100 random high windows: puzzle vs priority queue
        std::mt19937_64 rng(20260826);
        PrimeSource src(PrimeSource::Mode::kSieve);
        for (int t = 0; t < 100 && ok; ++t) {
            uint64_t x1 = 2 + rng() % (1000000000 - 1002);
            uint64_t x2 = x1 + 1000;
            Segment seg = process_segment(x1, x2, x2 - 1, src);
            PqStats wst;
            Histogram hp = run_pq_interval({x1, x2, QueueImpl::kHeap}, src,
                                           [&](uint64_t n, uint32_t fv) {
                                               if (fv != seg.f_counts[n - x1]) ok = false;
                                           },
                                           &wst);
            if (wst.peak_queue > max_chain_length(x2)) ok = false;
            if (!ok) detail = "window divergence at x1=" + std::to_string(x1);
        }
        // density: exact mean at 10^6, trend toward log 2 at 10^8
        Histogram h1e6 = run_puzzle({1000000, 0, 1});
        if (h1e6.weighted_total() != 650999) ok = false;
        double mean8 =
            static_cast<double>(h1e8.weighted_total()) / static_cast<double>(100000000);
        if (std::abs(mean8 - std::log(2.0)) >= 0.05) ok = false;
        report(5, "equivalence, partition invariance, conservation, queue bound, density", ok,
               detail);
    }

    // 6: Poisson model at 10^6
    {
        auto expected = poisson_expected(1000000, 5);
        bool ok = expected[0] == 500000.0L;
        const auto& observed = kFrequencyTable.at(1000000);
        for (uint32_t k = 0; k <= 5; ++k) {
            double ratio = static_cast<double>(observed[k]) / static_cast<double>(expected[k]);
            if (ratio < 0.5 || ratio > 1.5) ok = false;
        }
        report(6, "Poisson expectations: k=0 exactly x/2, ratios in [0.5,1.5] for k<=5", ok);
    }

    // 7: exactly 11 of the k=1..14 record values are prime
    {
        int primes = 0;
        for (const auto& [k, n] : kSmallestN)
            if (k >= 1 && is_prime(n)) ++primes;
        report(7, "11 of the 14 smallest-n records are prime",
               primes == 11 && !is_prime(kSmallestN.at(0)));
    }

    printf("%s\n", g_failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return g_failures == 0 ? 0 : 1;
}
