#include "gleeful/oracle.hpp"

#include <algorithm>
#include <ostream>

namespace gleeful {

std::vector<uint32_t> f_values_bruteforce(uint64_t x, uint64_t cap) {
    if (x > cap) throw CapacityError("f_values_bruteforce: x exceeds cap");
    std::vector<uint32_t> f(x + 1, 0);
    PrimeList pl = sieve_upto(x);
    const auto& ps = pl.primes;
    for (size_t i = 0; i < ps.size(); ++i) {
        uint64_t sum = 0;
        for (size_t j = i; j < ps.size(); ++j) {
            sum += ps[j];
            if (sum > x) break;
            ++f[sum];
        }
    }
    return f;
}

std::vector<uint64_t> histogram_from_f(const std::vector<uint32_t>& f) {
    uint32_t max_k = 0;
    for (size_t n = 1; n < f.size(); ++n) max_k = std::max(max_k, f[n]);
    std::vector<uint64_t> h(size_t{max_k} + 1, 0);
    for (size_t n = 1; n < f.size(); ++n) ++h[f[n]];
    return h;
}

std::vector<Representation> representations_of(uint64_t n, const RepsConfig& cfg) {
    std::vector<Representation> out;
    if (n < 2) return out;
    uint32_t max_m = max_chain_length(n);
    uint32_t test_cutoff = std::max<uint32_t>(cfg.test_cutoff, 1);
    uint64_t stream_lo64 = std::max<uint64_t>(
        test_cutoff, (n + cfg.stream_bound - 1) / cfg.stream_bound);
    auto stream_lo = static_cast<uint32_t>(std::min<uint64_t>(stream_lo64, max_m + uint64_t{1}));
    if (max_m >= stream_lo) {
        for_each_minimal_chain(n, max_m, stream_lo, [&](const Chain& c) {
            if (c.sum == n) out.push_back({c.length, c.pmin, c.pmax, c.sum});
        });
    }
    auto probe = [&](uint32_t m_hi, uint32_t m_lo, const PrimeSource& src) {
        for (uint32_t m = m_hi; m >= m_lo && m > 0; --m) {
            Chain c = build_chain_of_length(m, n, src);
            if (c.sum == n) out.push_back({c.length, c.pmin, c.pmax, c.sum});
        }
    };
    uint32_t patch_hi = std::min(max_m, stream_lo - 1);
    if (patch_hi >= test_cutoff) {
        PrimeSource patch_src(PrimeSource::Mode::kSieve, cfg.prime_bound);
        probe(patch_hi, test_cutoff, patch_src);
    }
    uint32_t test_hi = std::min(max_m, test_cutoff - 1);
    if (test_hi >= 1) {
        PrimeSource test_src(PrimeSource::Mode::kTest, cfg.prime_bound);
        probe(test_hi, 1, test_src);
    }
    return out;
}

void write_representations_csv(std::ostream& out, const std::vector<Representation>& reps) {
    for (const auto& r : reps)
        out << r.length << ',' << r.pmin << ',' << r.pmax << '\n';
}

}  // namespace gleeful
