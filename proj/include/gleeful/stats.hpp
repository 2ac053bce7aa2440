#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

namespace gleeful {

// Receives (n, f(n)) events in ascending n.
using EventSink = std::function<void(uint64_t n, uint32_t f)>;

// Tallies of f-values over a closed interval [lo, hi] of n.
class Histogram {
public:
    Histogram() = default;
    Histogram(uint64_t lo, uint64_t hi);

    void add(uint32_t k, uint64_t tally = 1);
    // Pointwise sum; the intervals must not overlap. The merged interval is
    // the hull, so gaps between pieces are allowed but not tracked.
    void merge(const Histogram& other);

    bool empty() const { return hi_ == 0; }
    uint64_t lo() const { return lo_; }
    uint64_t hi() const { return hi_; }
    const std::vector<uint64_t>& counts() const { return counts_; }
    uint64_t count(uint32_t k) const { return k < counts_.size() ? counts_[k] : 0; }
    uint64_t total() const;           // sum of h(k)
    uint64_t weighted_total() const;  // sum of k * h(k)
    double mean() const;              // weighted_total / interval width

private:
    uint64_t lo_ = 0, hi_ = 0;  // hi_ == 0 encodes "no interval yet"
    std::vector<uint64_t> counts_;
};

// Smallest n with f(n) = k, fed by ascending-n events.
class RecordTable {
public:
    void update(uint64_t n, uint32_t f);
    // Absorbs records from the interval directly above this one.
    void merge_ascending(const RecordTable& next);

    const std::map<uint32_t, uint64_t>& records() const { return rec_; }
    uint64_t first_n() const { return first_n_; }
    uint64_t last_n() const { return last_n_; }

private:
    std::map<uint32_t, uint64_t> rec_;
    uint64_t first_n_ = 0, last_n_ = 0;
};

// Running mean of f sampled at the given ascending checkpoints. Feed events
// in ascending n; each checkpoint x yields mean f over n <= x.
class DensitySeries {
public:
    explicit DensitySeries(std::vector<uint64_t> checkpoints);
    void add(uint64_t n, uint32_t f);
    // Flushes checkpoints at or past the last n seen.
    void finish();
    const std::vector<std::pair<uint64_t, double>>& points() const { return points_; }

private:
    void flush_through(uint64_t n);
    std::vector<uint64_t> checkpoints_;
    size_t next_ = 0;
    uint64_t weighted_ = 0, last_n_ = 0;
    std::vector<std::pair<uint64_t, double>> points_;
};

// Expected counts of n <= x with f(n) = k under a Poisson model with mean
// log 2, for k = 0..kmax. k = 0 is exactly x/2.
std::vector<long double> poisson_expected(uint64_t x, uint32_t kmax);

void write_histogram_csv(std::ostream& out, const Histogram& h);
void write_histogram_json(std::ostream& out, const Histogram& h);
void write_records_csv(std::ostream& out, const RecordTable& t);
void write_records_json(std::ostream& out, const RecordTable& t);
void write_density_csv(std::ostream& out, const DensitySeries& s);

}  // namespace gleeful
