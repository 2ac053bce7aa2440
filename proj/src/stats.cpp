#include "gleeful/stats.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace gleeful {

Histogram::Histogram(uint64_t lo, uint64_t hi) : lo_(lo), hi_(hi) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("Histogram: bad interval");
}

void Histogram::add(uint32_t k, uint64_t tally) {
    if (k >= counts_.size()) counts_.resize(size_t{k} + 1, 0);
    counts_[k] += tally;
}

void Histogram::merge(const Histogram& other) {
    if (other.empty()) return;
    if (empty()) {
        *this = other;
        return;
    }
    if (other.lo_ <= hi_ && lo_ <= other.hi_)
        throw std::invalid_argument("Histogram::merge: overlapping intervals");
    lo_ = std::min(lo_, other.lo_);
    hi_ = std::max(hi_, other.hi_);
    if (other.counts_.size() > counts_.size()) counts_.resize(other.counts_.size(), 0);
    for (size_t k = 0; k < other.counts_.size(); ++k) counts_[k] += other.counts_[k];
}

uint64_t Histogram::total() const {
    uint64_t s = 0;
    for (uint64_t c : counts_) s += c;
    return s;
}

uint64_t Histogram::weighted_total() const {
    uint64_t s = 0;
    for (size_t k = 0; k < counts_.size(); ++k) s += k * counts_[k];
    return s;
}

double Histogram::mean() const {
    if (empty()) return 0.0;
    return static_cast<double>(weighted_total()) / static_cast<double>(hi_ - lo_ + 1);
}

void RecordTable::update(uint64_t n, uint32_t f) {
    if (n <= last_n_) throw std::invalid_argument("RecordTable::update: n not ascending");
    if (first_n_ == 0) first_n_ = n;
    last_n_ = n;
    rec_.try_emplace(f, n);
}

void RecordTable::merge_ascending(const RecordTable& next) {
    if (next.first_n_ == 0) return;
    if (last_n_ != 0 && next.first_n_ <= last_n_)
        throw std::invalid_argument("RecordTable::merge_ascending: intervals out of order");
    if (first_n_ == 0) first_n_ = next.first_n_;
    last_n_ = next.last_n_;
    for (auto [k, n] : next.rec_) rec_.try_emplace(k, n);
}

DensitySeries::DensitySeries(std::vector<uint64_t> checkpoints)
    : checkpoints_(std::move(checkpoints)) {
    for (size_t i = 1; i < checkpoints_.size(); ++i)
        if (checkpoints_[i] <= checkpoints_[i - 1])
            throw std::invalid_argument("DensitySeries: checkpoints not ascending");
}

void DensitySeries::flush_through(uint64_t n) {
    while (next_ < checkpoints_.size() && checkpoints_[next_] < n) {
        uint64_t x = checkpoints_[next_++];
        points_.emplace_back(x, static_cast<double>(weighted_) / static_cast<double>(x));
    }
}

void DensitySeries::add(uint64_t n, uint32_t f) {
    if (n <= last_n_) throw std::invalid_argument("DensitySeries::add: n not ascending");
    flush_through(n);
    weighted_ += f;
    last_n_ = n;
}

void DensitySeries::finish() {
    while (next_ < checkpoints_.size() && checkpoints_[next_] <= last_n_) {
        uint64_t x = checkpoints_[next_++];
        points_.emplace_back(x, static_cast<double>(weighted_) / static_cast<double>(x));
    }
}

std::vector<long double> poisson_expected(uint64_t x, uint32_t kmax) {
    const long double lambda = std::log(2.0L);
    std::vector<long double> out(size_t{kmax} + 1);
    long double term = static_cast<long double>(x) / 2.0L;  // k = 0: x * e^-lambda
    for (uint32_t k = 0; k <= kmax; ++k) {
        out[k] = term;
        term *= lambda / (k + 1);
    }
    return out;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
    out << "k,count\n";
    for (size_t k = 0; k < h.counts().size(); ++k) out << k << ',' << h.counts()[k] << '\n';
}

void write_histogram_json(std::ostream& out, const Histogram& h) {
    nlohmann::json j;
    j["lo"] = h.lo();
    j["hi"] = h.hi();
    j["counts"] = h.counts();
    out << j.dump(2) << '\n';
}

void write_records_csv(std::ostream& out, const RecordTable& t) {
    out << "k,n\n";
    for (auto [k, n] : t.records()) out << k << ',' << n << '\n';
}

void write_records_json(std::ostream& out, const RecordTable& t) {
    nlohmann::json j = nlohmann::json::object();
    for (auto [k, n] : t.records()) j[std::to_string(k)] = n;
    out << j.dump(2) << '\n';
}

void write_density_csv(std::ostream& out, const DensitySeries& s) {
    out << "x,mean\n";
    for (auto [x, mean] : s.points()) out << x << ',' << mean << '\n';
}

}  // namespace gleeful
