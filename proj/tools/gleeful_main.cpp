#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gleeful/oracle.hpp"
#include "gleeful/puzzle.hpp"
#include "gleeful/pqueue.hpp"
#include "gleeful/stats.hpp"

namespace {

using namespace gleeful;
using Clock = std::chrono::steady_clock;

// Exact integer parse of "123", "1e12", "2.5e3"; rejects anything inexact
// or above 2^63-1.
uint64_t parse_bound(const std::string& s) {
    constexpr uint64_t kMax = (uint64_t{1} << 63) - 1;
    size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos == std::string::npos ? s.size() : epos);
    int exp10 = 0;
    if (epos != std::string::npos) {
        std::string et = s.substr(epos + 1);
        size_t used = 0;
        exp10 = std::stoi(et, &used);
        if (used != et.size() || exp10 < 0 || exp10 > 19) throw std::invalid_argument(s);
    }
    size_t dot = mant.find('.');
    if (dot != std::string::npos) {
        std::string frac = mant.substr(dot + 1);
        mant = mant.substr(0, dot) + frac;
        exp10 -= static_cast<int>(frac.size());
        if (exp10 < 0) throw std::invalid_argument(s + ": not an integer");
    }
    if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument(s);
    unsigned __int128 v = 0;
    for (char c : mant) {
        v = v * 10 + (c - '0');
        if (v > kMax) throw std::invalid_argument(s + ": exceeds 2^63-1");
    }
    for (int i = 0; i < exp10; ++i) {
        v *= 10;
        if (v > kMax) throw std::invalid_argument(s + ": exceeds 2^63-1");
    }
    return static_cast<uint64_t>(v);
}

uint64_t oracle_cap() {
    if (const char* env = std::getenv("GLEEFUL_ORACLE_CAP")) return parse_bound(env);
    return kDefaultOracleCap;
}

struct OutStream {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
            os = &file;
        }
    }
};

struct CommonOpts {
    std::string x, x1, x2;
    std::string algo = "pq-sieve";
    std::string delta, interval_len, prime_bound;
    unsigned workers = 1;
    std::string out;
    std::string format = "csv";
};

Histogram run_window_histogram(const CommonOpts& o, uint64_t x, const EventSink& sink,
                               std::string& resource_note) {
    auto t0 = Clock::now();
    Histogram h;
    if (o.algo == "oracle") {
        if (x > oracle_cap()) throw std::invalid_argument("oracle: x exceeds cap");
        auto f = f_values_bruteforce(x, oracle_cap());
        h = Histogram(1, x);
        for (uint64_t n = 1; n <= x; ++n) {
            h.add(f[n], 1);
            if (sink) sink(n, f[n]);
        }
        resource_note = "oracle_memory_bytes=" + std::to_string(f.size() * sizeof(uint32_t));
    } else if (o.algo == "puzzle") {
        PuzzleConfig cfg;
        cfg.x = x;
        cfg.delta = o.delta.empty() ? 0 : parse_bound(o.delta);
        cfg.workers = o.workers;
        if (!o.prime_bound.empty()) cfg.prime_bound = parse_bound(o.prime_bound);
        PuzzleStats st;
        h = run_puzzle(cfg, sink, &st);
        resource_note = "segment_bytes=" + std::to_string(st.peak_memory_bytes) +
                        " m_cutoff_max=" + std::to_string(st.max_m_cutoff);
    } else if (o.algo == "pq-sieve" || o.algo == "pq-test") {
        PqRunConfig cfg;
        cfg.x = x;
        cfg.backend = o.algo == "pq-test" ? PrimeBackend::kTest : PrimeBackend::kSieve;
        cfg.interval_len = o.interval_len.empty() ? 0 : parse_bound(o.interval_len);
        cfg.workers = o.workers;
        if (!o.prime_bound.empty()) cfg.prime_bound = parse_bound(o.prime_bound);
        PqStats st;
        h = run_pq(cfg, sink, &st);
        resource_note = "peak_queue=" + std::to_string(st.peak_queue);
    } else {
        throw std::invalid_argument("unknown algorithm: " + o.algo);
    }
    auto secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::ostringstream note;
    note << resource_note << " wall_seconds=" << secs;
    resource_note = note.str();
    return h;
}

int cmd_hist(const CommonOpts& o) {
    uint64_t x;
    Histogram h;
    std::string note;
    if (!o.x1.empty() || !o.x2.empty()) {
        uint64_t x1 = parse_bound(o.x1), x2 = parse_bound(o.x2);
        if (x1 < 2 || x2 <= x1) throw std::invalid_argument("need 2 <= x1 < x2");
        auto t0 = Clock::now();
        if (o.algo == "puzzle") {
            PrimeSource src(PrimeSource::Mode::kSieve);
            Segment seg = process_segment(x1, x2, x2 - 1, src);
            h = Histogram(x1, x2 - 1);
            for (uint8_t fv : seg.f_counts) h.add(fv, 1);
        } else if (o.algo == "pq-sieve" || o.algo == "pq-test") {
            PrimeSource src(o.algo == "pq-test" ? PrimeSource::Mode::kTest
                                                : PrimeSource::Mode::kSieve);
            PqConfig cfg{x1, x2, QueueImpl::kHeap};
            PqStats st;
            h = run_pq_interval(cfg, src, {}, &st);
        } else {
            throw std::invalid_argument("window mode supports puzzle/pq-sieve/pq-test");
        }
        std::ostringstream n2;
        n2 << "wall_seconds=" << std::chrono::duration<double>(Clock::now() - t0).count();
        note = n2.str();
        x = x2 - x1;
    } else {
        x = parse_bound(o.x);
        if (x < 1) throw std::invalid_argument("need x >= 1");
        h = run_window_histogram(o, x, {}, note);
    }
    OutStream out(o.out);
    if (o.format == "json")
        write_histogram_json(*out.os, h);
    else
        write_histogram_csv(*out.os, h);
    std::cerr << "hist [" << h.lo() << "," << h.hi() << "] total=" << h.total()
              << " chains=" << h.weighted_total() << " mean=" << h.mean() << ' ' << note << '\n';
    return 0;
}

int cmd_records(const CommonOpts& o) {
    uint64_t x = parse_bound(o.x);
    if (x < 1) throw std::invalid_argument("need x >= 1");
    RecordTable table;
    std::string note;
    EventSink sink = [&table](uint64_t n, uint32_t f) { table.update(n, f); };
    run_window_histogram(o, x, sink, note);
    for (auto [k, n] : table.records()) {
        auto reps = representations_of(n);
        if (reps.size() != k) {
            std::cerr << "record verification failed: k=" << k << " n=" << n
                      << " oracle says f=" << reps.size() << '\n';
            return 1;
        }
    }
    OutStream out(o.out);
    if (o.format == "json")
        write_records_json(*out.os, table);
    else
        write_records_csv(*out.os, table);
    std::cerr << "records x=" << x << " entries=" << table.records().size() << ' ' << note << '\n';
    return 0;
}

int cmd_reps(const std::string& n_str, const std::string& out_path) {
    uint64_t n = parse_bound(n_str);
    if (n < 1) throw std::invalid_argument("need n >= 1");
    auto reps = representations_of(n);
    OutStream out(out_path);
    write_representations_csv(*out.os, reps);
    std::cerr << "reps n=" << n << " count=" << reps.size() << '\n';
    return 0;
}

int cmd_verify(const std::string& x_str, unsigned workers) {
    uint64_t x = parse_bound(x_str);
    if (x < 1 || x > oracle_cap()) throw std::invalid_argument("need 1 <= x <= oracle cap");
    auto f = f_values_bruteforce(x, oracle_cap());

    auto check = [&](const char* name, auto&& run) -> std::optional<int> {
        std::vector<uint32_t> got(x + 1, UINT32_MAX);
        run([&](uint64_t n, uint32_t fv) { got[n] = fv; });
        for (uint64_t n = 1; n <= x; ++n)
            if (got[n] != f[n]) {
                std::cerr << "FAIL " << name << ": first divergent n=" << n << " got="
                          << got[n] << " want=" << f[n] << '\n';
                return 1;
            }
        std::cerr << "ok " << name << '\n';
        return std::nullopt;
    };

    if (auto rc = check("puzzle", [&](const EventSink& s) {
            run_puzzle({x, 0, workers}, s);
        }))
        return *rc;
    if (auto rc = check("pq-sieve", [&](const EventSink& s) {
            run_pq({x, 0, PrimeBackend::kSieve, QueueImpl::kHeap, workers, 0}, s);
        }))
        return *rc;
    if (auto rc = check("pq-test", [&](const EventSink& s) {
            run_pq({x, 0, PrimeBackend::kTest, QueueImpl::kMap, workers, 0}, s);
        }))
        return *rc;
    std::cerr << "PASS verify x=" << x << '\n';
    return 0;
}

int cmd_bench(const CommonOpts& o, const std::vector<std::string>& algos,
              const std::vector<std::string>& deltas,
              const std::vector<std::string>& interval_lens) {
    uint64_t x = parse_bound(o.x);
    OutStream out(o.out);
    *out.os << "algorithm,x,delta_or_interval,wall_seconds,peak_memory_bytes\n";
    for (const auto& algo : algos) {
        std::vector<std::string> params =
            algo == "puzzle" ? (deltas.empty() ? std::vector<std::string>{""} : deltas)
                             : (interval_lens.empty() ? std::vector<std::string>{""}
                                                      : interval_lens);
        for (const auto& param : params) {
            auto t0 = Clock::now();
            uint64_t mem = 0;
            if (algo == "puzzle") {
                PuzzleConfig cfg{x, param.empty() ? 0 : parse_bound(param), o.workers};
                PuzzleStats st;
                run_puzzle(cfg, {}, &st);
                mem = st.peak_memory_bytes;
            } else if (algo == "pq-sieve" || algo == "pq-test") {
                PqRunConfig cfg{x, param.empty() ? 0 : parse_bound(param),
                                algo == "pq-test" ? PrimeBackend::kTest : PrimeBackend::kSieve,
                                QueueImpl::kHeap, o.workers, 0};
                PqStats st;
                run_pq(cfg, {}, &st);
                mem = st.peak_queue * (sizeof(Chain) + 16);
            } else {
                throw std::invalid_argument("bench: unknown algorithm " + algo);
            }
            auto secs = std::chrono::duration<double>(Clock::now() - t0).count();
            *out.os << algo << ',' << x << ',' << (param.empty() ? "auto" : param) << ','
                    << secs << ',' << mem << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"counts of representations as sums of consecutive primes"};
    app.require_subcommand(1);
    CommonOpts o;

    auto add_common = [&](CLI::App* sub, bool window) {
        sub->add_option("--x", o.x, "upper bound (inclusive); accepts 1e6 notation");
        if (window) {
            sub->add_option("--x1", o.x1, "window start (inclusive)");
            sub->add_option("--x2", o.x2, "window end (exclusive)");
        }
        sub->add_option("--algo", o.algo, "puzzle | pq-sieve | pq-test | oracle");
        sub->add_option("--delta", o.delta, "puzzle segment length");
        sub->add_option("--interval-len", o.interval_len, "pq interval length");
        sub->add_option("--workers", o.workers, "worker threads");
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--format", o.format, "csv | json");
        sub->add_option("--prime-bound-B", o.prime_bound, "precomputed prime list bound");
    };

    auto* hist = app.add_subcommand("hist", "histogram of f over [1,x] or [x1,x2)");
    add_common(hist, true);
    auto* records = app.add_subcommand("records", "smallest n with f(n)=k, for k reached by x");
    add_common(records, false);

    auto* reps = app.add_subcommand("reps", "all representations of n, longest first");
    std::string reps_n, reps_out;
    reps->add_option("n", reps_n, "target integer")->required();
    reps->add_option("--out", reps_out, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "cross-check all algorithms against brute force");
    std::string verify_x;
    unsigned verify_workers = 1;
    verify->add_option("x", verify_x, "upper bound")->required();
    verify->add_option("--workers", verify_workers, "worker threads");

    auto* bench = app.add_subcommand("bench", "timing grid over algorithms and parameters");
    std::vector<std::string> bench_algos{"puzzle", "pq-sieve"};
    std::vector<std::string> bench_deltas, bench_intervals;
    bench->add_option("--x", o.x, "upper bound")->required();
    bench->add_option("--algo", bench_algos, "algorithms to time");
    bench->add_option("--delta", bench_deltas, "puzzle segment lengths");
    bench->add_option("--interval-len", bench_intervals, "pq interval lengths");
    bench->add_option("--workers", o.workers, "worker threads");
    bench->add_option("--out", o.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (hist->parsed()) {
            if (o.x.empty() && (o.x1.empty() || o.x2.empty()))
                throw std::invalid_argument("hist: need --x or both --x1/--x2");
            return cmd_hist(o);
        }
        if (records->parsed()) {
            if (o.x.empty()) throw std::invalid_argument("records: need --x");
            return cmd_records(o);
        }
        if (reps->parsed()) return cmd_reps(reps_n, reps_out);
        if (verify->parsed()) return cmd_verify(verify_x, verify_workers);
        if (bench->parsed()) return cmd_bench(o, bench_algos, bench_deltas, bench_intervals);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
