#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(GLEEFUL_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kTable1e4 = "k,count\n0,5191\n1,3290\n2,1213\n3,275\n4,29\n5,2\n";

}  // namespace

TEST_CASE("hist matches the published 10^4 column for every algorithm") {
    for (const char* algo : {"oracle", "puzzle", "pq-sieve", "pq-test"}) {
        auto r = run(std::string("hist --x 1e4 --algo ") + algo);
        CHECK(r.exit_code == 0);
        CHECK(r.out == kTable1e4);
    }
}

TEST_CASE("hist window mode") {
    auto puzzle = run("hist --x1 2357 --x2 2358 --algo puzzle");
    CHECK(puzzle.exit_code == 0);
    CHECK(puzzle.out == "k,count\n0,0\n1,0\n2,0\n3,1\n");
    auto pq = run("hist --x1 2357 --x2 2358 --algo pq-sieve");
    CHECK(pq.out == puzzle.out);
}

TEST_CASE("hist json output") {
    auto r = run("hist --x 100 --algo pq-sieve --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["lo"] == 1);
    CHECK(j["hi"] == 100);
    CHECK(j["counts"] == std::vector<uint64_t>{46, 38, 14, 2});
}

TEST_CASE("records output and verification") {
    auto r = run("records --x 50");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "k,n\n0,1\n1,2\n2,5\n3,41\n");
    auto r2 = run("records --x 1200 --algo puzzle");
    CHECK(r2.out == "k,n\n0,1\n1,2\n2,5\n3,41\n4,1151\n5,311\n");
}

TEST_CASE("reps output") {
    auto r = run("reps 2357");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "5,461,487\n3,773,797\n1,2357,2357\n");
    auto empty = run("reps 6");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.empty());
    auto seventeen = run("reps 17");
    CHECK(seventeen.out == "4,2,7\n1,17,17\n");
}

TEST_CASE("verify passes at 10^4") {
    auto r = run("verify 1e4");
    CHECK(r.exit_code == 0);
}

TEST_CASE("invalid arguments exit 2") {
    CHECK(run("hist").exit_code == 2);
    CHECK(run("hist --x abc").exit_code == 2);
    CHECK(run("hist --x 1.5e0").exit_code == 2);       // not an integer
    CHECK(run("hist --x 1e19").exit_code == 2);        // above 2^63-1
    CHECK(run("hist --x 100 --algo nope").exit_code == 2);
    CHECK(run("records").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
    CHECK(run("hist --x1 50 --x2 40 --algo puzzle").exit_code == 2);
}

TEST_CASE("scientific notation bounds parse exactly") {
    auto a = run("hist --x 1000 --algo oracle");
    auto b = run("hist --x 1e3 --algo oracle");
    auto c = run("hist --x 10e2 --algo oracle");
    auto d = run("hist --x 1.0e3 --algo oracle");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out == d.out);
}

TEST_CASE("oracle cap env override") {
    std::string cmd = "GLEEFUL_ORACLE_CAP=100 " + std::string(GLEEFUL_BIN) +
                      " hist --x 1000 --algo oracle 2>/dev/null; echo $?";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[64] = {0};
    REQUIRE(fgets(buf, sizeof buf, pipe) != nullptr);
    pclose(pipe);
    CHECK(std::string(buf) == "2\n");
}

TEST_CASE("identical runs give byte-identical files regardless of workers") {
    std::string base = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
    std::string f1 = base + "/gleeful_w1.csv", f2 = base + "/gleeful_w4.csv";
    CHECK(run("hist --x 1e5 --algo puzzle --workers 1 --out " + f1).exit_code == 0);
    CHECK(run("hist --x 1e5 --algo puzzle --workers 4 --out " + f2).exit_code == 0);
    CHECK(slurp(f1) == slurp(f2));
    CHECK(run("hist --x 1e5 --algo pq-sieve --workers 1 --out " + f1).exit_code == 0);
    CHECK(run("hist --x 1e5 --algo pq-sieve --workers 4 --out " + f2).exit_code == 0);
    CHECK(slurp(f1) == slurp(f2));
    std::remove(f1.c_str());
    std::remove(f2.c_str());
}

TEST_CASE("bench emits one row per grid cell") {
    auto r = run("bench --x 1e4 --algo puzzle --algo pq-sieve --delta 500 --interval-len 5000");
    CHECK(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "algorithm,x,delta_or_interval,wall_seconds,peak_memory_bytes");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
}
