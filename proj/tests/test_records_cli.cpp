#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "dal/records.hpp"

using namespace dal;
namespace fs = std::filesystem;

namespace {

std::string scratch_dir() {
    static std::string dir = [] {
        std::string d = fs::temp_directory_path() / "dal-test-scratch";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run_cli(const std::string& args, const std::string& out_file = "/dev/null") {
    const char* bin = std::getenv("DAL_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " >" + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("record files round-trip bit-identically") {
    RealSpec spec = RealSpec::parse("cbrt:2");
    ScanResult res = best_approx_scan(spec, 2, Int(2000));
    RecordHeader h = make_header(spec.str(), 2, Int(2000), "best");
    std::string bytes = records_to_jsonl(h, res.records);
    RecordFile rf = parse_jsonl(bytes);
    CHECK(rf.header.same_run(h));
    REQUIRE(rf.records.size() == res.records.size());
    for (size_t i = 0; i < res.records.size(); ++i) {
        CHECK(rf.records[i].q == res.records[i].q);
        CHECK(rf.records[i].p == res.records[i].p);
        CHECK(rf.records[i].rho.lo == res.records[i].rho.lo);
        CHECK(rf.records[i].rho.hi == res.records[i].rho.hi);
    }
    // serializing the parsed records reproduces the bytes
    CHECK(records_to_jsonl(rf.header, rf.records) == bytes);
}

TEST_CASE("header fingerprint is deterministic and content-bound") {
    RecordHeader a = make_header("golden", 2, Int(100), "best");
    RecordHeader b = make_header("golden", 2, Int(100), "best");
    RecordHeader c = make_header("golden", 2, Int(101), "best");
    CHECK(a.created == b.created);
    CHECK(a.created != c.created);
    CHECK(a.same_run(b));
    CHECK(!a.same_run(c));
}

TEST_CASE("atomic_write then read_file round-trips") {
    std::string path = scratch_dir() + "/atomic.txt";
    atomic_write(path, "payload\n");
    CHECK(read_file(path) == "payload\n");
    atomic_write(path, "replaced\n");
    CHECK(read_file(path) == "replaced\n");
}

TEST_CASE("cache stores and serves only exact header matches") {
    std::string dir = scratch_dir() + "/cache";
    setenv("DAL_CACHE_DIR", dir.c_str(), 1);
    RecordHeader h = make_header("golden", 1, Int(50), "best");
    CHECK(!cache_lookup(h).has_value());
    ScanResult res = best_approx_scan(RealSpec::parse("golden"), 1, Int(50));
    std::string bytes = records_to_jsonl(h, res.records);
    cache_store(h, bytes);
    auto hit = cache_lookup(h);
    REQUIRE(hit.has_value());
    CHECK(*hit == bytes);
    // a version bump invalidates
    RecordHeader v2 = h;
    v2.version = "2";
    CHECK(!cache_lookup(v2).has_value());
    unsetenv("DAL_CACHE_DIR");
    CHECK(!cache_lookup(h).has_value());  // cache disabled without the variable
}

TEST_CASE("corrupt record files are rejected") {
    CHECK_THROWS_AS(parse_jsonl(""), SpecError);
    CHECK_THROWS_AS(parse_jsonl("{\"q\":\"3\"}\n"), SpecError);
}

TEST_CASE("cli: scan twice produces byte-identical output") {
    std::string a = scratch_dir() + "/scan-a.jsonl";
    std::string b = scratch_dir() + "/scan-b.jsonl";
    CHECK(run_cli("scan --xi golden --n 1 --qmax 200 --out " + a) == 0);
    CHECK(run_cli("--threads 3 scan --xi golden --n 1 --qmax 200 --out " + b) == 0);
    CHECK(read_file(a) == read_file(b));
}

TEST_CASE("cli: bounds csv/svg determinism") {
    std::string c1 = scratch_dir() + "/b1.csv", c2 = scratch_dir() + "/b2.csv";
    std::string s1 = scratch_dir() + "/b1.svg", s2 = scratch_dir() + "/b2.svg";
    CHECK(run_cli("bounds --n 3 --grid 0.34:2.0:0.01 --csv " + c1 + " --svg " + s1) == 0);
    CHECK(run_cli("bounds --n 3 --grid 0.34:2.0:0.01 --csv " + c2 + " --svg " + s2) == 0);
    CHECK(read_file(c1) == read_file(c2));
    CHECK(read_file(s1) == read_file(s2));
    CHECK(read_file(c1).rfind("n,lambda,jb,", 0) == 0);
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("scan --n 1") == 2);                                // usage: missing --xi
    CHECK(run_cli("scan --xi nonsense:1 --n 1 --qmax 10") == 3);      // bad spec
    CHECK(run_cli("bounds --n 3 --point 0.1") == 3);                  // below Dirichlet floor
    CHECK(run_cli("exponents --xi golden --mode w --k 3 --hmax 4000") == 4);  // box budget
    std::string err = scratch_dir() + "/err.json";
    run_cli("scan --xi nonsense:1 --n 1 --qmax 10", err);
    CHECK(read_file(err).find("\"code\":3") != std::string::npos);
}

TEST_CASE("cli: classify and hankel on tuples") {
    std::string out = scratch_dir() + "/cls.txt";
    CHECK(run_cli("classify --tuple 8,12,18,27 --xi rational:3/2", out) == 0);
    CHECK(read_file(out).find("on_curve(3/2)") != std::string::npos);
    CHECK(run_cli("hankel --tuple 1,1,2,3,5,8", out) == 0);
    CHECK(read_file(out).find("h=2") != std::string::npos);
    CHECK(run_cli("classify --tuple 8,12,27 --degrees 1,3 --lambda 5/2", out) == 0);
    CHECK(read_file(out).find("on_curve(3/2)") != std::string::npos);
}

TEST_CASE("cli: collapse audit end to end") {
    std::string out = scratch_dir() + "/collapse.txt";
    std::string js = scratch_dir() + "/collapse.json";
    CHECK(run_cli("collapse --xi liouville:w=9,base=2 --n 2 --lambda 2 --qmax 1000000 --json " + js,
                  out) == 0);
    CHECK(read_file(out).find("[pass]") != std::string::npos);
    CHECK(read_file(js).find("\"counterexamples\": []") != std::string::npos);
}

TEST_CASE("cli: config file supplies defaults, flags win") {
    std::string cfg = scratch_dir() + "/dal.cfg";
    {
        std::ofstream os(cfg);
        os << "threads=1\n";
    }
    std::string out = scratch_dir() + "/cfg-run.txt";
    CHECK(run_cli("--config " + cfg + " bounds --n 3 --point 1", out) == 0);
    CHECK(read_file(out).find("lower23=1/3") != std::string::npos);
}
