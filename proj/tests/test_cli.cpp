#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "saix/overlap.hpp"
#include "saix/selftest.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result saix_run(std::vector<std::string> args) {
    args.insert(args.begin(), "saix");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = saix::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "saix_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& content) const {
        auto p = (path / name).string();
        std::ofstream(p) << content;
        return p;
    }
};

}  // namespace

TEST_CASE("cli: index then query") {
    TempDir dir;
    auto fasta = dir.write("s.fa", ">s1\nATTG\nCTAC\n");
    auto r = saix_run({"index", fasta});
    CHECK(r.code == 0);
    CHECK(r.out.find("indexed n=8 sigma=4") == 0);
    auto idx = (dir.path / "s.saix").string();
    REQUIRE(fs::exists(idx));

    auto q = saix_run({"query", idx, "6", "0"});
    CHECK(q.code == 0);
    CHECK(q.out == "1\nA\n");
    CHECK(saix_run({"query", idx, "3", "3"}).out == "5\nGCTAC\n");
    CHECK(saix_run({"query", idx, "0", "8"}).code == 4);
    CHECK(saix_run({"query", idx, "-1", "0"}).code == 4);

    auto par = (dir.path / "p.saix").string();
    CHECK(saix_run({"--engine", "parallel", "--workers", "2", "--chunk", "3", "--out", par, "index", fasta}).code == 0);
    std::ifstream a(idx, std::ios::binary), b(par, std::ios::binary);
    CHECK(std::string(std::istreambuf_iterator<char>(a), {}) == std::string(std::istreambuf_iterator<char>(b), {}));
}

TEST_CASE("cli: input errors") {
    TempDir dir;
    CHECK(saix_run({"index", (dir.path / "missing.fa").string()}).code == 2);
    CHECK(saix_run({"query", (dir.path / "missing.saix").string(), "0", "0"}).code == 2);
    CHECK(saix_run({"index", dir.write("two.fa", ">a\nAC\n>b\nGT\n")}).code == 3);
    CHECK(saix_run({"index", dir.write("bad.fa", ">a\nACXT\n")}).code == 3);
    CHECK(saix_run({"index", dir.write("n.fa", ">a\nACNT\n")}).code == 3);
    CHECK(saix_run({"--keep-n", "index", dir.write("n2.fa", ">a\nACNT\n")}).code == 0);
    CHECK(saix_run({"query", dir.write("junk.saix", "not an index"), "0", "0"}).code == 3);
    CHECK(saix_run({"frobnicate"}).code == 1);
    CHECK(saix_run({}).code == 1);
    CHECK(saix_run({"--help"}).code == 0);
}

TEST_CASE("cli: overlap json") {
    TempDir dir;
    auto a = dir.write("a.fa", ">a\nATTGCTAC\n");
    auto b = dir.write("b.fa", ">b\nGCTA\n");
    auto r = saix_run({"overlap", a, b});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"length\":4,\"posA\":3,\"posB\":0,\"substring\":\"GCTA\"}\n");
    auto report = saix::OverlapReport::from_json(r.out);
    CHECK(report.result.length == 4);
    CHECK(saix_run({"overlap", a}).code == 1);
    CHECK(saix_run({"overlap", a, (dir.path / "nope.fa").string()}).code == 2);
}

TEST_CASE("cli: selftest and its negative control") {
    auto r = saix_run({"selftest"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);

    saix::SelftestOptions broken;
    broken.break_lcp_convention = true;
    bool lcp_failed = false;
    for (const auto& f : saix::run_selftest(broken)) {
        if (f.name == "lcp") {
            lcp_failed = !f.passed;
        } else {
            CHECK(f.passed);
        }
    }
    CHECK(lcp_failed);
}

TEST_CASE("cli: bench and generate") {
    TempDir dir;
    auto csv = (dir.path / "b.csv").string();
    auto sp = (dir.path / "s.csv").string();
    auto r = saix_run({"--workers", "2", "--out", csv, "bench", "--sizes", "256,1024", "--reps", "1", "--speedup-out", sp});
    CHECK(r.code == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "label,n,seed,chunk32,reps,seconds");
    CHECK(fs::exists(sp));
    CHECK(saix_run({"bench", "--impl", "quantum"}).code != 0);

    auto g = saix_run({"--seed", "5", "generate", "--length", "100"});
    CHECK(g.code == 0);
    CHECK(g.out.rfind(">", 0) == 0);
    CHECK(g.out == saix_run({"--seed", "5", "generate", "--length", "100"}).out);
}
