#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "saix/overlap.hpp"

using namespace saix;

namespace {

DnaSequence dna(std::string s) { return DnaSequence{"x", "", std::move(s)}; }

// Leftmost in A, then leftmost in B, among longest common substrings.
OverlapResult brute_overlap(const std::string& a, const std::string& b) {
    const std::size_t best = oracle::lcs_length(a, b);
    if (best == 0) {
        return {};
    }
    for (std::size_t i = 0; i + best <= a.size(); ++i) {
        for (std::size_t j = 0; j + best <= b.size(); ++j) {
            if (a.compare(i, best, b, j, best) == 0) {
                return {best, i, j};
            }
        }
    }
    return {};
}

}  // namespace

TEST_CASE("lcp queries on the worked example") {
    auto engine = LcpQueryEngine::build(encode(std::string("ATTGCTAC")));
    CHECK(engine.lcp(6, 0) == 1);
    CHECK(engine.lcp(0, 6) == 1);
    CHECK(engine.lcp(3, 3) == 5);
    CHECK(engine.lcp(1, 5) == 1);
    CHECK_THROWS_AS(engine.lcp(8, 0), std::out_of_range);
    CHECK_THROWS_AS(LcpQueryEngine{}.lcp(0, 0), std::out_of_range);
}

TEST_CASE("lcp queries match direct comparison") {
    std::mt19937_64 rng(21);
    for (auto engine_kind : {rmq::Engine::sparse, rmq::Engine::euler}) {
        for (int trial = 0; trial < 12; ++trial) {
            const std::size_t n = 1 + rng() % 200;
            std::string s = oracle::random_dna(rng, n, 1 + static_cast<int>(rng() % 4));
            auto engine = LcpQueryEngine::build(encode(s), engine_kind);
            CHECK(engine.rmq_engine() == engine_kind);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const std::size_t expect = i == j ? n - i : oracle::common_prefix(s, i, j);
                    REQUIRE(engine.lcp(i, j) == expect);
                }
            }
        }
    }
}

TEST_CASE("generalized text layout") {
    auto g = make_generalized(encode(std::string("AC")), encode(std::string("GTA")));
    CHECK(g.text.ranks == std::vector<std::uint32_t>{2, 3, kSeparatorRank, 4, 5, 2});
    CHECK(g.text.sigma == 5);
    CHECK(g.boundary == 2);
    CHECK(g.in_a(1));
    CHECK_FALSE(g.in_a(2));
    CHECK_FALSE(g.in_b(2));
    CHECK(g.in_b(3));
}

TEST_CASE("longest overlap fixtures") {
    CHECK(longest_overlap(dna("ATTGCTAC"), dna("GCTA")) == OverlapResult{4, 3, 0});
    CHECK(longest_overlap(dna("AAAA"), dna("TTTT")).length == 0);
    CHECK(longest_overlap(dna(""), dna("ACGT")).length == 0);
    CHECK(longest_overlap(dna("ACGT"), dna("")).length == 0);
    CHECK(longest_overlap(dna("ACGT"), dna("ACGT")) == OverlapResult{4, 0, 0});
    CHECK_THROWS_AS(longest_overlap(dna("ANA"), dna("A")), EncodeError);
    CHECK(longest_overlap(dna("ANNA"), dna("CNNC"), NPolicy::keep) == OverlapResult{2, 1, 1});
}

TEST_CASE("longest overlap against dynamic programming") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        std::string a = oracle::random_dna(rng, rng() % 80, 1 + static_cast<int>(rng() % 4));
        std::string b = oracle::random_dna(rng, rng() % 80, 1 + static_cast<int>(rng() % 4));
        CAPTURE(a);
        CAPTURE(b);
        auto got = longest_overlap(dna(a), dna(b));
        REQUIRE(got == brute_overlap(a, b));
        CHECK(longest_overlap(dna(b), dna(a)).length == got.length);
        CHECK(a.substr(got.pos_a, got.length) == b.substr(got.pos_b, got.length));

        std::string shared = oracle::random_dna(rng, 1 + rng() % 20);
        CHECK(longest_overlap(dna(a + shared), dna(b + shared)).length >= shared.size());
    }
}

TEST_CASE("overlap report") {
    auto a = dna("ATTGCTAC");
    auto b = dna("GCTA");
    auto report = overlap_report(longest_overlap(a, b), a, b);
    CHECK(report.substring == "GCTA");
    CHECK(report.to_json() == R"({"length":4,"posA":3,"posB":0,"substring":"GCTA"})");
    CHECK(OverlapReport::from_json(report.to_json()) == report);
    CHECK(report.to_text().find("GCTA") != std::string::npos);

    auto none = overlap_report(longest_overlap(dna("AAA"), dna("TT")), dna("AAA"), dna("TT"));
    CHECK(none.substring.empty());
    CHECK(OverlapReport::from_json(none.to_json()) == none);
    CHECK_THROWS(OverlapReport::from_json("{not json"));
}
