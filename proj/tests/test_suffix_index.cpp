#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "saix/sequence.hpp"
#include "saix/suffix_index.hpp"

using namespace saix;

namespace {

// Sample positions ranked by brute-force comparison of the padded suffixes.
std::map<pos_t, pos_t> brute_sample_ranks(const std::string& s) {
    const std::size_t n = s.size();
    std::vector<pos_t> sample;
    for (std::size_t p = 0; p < n + (n % 3 == 1 ? 1 : 0); ++p) {
        if (p % 3 != 0) {
            sample.push_back(static_cast<pos_t>(p));
        }
    }
    std::sort(sample.begin(), sample.end(), [&](pos_t a, pos_t b) { return s.substr(a) < s.substr(b); });
    std::map<pos_t, pos_t> out;
    for (std::size_t k = 0; k < sample.size(); ++k) {
        out[sample[k]] = static_cast<pos_t>(k + 1);
    }
    return out;
}

std::vector<pos_t> sa_of(const SuffixArray& sa) { return sa.sa; }

}  // namespace

TEST_CASE("suffix array of the worked example") {
    auto t = encode(std::string("ATTGCTAC"));
    const std::vector<pos_t> expect = {6, 0, 7, 4, 3, 5, 2, 1};
    CHECK(sa_of(build_sa_oracle(t)) == expect);
    CHECK(sa_of(build_sa_dc3(t)) == expect);

    auto sa = build_sa_dc3(t);
    std::vector<pos_t> rank1;
    for (auto r : sa.rank) {
        rank1.push_back(r + 1);
    }
    CHECK(rank1 == std::vector<pos_t>{2, 8, 7, 5, 4, 6, 1, 3});
    CHECK(build_lcp(t, sa).lcp == std::vector<pos_t>{0, 1, 0, 1, 0, 0, 1, 1});
    CHECK(sample_ranks(t) == std::map<pos_t, pos_t>{{1, 5}, {2, 4}, {4, 2}, {5, 3}, {7, 1}});
}

TEST_CASE("suffix array edge cases") {
    CHECK(build_sa_dc3(RankedText{{}, 4}).sa.empty());
    CHECK(build_sa_oracle(RankedText{{}, 4}).sa.empty());
    auto aaaa = encode(std::string("AAAA"));
    CHECK(sa_of(build_sa_dc3(aaaa)) == std::vector<pos_t>{3, 2, 1, 0});
    CHECK(build_lcp(aaaa, build_sa_dc3(aaaa)).lcp == std::vector<pos_t>{0, 1, 2, 3});
    CHECK(sa_of(build_sa_dc3(encode(std::string("G")))) == std::vector<pos_t>{0});
    CHECK_THROWS_AS(SuffixArray::from_order({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(build_lcp(aaaa, build_sa_dc3(encode(std::string("AA")))), std::invalid_argument);
}

TEST_CASE("sample ranks against brute force") {
    CHECK(sample_ranks(encode(std::string("A"))) == std::map<pos_t, pos_t>{{1, 1}});
    CHECK(sample_ranks(encode(std::string("AAAA"))) == std::map<pos_t, pos_t>{{1, 3}, {2, 2}, {4, 1}});
    CHECK(sample_ranks(encode(std::string("AAAA"))) == brute_sample_ranks("AAAA"));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::string s = oracle::random_dna(rng, 1 + rng() % 60, 1 + static_cast<int>(rng() % 4));
        CAPTURE(s);
        CHECK(sample_ranks(encode(s)) == brute_sample_ranks(s));
    }
}

TEST_CASE("dc3 steps on the worked example") {
    auto t = encode(std::string("ATTGCTAC"));
    CountingSorter sorter;
    Dc3Workspace ws = rank_sample(t, sorter);
    CHECK(ws.b0 == std::vector<pos_t>{0, 3, 6});
    CHECK(ws.b1 == std::vector<pos_t>{1, 4, 7});
    CHECK(ws.b2 == std::vector<pos_t>{2, 5});
    CHECK(ws.sample == std::vector<pos_t>{1, 4, 7, 2, 5});
    CHECK(ws.sorted_sample == std::vector<pos_t>{7, 4, 5, 2, 1});
    sort_nonsample(ws, t, sorter);
    CHECK(ws.sorted_nonsample == std::vector<pos_t>{6, 0, 3});
    CHECK(sa_of(merge_sample_nonsample(ws, t)) == std::vector<pos_t>{6, 0, 7, 4, 3, 5, 2, 1});
}

TEST_CASE("counting sorter is stable and validates") {
    CountingSorter sorter;
    std::vector<pos_t> items = {10, 11, 12, 13, 14, 15};
    std::vector<std::uint32_t> keys = {3, 1, 3, 0, 1, 3};
    std::vector<pos_t> out(items.size());
    sorter.sort_by_key(items, keys, 3, out);
    CHECK(out == std::vector<pos_t>{13, 11, 14, 10, 12, 15});

    // wide keys take the multi-digit path
    std::mt19937_64 rng(5);
    std::vector<pos_t> many(5000);
    std::vector<std::uint32_t> wide(5000);
    for (std::size_t i = 0; i < many.size(); ++i) {
        many[i] = static_cast<pos_t>(i);
        wide[i] = static_cast<std::uint32_t>(rng() % 70000);
    }
    std::vector<pos_t> sorted(many.size());
    sorter.sort_by_key(many, wide, 69999, sorted);
    std::vector<pos_t> expect = many;
    std::stable_sort(expect.begin(), expect.end(), [&](pos_t a, pos_t b) { return wide[a] < wide[b]; });
    CHECK(sorted == expect);

    CHECK_THROWS_AS(sorter.sort_by_key(items, keys, 2, out), std::out_of_range);
    std::vector<pos_t> small(2);
    CHECK_THROWS_AS(sorter.sort_by_key(items, keys, 3, small), std::invalid_argument);
}

TEST_CASE("dc3 equals oracle on every short text") {
    for (std::size_t k = 0; k <= 6; ++k) {
        for (const auto& s : oracle::all_strings(k)) {
            auto t = encode(s);
            auto sa = build_sa_dc3(t);
            REQUIRE(sa.sa == oracle::suffix_array(s));
            REQUIRE(build_lcp(t, sa).lcp == oracle::lcp(s, sa.sa));
        }
    }
}

TEST_CASE("dc3 and lcp on random texts, with a depth bound") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 2000;
        std::string s = oracle::random_dna(rng, n, 1 + static_cast<int>(rng() % 4));
        auto t = encode(s);
        Dc3Stats stats;
        auto sa = build_sa_dc3(t, &stats);
        REQUIRE(sa.sa == oracle::suffix_array(s));
        CHECK(sa.sa == build_sa_oracle(t).sa);
        CHECK(build_lcp(t, sa).lcp == oracle::lcp(s, sa.sa));
        const double bound = std::ceil(std::log(static_cast<double>(n)) / std::log(1.5)) + 1;
        CHECK(static_cast<double>(stats.max_depth) <= bound);
        CHECK(stats.max_depth >= 1);
    }
    // a constant text recurses all the way down
    Dc3Stats stats;
    build_sa_dc3(encode(std::string(3000, 'A')), &stats);
    CHECK(stats.recursions > 0);
    CHECK(static_cast<double>(stats.max_depth) <= std::ceil(std::log(3000.0) / std::log(1.5)) + 1);
}

TEST_CASE("dc3 handles the N alphabet") {
    std::string s = "ANNACGTNNNA";
    auto t = encode(s, NPolicy::keep);
    // N ranks after T, as 'Y' does in byte order
    CHECK(build_sa_dc3(t).sa == oracle::suffix_array("AYYACGTYYYA"));
}
