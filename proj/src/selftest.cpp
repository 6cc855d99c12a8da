#include "saix/selftest.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <type_traits>

#include "saix/overlap.hpp"
#include "saix/parallel_sort.hpp"
#include "saix/rmq.hpp"
#include "saix/suffix_index.hpp"

namespace saix {

namespace {

template <typename Range>
std::string join(const Range& values) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (const auto& v : values) {
        os << (first ? "" : ",");
        if constexpr (std::is_arithmetic_v<std::decay_t<decltype(v)>>) {
            os << +v;
        } else {
            os << v;
        }
        first = false;
    }
    os << ']';
    return os.str();
}

template <typename A, typename B>
FixtureResult compare(std::string name, const A& got, const B& want) {
    bool ok = std::equal(got.begin(), got.end(), want.begin(), want.end());
    return {std::move(name), ok, ok ? join(got) : "got " + join(got) + ", want " + join(want)};
}

FixtureResult rmq_agreement() {
    std::mt19937_64 gen(20140301);
    std::size_t queries = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + gen() % 64;
        std::vector<std::int64_t> values(n);
        for (auto& v : values) {
            v = static_cast<std::int64_t>(gen() % 8);
        }
        auto sparse = rmq::SparseTable::build(values);
        auto lca = rmq::LcaRmq::build(values);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = i;
            for (std::size_t j = i; j < n; ++j) {
                if (values[j] < values[best]) {
                    best = j;
                }
                ++queries;
                if (sparse.query(i, j) != best || lca.query(i, j) != best) {
                    return {"rmq-agreement", false,
                            "disagreement at (" + std::to_string(i) + ", " + std::to_string(j) + ") n=" +
                                std::to_string(n)};
                }
            }
        }
    }
    return {"rmq-agreement", true, std::to_string(queries) + " queries agree"};
}

}  // namespace

std::vector<FixtureResult> run_selftest(const SelftestOptions& options) {
    std::vector<FixtureResult> out;
    const RankedText text = encode("ATTGCTAC");
    const std::vector<pos_t> table_sa = {6, 0, 7, 4, 3, 5, 2, 1};

    const SuffixArray dc3 = build_sa_dc3(text);
    out.push_back(compare("sa-oracle", build_sa_oracle(text).sa, table_sa));
    out.push_back(compare("sa-dc3", dc3.sa, table_sa));
    out.push_back(compare("sa-parallel-dc3", par::parallel_build_sa(text, par::SortConfig{1, 32, 2, 2}).sa,
                          table_sa));

    std::vector<std::string> ranks;
    for (auto [p, r] : sample_ranks(text)) {
        ranks.push_back(std::to_string(p) + ":" + std::to_string(r));
    }
    out.push_back(compare("sample-ranks", ranks, std::vector<std::string>{"1:5", "2:4", "4:2", "5:3", "7:1"}));

    std::vector<pos_t> one_based;
    for (auto r : dc3.rank) {
        one_based.push_back(r + 1);
    }
    out.push_back(compare("final-ranks", one_based, std::vector<pos_t>{2, 8, 7, 5, 4, 6, 1, 3}));

    LcpArray lcp = build_lcp(text, dc3);
    if (options.break_lcp_convention) {
        for (std::size_t i = 0; i + 1 < lcp.size(); ++i) {
            lcp.lcp[i] = lcp.lcp[i + 1];
        }
        lcp.lcp.back() = 0;
    }
    out.push_back(compare("lcp", lcp.lcp, std::vector<pos_t>{0, 1, 0, 1, 0, 0, 1, 1}));

    const std::vector<std::uint64_t> keys = {0b001, 0b100, 0b111, 0b101, 0b110};
    auto split = par::split_by_bit(keys, 0);
    out.push_back(compare("split-e", split.state.e, std::vector<int>{0, 1, 0, 0, 1}));
    FixtureResult derived = compare("split-derived", split.state.f, std::vector<std::size_t>{0, 0, 1, 1, 1});
    const std::vector<std::uint64_t> stable = {0b100, 0b110, 0b001, 0b111, 0b101};
    if (derived.passed && (split.state.total_false != 2 || split.keys != stable)) {
        derived = {"split-derived", false,
                   "totalFalse " + std::to_string(split.state.total_false) + ", order " + join(split.keys)};
    }
    out.push_back(derived);

    out.push_back(rmq_agreement());
    return out;
}

}  // namespace saix
