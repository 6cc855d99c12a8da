#include "saix/overlap.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace saix {

LcpQueryEngine LcpQueryEngine::build(RankedText text, rmq::Engine engine) {
    SuffixArray sa = build_sa_dc3(text);
    LcpArray lcp = build_lcp(text, sa);
    return assemble(std::move(text), std::move(sa), std::move(lcp), engine);
}

LcpQueryEngine LcpQueryEngine::assemble(RankedText text, SuffixArray sa, LcpArray lcp,
                                        rmq::Engine engine) {
    const std::size_t n = text.size();
    if (sa.size() != n || sa.rank.size() != n || lcp.size() != n) {
        throw std::invalid_argument("engine parts describe texts of different lengths");
    }
    LcpQueryEngine e;
    std::vector<std::int64_t> values(lcp.lcp.begin(), lcp.lcp.end());
    e.rmq_ = rmq::Structure::build(values, engine);
    e.text_ = std::move(text);
    e.sa_ = std::move(sa);
    e.lcp_ = std::move(lcp);
    return e;
}

std::size_t LcpQueryEngine::lcp(std::size_t i, std::size_t j) const {
    const std::size_t n = size();
    if (i >= n || j >= n) {
        throw std::out_of_range("lcp query (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside text of length " + std::to_string(n));
    }
    if (i == j) {
        return n - i;
    }
    auto [p, q] = std::minmax(sa_.rank[i], sa_.rank[j]);
    return lcp_.lcp[rmq_.query(p + 1, q)];
}

GeneralizedText make_generalized(const RankedText& a, const RankedText& b) {
    GeneralizedText g;
    g.len_a = a.size();
    g.len_b = b.size();
    g.boundary = a.size();
    g.text.sigma = std::max(a.sigma, b.sigma) + 1;
    g.text.ranks.reserve(a.size() + b.size() + 1);
    for (auto r : a.ranks) {
        g.text.ranks.push_back(r + 1);
    }
    g.text.ranks.push_back(kSeparatorRank);
    for (auto r : b.ranks) {
        g.text.ranks.push_back(r + 1);
    }
    return g;
}

OverlapResult longest_overlap(const RankedText& a, const RankedText& b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    const GeneralizedText g = make_generalized(a, b);
    const SuffixArray sa = build_sa_dc3(g.text);
    const LcpArray lcp = build_lcp(g.text, sa);
    const std::size_t n = g.text.size();

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t p = sa.sa[i - 1];
        std::size_t q = sa.sa[i];
        bool cross = (g.in_a(p) && g.in_b(q)) || (g.in_b(p) && g.in_a(q));
        if (cross) {
            best = std::max<std::size_t>(best, lcp.lcp[i]);
        }
    }
    if (best == 0) {
        return {};
    }

    // Each maximal run with lcp >= best shares one length-`best` prefix; any
    // A-start and B-start inside a run pair up, so the run minima are an answer.
    constexpr auto kNone = std::numeric_limits<std::size_t>::max();
    OverlapResult out{best, kNone, kNone};
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && lcp.lcp[j + 1] >= best) {
            ++j;
        }
        std::size_t min_a = kNone;
        std::size_t min_b = kNone;
        for (std::size_t k = i; k <= j; ++k) {
            std::size_t p = sa.sa[k];
            if (g.in_a(p)) {
                min_a = std::min(min_a, p);
            } else if (g.in_b(p)) {
                min_b = std::min(min_b, p - g.boundary - 1);
            }
        }
        if (min_a != kNone && min_b != kNone &&
            (min_a < out.pos_a || (min_a == out.pos_a && min_b < out.pos_b))) {
            out.pos_a = min_a;
            out.pos_b = min_b;
        }
        i = j + 1;
    }
    return out;
}

OverlapResult longest_overlap(const DnaSequence& a, const DnaSequence& b, NPolicy policy) {
    return longest_overlap(encode(a, policy), encode(b, policy));
}

std::string OverlapReport::to_json() const {
    nlohmann::json j = {
        {"length", result.length},
        {"posA", result.pos_a},
        {"posB", result.pos_b},
        {"substring", substring},
    };
    return j.dump();
}

std::string OverlapReport::to_text() const {
    std::ostringstream os;
    os << "longest overlap: " << result.length << " residues";
    if (result.length > 0) {
        os << " at A[" << result.pos_a << "] and B[" << result.pos_b << "]: " << substring;
    }
    return os.str();
}

OverlapReport OverlapReport::from_json(const std::string& json) {
    try {
        auto j = nlohmann::json::parse(json);
        OverlapReport r;
        r.result.length = j.at("length").get<std::size_t>();
        r.result.pos_a = j.at("posA").get<std::size_t>();
        r.result.pos_b = j.at("posB").get<std::size_t>();
        r.substring = j.at("substring").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed overlap record: ") + e.what());
    }
}

OverlapReport overlap_report(const OverlapResult& result, const DnaSequence& a, const DnaSequence& b) {
    if (result.length > 0 && (result.pos_a + result.length > a.residues.size() ||
                              result.pos_b + result.length > b.residues.size())) {
        throw std::invalid_argument("overlap result does not fit the given sequences");
    }
    OverlapReport r{result, a.residues.substr(result.pos_a, result.length)};
    if (b.residues.compare(result.pos_b, result.length, r.substring) != 0) {
        throw std::invalid_argument("overlap result does not match sequence B");
    }
    return r;
}

}  // namespace saix
