#pragma once

#include <cstddef>
#include <string>

#include "saix/rmq.hpp"
#include "saix/sequence.hpp"
#include "saix/suffix_index.hpp"

namespace saix {

/// Text, suffix array, LCP array and an RMQ over the LCP array, answering
/// the common prefix length of any two suffixes with a single range minimum.
class LcpQueryEngine {
public:
    LcpQueryEngine() = default;

    /// Builds the suffix array with serial DC3.
    static LcpQueryEngine build(RankedText text, rmq::Engine engine = rmq::Engine::sparse);

    /// Wraps prebuilt parts; only the RMQ is derived. Throws std::invalid_argument
    /// when the sizes disagree.
    static LcpQueryEngine assemble(RankedText text, SuffixArray sa, LcpArray lcp,
                                   rmq::Engine engine = rmq::Engine::sparse);

    /// Length of the longest common prefix of the suffixes starting at i and j.
    /// Throws std::out_of_range.
    std::size_t lcp(std::size_t i, std::size_t j) const;

    std::size_t size() const noexcept { return text_.size(); }
    const RankedText& text() const noexcept { return text_; }
    const SuffixArray& suffix_array() const noexcept { return sa_; }
    const LcpArray& lcp_array() const noexcept { return lcp_; }
    rmq::Engine rmq_engine() const noexcept { return rmq_.engine(); }

private:
    RankedText text_;
    SuffixArray sa_;
    LcpArray lcp_;
    rmq::Structure rmq_;
};

/// Two sequences joined by a unique separator. Residue ranks are shifted up by
/// one so the separator can take rank 1 while 0 stays the padding sentinel.
struct GeneralizedText {
    RankedText text;
    std::size_t boundary = 0;
    std::size_t len_a = 0;
    std::size_t len_b = 0;

    bool in_a(std::size_t p) const noexcept { return p < boundary; }
    bool in_b(std::size_t p) const noexcept { return p > boundary; }
};

inline constexpr std::uint32_t kSeparatorRank = 1;

GeneralizedText make_generalized(const RankedText& a, const RankedText& b);

struct OverlapResult {
    std::size_t length = 0;
    std::size_t pos_a = 0;
    std::size_t pos_b = 0;

    friend bool operator==(const OverlapResult&, const OverlapResult&) = default;
};

/// Longest substring shared by `a` and `b`. Among equally long answers the
/// smallest start in `a` wins, then the smallest start in `b`. A zero-length
/// result has both positions at 0.
OverlapResult longest_overlap(const DnaSequence& a, const DnaSequence& b,
                              NPolicy policy = NPolicy::reject);
OverlapResult longest_overlap(const RankedText& a, const RankedText& b);

struct OverlapReport {
    OverlapResult result;
    std::string substring;

    /// {"length":..,"posA":..,"posB":..,"substring":".."} on one line.
    std::string to_json() const;
    std::string to_text() const;
    /// Throws std::invalid_argument on missing or mistyped fields.
    static OverlapReport from_json(const std::string& json);

    friend bool operator==(const OverlapReport&, const OverlapReport&) = default;
};

OverlapReport overlap_report(const OverlapResult& result, const DnaSequence& a, const DnaSequence& b);

}  // namespace saix
