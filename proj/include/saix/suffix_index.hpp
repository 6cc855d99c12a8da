#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "saix/sequence.hpp"

namespace saix {

/// Text positions and suffix ranks. Texts are limited to 2^32 - 4 symbols.
using pos_t = std::uint32_t;

/// Suffix start positions in lexicographic order and the inverse permutation.
/// Ranks are 0-based: rank[sa[i]] == i.
struct SuffixArray {
    std::vector<pos_t> sa;
    std::vector<pos_t> rank;

    std::size_t size() const noexcept { return sa.size(); }

    /// Fills rank from a suffix order. Throws if `order` is not a permutation.
    static SuffixArray from_order(std::vector<pos_t> order);

    friend bool operator==(const SuffixArray&, const SuffixArray&) = default;
};

/// lcp[0] == 0 and lcp[i] is the common prefix length of suffixes sa[i-1] and sa[i].
struct LcpArray {
    std::vector<pos_t> lcp;

    std::size_t size() const noexcept { return lcp.size(); }

    friend bool operator==(const LcpArray&, const LcpArray&) = default;
};

/// Stable ordering primitive the DC3 driver is parameterized over.
class KeySorter {
public:
    virtual ~KeySorter() = default;

    /// Writes `items` to `out` stably ordered by `keys`, where keys[k] belongs
    /// to items[k] and every key lies in [0, max_key].
    virtual void sort_by_key(std::span<const pos_t> items, std::span<const std::uint32_t> keys,
                             std::uint32_t max_key, std::span<pos_t> out) const = 0;
};

/// Stable counting sort; one pass for keys up to 16 bits, 11-bit LSD digits beyond.
class CountingSorter final : public KeySorter {
public:
    void sort_by_key(std::span<const pos_t> items, std::span<const std::uint32_t> keys,
                     std::uint32_t max_key, std::span<pos_t> out) const override;
};

/// Intermediate state of one DC3 level.
///
/// The text is read as if followed by 0-sentinels. Sample positions are the
/// positions p < n with p mod 3 != 0, plus position n itself when
/// n mod 3 == 1, so the last triple of R1 always exists. R is R1 followed by
/// R2, each in position order.
struct Dc3Workspace {
    std::size_t n = 0;
    std::vector<pos_t> b0;
    std::vector<pos_t> b1;
    std::vector<pos_t> b2;
    /// Sample positions in R order (B1 then B2).
    std::vector<pos_t> sample;
    /// Triples [t_p, t_p+1, t_p+2], aligned with `sample`.
    std::vector<std::array<std::uint32_t, 3>> triples;
    /// Sample positions in suffix order.
    std::vector<pos_t> sorted_sample;
    /// 1-based rank of each sample suffix among the sample, indexed by
    /// position over [0, n + 3). Zero for nonsample and past-the-end positions.
    std::vector<pos_t> sample_rank;
    /// B0 in suffix order, filled by sort_nonsample.
    std::vector<pos_t> sorted_nonsample;
    /// Number of DC3 levels used to rank the sample, including this one.
    std::size_t depth = 1;
};

struct Dc3Stats {
    /// Deepest DC3 level entered; the top level is 1.
    std::size_t max_depth = 0;
    /// Number of levels whose sample triples were not unique.
    std::size_t recursions = 0;
};

/// Comparison sort over all suffixes. O(n^2 log n) worst case; used as the reference.
SuffixArray build_sa_oracle(const RankedText& text);

/// Linear-time DC3 (skew) construction.
SuffixArray build_sa_dc3(const RankedText& text, Dc3Stats* stats = nullptr);
SuffixArray build_sa_dc3(const RankedText& text, const KeySorter& sorter, Dc3Stats* stats = nullptr);

/// Sorts and ranks the sample suffixes, recursing on the triple names when
/// they are not unique.
Dc3Workspace rank_sample(const RankedText& text, const KeySorter& sorter, Dc3Stats* stats = nullptr);

/// Orders B0 by the pair (t_i, rank(S_i+1)).
void sort_nonsample(Dc3Workspace& ws, const RankedText& text, const KeySorter& sorter);

/// Merges sorted sample and nonsample suffixes into the final suffix array.
SuffixArray merge_sample_nonsample(const Dc3Workspace& ws, const RankedText& text);

/// Position -> 1-based rank of every sample suffix (see Dc3Workspace for the
/// sample definition).
std::map<pos_t, pos_t> sample_ranks(const RankedText& text);

/// Kasai et al. inverse-rank scan, O(n).
LcpArray build_lcp(const RankedText& text, const SuffixArray& sa);

}  // namespace saix
