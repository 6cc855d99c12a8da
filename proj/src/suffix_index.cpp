#include "saix/suffix_index.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace saix {

namespace {

constexpr std::size_t kMaxText = std::numeric_limits<pos_t>::max() - 4;

void check_length(const RankedText& text) {
    if (text.size() > kMaxText) {
        throw std::length_error("text of " + std::to_string(text.size()) +
                                " symbols exceeds the 32-bit index limit");
    }
}

// Text symbol with implicit 0-padding past the end.
inline std::uint32_t sym(const RankedText& text, std::size_t p) {
    return p < text.size() ? text.ranks[p] : 0;
}

// Lookahead for loops whose random accesses are known a few iterations early.
constexpr std::size_t kAhead = 16;

template <typename T>
inline void prefetch(const T* p) {
    __builtin_prefetch(p);
}

inline bool leq(std::uint32_t a1, std::uint32_t a2, std::uint32_t b1, std::uint32_t b2) {
    return a1 < b1 || (a1 == b1 && a2 <= b2);
}

inline bool leq(std::uint32_t a1, std::uint32_t a2, std::uint32_t a3,
                std::uint32_t b1, std::uint32_t b2, std::uint32_t b3) {
    return a1 < b1 || (a1 == b1 && leq(a2, a3, b2, b3));
}

// One stable pass of `order` by source[p + offset], reading 0 past the end.
void sort_pass(const KeySorter& sorter, std::vector<pos_t>& order, std::vector<pos_t>& scratch,
               std::vector<std::uint32_t>& keys, std::uint32_t max_key,
               std::span<const std::uint32_t> source, std::size_t offset) {
    keys.resize(order.size());
    scratch.resize(order.size());
    auto key_at = [&](pos_t p) -> std::uint32_t {
        return p + offset < source.size() ? source[p + offset] : 0;
    };
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k + kAhead < order.size() && order[k + kAhead] + offset < source.size()) {
            prefetch(&source[order[k + kAhead] + offset]);
        }
        keys[k] = key_at(order[k]);
    }
    sorter.sort_by_key(order, keys, max_key, scratch);
    order.swap(scratch);
}

std::vector<pos_t> build_dc3(const RankedText& text, const KeySorter& sorter, Dc3Stats* stats,
                             std::size_t depth);
std::vector<pos_t> merge_order(const Dc3Workspace& ws, const RankedText& text);

Dc3Workspace rank_sample_at(const RankedText& text, const KeySorter& sorter, Dc3Stats* stats,
                            std::size_t depth) {
    check_length(text);
    Dc3Stats local;
    if (stats == nullptr) {
        stats = &local;
    }
    stats->max_depth = std::max(stats->max_depth, depth);
    Dc3Workspace ws;
    ws.n = text.size();
    ws.depth = depth;
    const std::size_t n = ws.n;
    if (n == 0) {
        ws.sample_rank.assign(3, 0);
        return ws;
    }

    const std::size_t limit = n + (n % 3 == 1 ? 1 : 0);
    for (std::size_t p = 0; p < limit; ++p) {
        switch (p % 3) {
            case 0: ws.b0.push_back(static_cast<pos_t>(p)); break;
            case 1: ws.b1.push_back(static_cast<pos_t>(p)); break;
            default: ws.b2.push_back(static_cast<pos_t>(p)); break;
        }
    }
    ws.sample.reserve(ws.b1.size() + ws.b2.size());
    ws.sample.insert(ws.sample.end(), ws.b1.begin(), ws.b1.end());
    ws.sample.insert(ws.sample.end(), ws.b2.begin(), ws.b2.end());
    ws.triples.reserve(ws.sample.size());
    for (auto p : ws.sample) {
        ws.triples.push_back({sym(text, p), sym(text, p + 1), sym(text, p + 2)});
    }

    std::vector<pos_t> order = ws.sample;
    std::vector<pos_t> scratch;
    std::vector<std::uint32_t> keys;
    const std::uint64_t radix = std::uint64_t{text.sigma} + 1;
    if (radix * radix * radix - 1 <= std::numeric_limits<std::uint32_t>::max()) {
        // whole triple as one key, read in position order
        keys.resize(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            const auto& t = ws.triples[k];
            keys[k] = static_cast<std::uint32_t>((t[0] * radix + t[1]) * radix + t[2]);
        }
        scratch.resize(order.size());
        sorter.sort_by_key(order, keys, static_cast<std::uint32_t>(radix * radix * radix - 1), scratch);
        order.swap(scratch);
    } else {
        // least significant symbol first
        for (std::size_t offset : {2, 1, 0}) {
            sort_pass(sorter, order, scratch, keys, text.sigma, text.ranks, offset);
        }
    }

    // Lexicographic names of the triples, written in R order.
    const std::size_t m = ws.sample.size();
    const std::size_t b1_count = ws.b1.size();
    auto r_index = [&](pos_t p) -> std::size_t {
        return p % 3 == 1 ? p / 3 : b1_count + p / 3;
    };
    std::vector<std::uint32_t> names(m);
    std::uint32_t name = 0;
    std::array<std::uint32_t, 3> previous{};
    for (std::size_t k = 0; k < m; ++k) {
        if (k + kAhead < m) {
            prefetch(&ws.triples[r_index(order[k + kAhead])]);
            prefetch(&names[r_index(order[k + kAhead])]);
        }
        const auto& triple = ws.triples[r_index(order[k])];
        if (k == 0 || triple != previous) {
            ++name;
            previous = triple;
        }
        names[r_index(order[k])] = name;
    }

    ws.sample_rank.assign(n + 3, 0);
    if (name == m) {
        ws.sorted_sample = std::move(order);
        for (std::size_t k = 0; k < m; ++k) {
            ws.sample_rank[ws.sample[k]] = names[k];
        }
    } else {
        ++stats->recursions;
        RankedText reduced{std::move(names), name};
        const std::vector<pos_t> sub = build_dc3(reduced, sorter, stats, depth + 1);
        ws.sorted_sample.resize(m);
        auto sample_at = [&](std::size_t r) -> pos_t {
            return static_cast<pos_t>(r < b1_count ? 3 * r + 1 : 3 * (r - b1_count) + 2);
        };
        for (std::size_t k = 0; k < m; ++k) {
            if (k + kAhead < m) {
                prefetch(&ws.sample_rank[sample_at(sub[k + kAhead])]);
            }
            pos_t p = sample_at(sub[k]);
            ws.sorted_sample[k] = p;
            ws.sample_rank[p] = static_cast<pos_t>(k + 1);
        }
        // levels form a chain, so the deepest level seen so far lies below this one
        ws.depth = stats->max_depth;
    }
    return ws;
}

std::vector<pos_t> build_dc3(const RankedText& text, const KeySorter& sorter, Dc3Stats* stats,
                             std::size_t depth) {
    check_length(text);
    if (text.size() <= 1) {
        if (stats != nullptr) {
            stats->max_depth = std::max(stats->max_depth, depth);
        }
        return std::vector<pos_t>(text.size(), 0);
    }
    Dc3Workspace ws = rank_sample_at(text, sorter, stats, depth);
    sort_nonsample(ws, text, sorter);
    return merge_order(ws, text);
}

}  // namespace

SuffixArray SuffixArray::from_order(std::vector<pos_t> order) {
    SuffixArray out;
    out.rank.assign(order.size(), std::numeric_limits<pos_t>::max());
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i + kAhead < order.size() && order[i + kAhead] < order.size()) {
            prefetch(&out.rank[order[i + kAhead]]);
        }
        pos_t p = order[i];
        if (p >= order.size() || out.rank[p] != std::numeric_limits<pos_t>::max()) {
            throw std::invalid_argument("suffix order is not a permutation");
        }
        out.rank[p] = static_cast<pos_t>(i);
    }
    out.sa = std::move(order);
    return out;
}

void CountingSorter::sort_by_key(std::span<const pos_t> items, std::span<const std::uint32_t> keys,
                                 std::uint32_t max_key, std::span<pos_t> out) const {
    if (items.size() != keys.size() || out.size() != items.size()) {
        throw std::invalid_argument("sort_by_key: items, keys and output sizes differ");
    }
    for (auto k : keys) {
        if (k > max_key) {
            throw std::out_of_range("sort_by_key: key exceeds max_key");
        }
    }
    // Small key ranges take one counting pass. Wide ones go through 11-bit
    // LSD digits so the bucket array stays cache resident.
    constexpr unsigned kDigit = 11;
    const unsigned width = static_cast<unsigned>(std::bit_width(max_key));
    const unsigned digit = width <= 16 ? std::max(width, 1u) : kDigit;
    const std::size_t buckets = std::size_t{1} << digit;
    std::vector<std::size_t> count(buckets + 1);
    std::vector<pos_t> cur_items(items.begin(), items.end());
    std::vector<std::uint32_t> cur_keys(keys.begin(), keys.end());
    std::vector<pos_t> next_items(items.size());
    std::vector<std::uint32_t> next_keys(items.size());
    for (unsigned shift = 0; shift < std::max(width, 1u); shift += digit) {
        const std::uint32_t mask = static_cast<std::uint32_t>(buckets - 1);
        std::fill(count.begin(), count.end(), 0);
        for (auto k : cur_keys) {
            ++count[((k >> shift) & mask) + 1];
        }
        std::partial_sum(count.begin(), count.end(), count.begin());
        for (std::size_t i = 0; i < cur_items.size(); ++i) {
            const std::size_t d = count[(cur_keys[i] >> shift) & mask]++;
            next_items[d] = cur_items[i];
            next_keys[d] = cur_keys[i];
        }
        cur_items.swap(next_items);
        cur_keys.swap(next_keys);
    }
    std::copy(cur_items.begin(), cur_items.end(), out.begin());
}

SuffixArray build_sa_oracle(const RankedText& text) {
    check_length(text);
    std::vector<pos_t> order(text.size());
    std::iota(order.begin(), order.end(), pos_t{0});
    const auto& r = text.ranks;
    std::sort(order.begin(), order.end(), [&](pos_t a, pos_t b) {
        return std::lexicographical_compare(r.begin() + a, r.end(), r.begin() + b, r.end());
    });
    return SuffixArray::from_order(std::move(order));
}

SuffixArray build_sa_dc3(const RankedText& text, Dc3Stats* stats) {
    return build_sa_dc3(text, CountingSorter{}, stats);
}

SuffixArray build_sa_dc3(const RankedText& text, const KeySorter& sorter, Dc3Stats* stats) {
    return SuffixArray::from_order(build_dc3(text, sorter, stats, 1));
}

Dc3Workspace rank_sample(const RankedText& text, const KeySorter& sorter, Dc3Stats* stats) {
    return rank_sample_at(text, sorter, stats, 1);
}

void sort_nonsample(Dc3Workspace& ws, const RankedText& text, const KeySorter& sorter) {
    ws.sorted_nonsample = ws.b0;
    std::vector<pos_t> scratch;
    std::vector<std::uint32_t> keys;
    const auto max_rank = static_cast<std::uint32_t>(ws.sample.size());
    sort_pass(sorter, ws.sorted_nonsample, scratch, keys, max_rank, ws.sample_rank, 1);
    sort_pass(sorter, ws.sorted_nonsample, scratch, keys, text.sigma, text.ranks, 0);
}

SuffixArray merge_sample_nonsample(const Dc3Workspace& ws, const RankedText& text) {
    return SuffixArray::from_order(merge_order(ws, text));
}

namespace {

std::vector<pos_t> merge_order(const Dc3Workspace& ws, const RankedText& text) {
    const std::size_t n = ws.n;
    const auto& rank = ws.sample_rank;
    std::vector<pos_t> order;
    order.reserve(n);

    auto sample_first = [&](pos_t i, pos_t j) {
        if (i % 3 == 1) {
            return leq(sym(text, i), rank[i + 1], sym(text, j), rank[j + 1]);
        }
        return leq(sym(text, i), sym(text, i + 1), rank[i + 2],
                   sym(text, j), sym(text, j + 1), rank[j + 2]);
    };

    std::size_t s = 0;
    std::size_t t = 0;
    const auto& sample = ws.sorted_sample;
    const auto& nonsample = ws.sorted_nonsample;
    auto touch = [&](pos_t p) {
        prefetch(&text.ranks[std::min<std::size_t>(p, n - 1)]);
        prefetch(&rank[p + 1]);
    };
    while (s < sample.size() || t < nonsample.size()) {
        if (s + kAhead < sample.size()) {
            touch(sample[s + kAhead]);
        }
        if (t + kAhead < nonsample.size()) {
            touch(nonsample[t + kAhead]);
        }
        if (s < sample.size() && sample[s] >= n) {
            ++s;  // the all-sentinel padding position
            continue;
        }
        if (t == nonsample.size() || (s < sample.size() && sample_first(sample[s], nonsample[t]))) {
            order.push_back(sample[s++]);
        } else {
            order.push_back(nonsample[t++]);
        }
    }
    return order;
}

}  // namespace

std::map<pos_t, pos_t> sample_ranks(const RankedText& text) {
    Dc3Workspace ws = rank_sample(text, CountingSorter{});
    std::map<pos_t, pos_t> out;
    for (auto p : ws.sample) {
        out.emplace(p, ws.sample_rank[p]);
    }
    return out;
}

LcpArray build_lcp(const RankedText& text, const SuffixArray& sa) {
    const std::size_t n = text.size();
    if (sa.size() != n || sa.rank.size() != n) {
        throw std::invalid_argument("build_lcp: suffix array does not match text length");
    }
    LcpArray out;
    out.lcp.assign(n, 0);
    const auto& r = text.ranks;
    std::size_t h = 0;
    for (std::size_t p = 0; p < n; ++p) {
        pos_t i = sa.rank[p];
        if (i == 0) {
            h = 0;
            continue;
        }
        std::size_t q = sa.sa[i - 1];
        while (p + h < n && q + h < n && r[p + h] == r[q + h]) {
            ++h;
        }
        out.lcp[i] = static_cast<pos_t>(h);
        if (h > 0) {
            --h;
        }
    }
    return out;
}

}  // namespace saix
