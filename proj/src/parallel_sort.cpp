#include "saix/parallel_sort.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace saix::par {

namespace {

// Below this many lanes per worker a phase runs on one worker.
constexpr std::size_t kGrain = std::size_t{1} << 14;

std::uint64_t field(std::uint64_t key, unsigned shift, unsigned width) {
    if (width >= 64) {
        return key >> shift;
    }
    return (key >> shift) & ((std::uint64_t{1} << width) - 1);
}

void check_fits(std::span<const std::uint64_t> keys, unsigned total_bits) {
    if (total_bits >= 64) {
        return;
    }
    const std::uint64_t limit = std::uint64_t{1} << total_bits;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i] >= limit) {
            throw std::out_of_range("key " + std::to_string(keys[i]) + " at index " + std::to_string(i) +
                                    " does not fit in " + std::to_string(total_bits) + " bits");
        }
    }
}

// One split pass inside a single block. Lanes run in order on one worker, so
// the scan is the plain running sum; d is a permutation because zero-bit keys
// fill [0, total_false) and one-bit keys fill the rest.
void block_split(std::span<const std::uint64_t> in, std::span<std::uint64_t> out, unsigned bit,
                 SplitState& s) {
    const std::size_t n = in.size();
    s.b.resize(n);
    s.e.resize(n);
    s.f.resize(n);
    s.d.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.b[i] = static_cast<std::uint8_t>((in[i] >> bit) & 1U);
        s.e[i] = s.b[i] ^ 1U;
    }
    std::size_t running = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s.f[i] = running;
        running += s.e[i];
    }
    s.total_false = n == 0 ? 0 : s.f[n - 1] + s.e[n - 1];
    for (std::size_t i = 0; i < n; ++i) {
        s.d[i] = s.b[i] != 0 ? i - s.f[i] + s.total_false : s.f[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        out[s.d[i]] = in[i];
    }
}

// Multi-bit digit pass: histogram, exclusive scan over buckets, stable scatter.
void block_digit_pass(std::span<const std::uint64_t> in, std::span<std::uint64_t> out, unsigned shift,
                      unsigned width, std::vector<std::size_t>& count) {
    count.assign((std::size_t{1} << width) + 1, 0);
    for (auto k : in) {
        ++count[field(k, shift, width) + 1];
    }
    for (std::size_t v = 1; v < count.size(); ++v) {
        count[v] += count[v - 1];
    }
    for (auto k : in) {
        out[count[field(k, shift, width)]++] = k;
    }
}

// LSD sort of one block over bits [lo, hi); result ends up in `data`.
void block_sort(std::span<std::uint64_t> data, std::span<std::uint64_t> scratch, unsigned lo,
                unsigned hi, unsigned digit_bits) {
    SplitState state;
    std::vector<std::size_t> count;
    std::span<std::uint64_t> src = data;
    std::span<std::uint64_t> dst = scratch;
    for (unsigned bit = lo; bit < hi; bit += digit_bits) {
        const unsigned width = std::min(digit_bits, hi - bit);
        if (width == 1) {
            block_split(src, dst, bit, state);
        } else {
            block_digit_pass(src, dst, bit, width, count);
        }
        std::swap(src, dst);
    }
    if (src.data() != data.data()) {
        std::copy(src.begin(), src.end(), data.begin());
    }
}

std::vector<std::uint64_t> scan_phases(std::span<const std::uint64_t> values, WorkerPool& pool) {
    const std::size_t n = values.size();
    std::vector<std::uint64_t> cur(n);
    std::vector<std::uint64_t> next(n);
    pool.for_ranges(n, kGrain, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            cur[i] = i == 0 ? 0 : values[i - 1];
        }
    });
    for (std::size_t offset = 1; offset < n; offset <<= 1) {
        pool.for_ranges(n, kGrain, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                next[i] = i >= offset ? cur[i - offset] + cur[i] : cur[i];
            }
        });
        cur.swap(next);
    }
    return cur;
}

// One whole-array 1-bit split as four phases: flags, scan, destinations, scatter.
void global_split(std::span<const std::uint64_t> in, std::span<std::uint64_t> out, unsigned bit,
                  WorkerPool& pool, std::vector<std::uint64_t>& e, std::vector<std::size_t>& d) {
    const std::size_t n = in.size();
    e.resize(n);
    d.resize(n);
    pool.for_ranges(n, kGrain, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            e[i] = ((in[i] >> bit) & 1U) ^ 1U;
        }
    });
    const std::vector<std::uint64_t> f = scan_phases(e, pool);
    const std::size_t total_false = f[n - 1] + e[n - 1];
    pool.for_ranges(n, kGrain, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            d[i] = e[i] == 0 ? i - f[i] + total_false : f[i];
        }
    });
    pool.for_ranges(n, kGrain, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[d[i]] = in[i];
        }
    });
}

// Whole-array multi-bit pass: per-range histograms, bucket-major offsets, per-range scatter.
void global_digit_pass(std::span<const std::uint64_t> in, std::span<std::uint64_t> out, unsigned shift,
                       unsigned width, WorkerPool& pool) {
    const std::size_t n = in.size();
    const std::size_t buckets = std::size_t{1} << width;
    const std::size_t parts = std::clamp<std::size_t>(n / kGrain, 1, pool.size());
    std::vector<std::vector<std::size_t>> hist(parts, std::vector<std::size_t>(buckets, 0));
    auto range = [&](std::size_t p) { return std::pair{n * p / parts, n * (p + 1) / parts}; };
    pool.run(parts, [&](std::size_t p) {
        auto [begin, end] = range(p);
        for (std::size_t i = begin; i < end; ++i) {
            ++hist[p][field(in[i], shift, width)];
        }
    });
    std::size_t running = 0;
    for (std::size_t v = 0; v < buckets; ++v) {
        for (std::size_t p = 0; p < parts; ++p) {
            std::size_t c = hist[p][v];
            hist[p][v] = running;
            running += c;
        }
    }
    pool.run(parts, [&](std::size_t p) {
        auto [begin, end] = range(p);
        auto& offset = hist[p];
        for (std::size_t i = begin; i < end; ++i) {
            out[offset[field(in[i], shift, width)]++] = in[i];
        }
    });
}

// Stable two-finger merge comparing bits [lo, hi) only.
void merge_runs(std::span<const std::uint64_t> left, std::span<const std::uint64_t> right,
                std::span<std::uint64_t> out, unsigned lo, unsigned hi) {
    const unsigned width = hi - lo;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t k = 0;
    while (a < left.size() && b < right.size()) {
        if (field(right[b], lo, width) < field(left[a], lo, width)) {
            out[k++] = right[b++];
        } else {
            out[k++] = left[a++];
        }
    }
    while (a < left.size()) {
        out[k++] = left[a++];
    }
    while (b < right.size()) {
        out[k++] = right[b++];
    }
}

// Chunk-local radix sorts followed by pairwise merge rounds, in place.
void sort_bits(std::vector<std::uint64_t>& data, unsigned lo, unsigned hi, const SortConfig& config,
               WorkerPool& pool) {
    const std::size_t n = data.size();
    if (n <= 1 || lo >= hi) {
        return;
    }
    const ChunkPlan plan = ChunkPlan::make(n, config);
    std::vector<std::uint64_t> scratch(n);
    pool.run(plan.chunk_count(), [&](std::size_t c) {
        const std::size_t begin = plan.bounds[c];
        const std::size_t len = plan.bounds[c + 1] - begin;
        block_sort(std::span(data).subspan(begin, len), std::span(scratch).subspan(begin, len), lo, hi,
                   config.digit_bits);
    });

    std::vector<std::size_t> runs = plan.bounds;
    std::vector<std::uint64_t>* src = &data;
    std::vector<std::uint64_t>* dst = &scratch;
    while (runs.size() > 2) {
        const std::size_t run_count = runs.size() - 1;
        const std::size_t pairs = (run_count + 1) / 2;
        pool.run(pairs, [&](std::size_t k) {
            const std::size_t begin = runs[2 * k];
            const std::size_t mid = runs[2 * k + 1];
            const std::size_t end = 2 * k + 2 < runs.size() ? runs[2 * k + 2] : mid;
            std::span<const std::uint64_t> s(*src);
            merge_runs(s.subspan(begin, mid - begin), s.subspan(mid, end - mid),
                       std::span(*dst).subspan(begin, end - begin), lo, hi);
        });
        std::vector<std::size_t> merged;
        merged.reserve(pairs + 1);
        for (std::size_t r = 0; r < runs.size(); r += 2) {
            merged.push_back(runs[r]);
        }
        if (merged.back() != n) {
            merged.push_back(n);
        }
        runs.swap(merged);
        std::swap(src, dst);
    }
    if (src != &data) {
        data.swap(scratch);
    }
}

}  // namespace

void SortConfig::validate() const {
    if (digit_bits == 0) {
        throw std::invalid_argument("digit width must be at least 1 bit");
    }
    if (digit_bits > 16) {
        throw std::invalid_argument("digit width above 16 bits is not supported");
    }
    if (total_bits == 0 || total_bits > 64) {
        throw std::invalid_argument("total key bits must be in [1, 64]");
    }
    if (total_bits % digit_bits != 0) {
        throw std::invalid_argument("total key bits (" + std::to_string(total_bits) +
                                    ") must be a multiple of the digit width (" +
                                    std::to_string(digit_bits) + ")");
    }
    if (chunk_size == 0) {
        throw std::invalid_argument("chunk size must be at least 1");
    }
    if (workers == 0) {
        throw std::invalid_argument("worker count must be at least 1");
    }
}

ChunkPlan ChunkPlan::make(std::size_t n, const SortConfig& config) {
    if (config.chunk_size == 0) {
        throw std::invalid_argument("chunk size must be at least 1");
    }
    ChunkPlan plan;
    plan.chunk_size = config.chunk_size;
    plan.workers = config.workers;
    for (std::size_t b = 0; b < n; b += config.chunk_size) {
        plan.bounds.push_back(b);
    }
    plan.bounds.push_back(n);
    return plan;
}

std::vector<std::uint64_t> exclusive_scan(std::span<const std::uint64_t> values, unsigned workers) {
    WorkerPool pool(workers);
    return scan_phases(values, pool);
}

SplitResult split_by_bit(std::span<const std::uint64_t> keys, unsigned bit) {
    if (bit >= 64) {
        throw std::out_of_range("split bit " + std::to_string(bit) + " outside a 64-bit key");
    }
    SplitResult r;
    r.keys.resize(keys.size());
    block_split(keys, r.keys, bit, r.state);
    return r;
}

std::vector<std::uint64_t> radix_sort(std::span<const std::uint64_t> keys, const SortConfig& config) {
    config.validate();
    check_fits(keys, config.total_bits);
    std::vector<std::uint64_t> a(keys.begin(), keys.end());
    if (a.size() <= 1) {
        return a;
    }
    std::vector<std::uint64_t> b(a.size());
    WorkerPool pool(config.workers);
    std::vector<std::uint64_t> e;
    std::vector<std::size_t> d;
    for (unsigned bit = 0; bit < config.total_bits; bit += config.digit_bits) {
        if (config.digit_bits == 1) {
            global_split(a, b, bit, pool, e, d);
        } else {
            global_digit_pass(a, b, bit, config.digit_bits, pool);
        }
        a.swap(b);
    }
    return a;
}

std::vector<std::uint64_t> chunked_sort(std::span<const std::uint64_t> keys, const SortConfig& config) {
    config.validate();
    check_fits(keys, config.total_bits);
    std::vector<std::uint64_t> data(keys.begin(), keys.end());
    WorkerPool pool(config.workers);
    sort_bits(data, 0, config.total_bits, config, pool);
    return data;
}

ChunkedKeySorter::ChunkedKeySorter(const SortConfig& config, WorkerPool& pool)
    : config_(config), pool_(pool) {
    config_.validate();
}

void ChunkedKeySorter::sort_by_key(std::span<const pos_t> items, std::span<const std::uint32_t> keys,
                                   std::uint32_t max_key, std::span<pos_t> out) const {
    if (items.size() != keys.size() || out.size() != items.size()) {
        throw std::invalid_argument("sort_by_key: items, keys and output sizes differ");
    }
    // key in the high word, item slot in the low word
    std::vector<std::uint64_t> packed(items.size());
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (keys[k] > max_key) {
            throw std::out_of_range("sort_by_key: key exceeds max_key");
        }
        packed[k] = (static_cast<std::uint64_t>(keys[k]) << 32) | k;
    }
    const auto key_bits = static_cast<unsigned>(std::max(1, static_cast<int>(std::bit_width(max_key))));
    sort_bits(packed, 32, 32 + key_bits, config_, pool_);
    for (std::size_t k = 0; k < packed.size(); ++k) {
        out[k] = items[packed[k] & 0xffffffffU];
    }
}

SuffixArray parallel_build_sa(const RankedText& text, const SortConfig& config, Dc3Stats* stats) {
    config.validate();
    WorkerPool pool(config.workers);
    ChunkedKeySorter sorter(config, pool);
    return build_sa_dc3(text, sorter, stats);
}

}  // namespace saix::par
