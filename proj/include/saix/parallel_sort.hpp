#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "saix/sequence.hpp"
#include "saix/suffix_index.hpp"
#include "saix/worker_pool.hpp"

namespace saix::par {

/// Radix sort settings. A sort makes total_bits / digit_bits passes; each
/// 1-bit pass is the flag/scan/scatter split of the modeled GPU kernel.
struct SortConfig {
    unsigned digit_bits = 1;
    unsigned total_bits = 32;
    std::size_t chunk_size = 4096;
    unsigned workers = default_workers();

    bool chunk_multiple_of_32() const noexcept { return chunk_size % 32 == 0; }

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

/// Per-lane state of one split pass.
struct SplitState {
    std::vector<std::uint8_t> b;   ///< bit of each key
    std::vector<std::uint8_t> e;   ///< 1 - b
    std::vector<std::size_t> f;    ///< exclusive prefix sums of e
    std::size_t total_false = 0;   ///< f[n-1] + e[n-1]
    std::vector<std::size_t> d;    ///< destination of each key
};

struct SplitResult {
    std::vector<std::uint64_t> keys;
    SplitState state;
};

/// Contiguous chunks covering [0, n); the last chunk may be short.
struct ChunkPlan {
    std::vector<std::size_t> bounds;  ///< chunk c is [bounds[c], bounds[c + 1])
    std::size_t chunk_size = 0;
    unsigned workers = 1;

    std::size_t chunk_count() const noexcept { return bounds.empty() ? 0 : bounds.size() - 1; }

    static ChunkPlan make(std::size_t n, const SortConfig& config);
};

/// out[i] = values[0] + ... + values[i - 1], computed as a Hillis-Steele scan:
/// ceil(log2 n) double-buffered phases with doubling offset, each phase
/// reading only what the previous one committed.
std::vector<std::uint64_t> exclusive_scan(std::span<const std::uint64_t> values, unsigned workers = 1);

/// Stable partition by one bit: zero-bit keys first. Throws std::out_of_range for bit >= 64.
SplitResult split_by_bit(std::span<const std::uint64_t> keys, unsigned bit);

/// Ascending stable LSD radix sort over the whole array. Each pass runs as
/// bulk-synchronous phases over `config.workers`. Throws std::out_of_range if
/// a key does not fit in config.total_bits.
std::vector<std::uint64_t> radix_sort(std::span<const std::uint64_t> keys, const SortConfig& config);

/// Radix-sorts each chunk independently, then merges sorted runs pairwise in
/// rounds. Same output as radix_sort.
std::vector<std::uint64_t> chunked_sort(std::span<const std::uint64_t> keys, const SortConfig& config);

/// KeySorter backed by chunked sorting on a shared pool, for the DC3 driver.
class ChunkedKeySorter final : public KeySorter {
public:
    ChunkedKeySorter(const SortConfig& config, WorkerPool& pool);

    void sort_by_key(std::span<const pos_t> items, std::span<const std::uint32_t> keys,
                     std::uint32_t max_key, std::span<pos_t> out) const override;

private:
    SortConfig config_;
    WorkerPool& pool_;
};

/// DC3 whose triple and rank passes run on chunked_sort.
SuffixArray parallel_build_sa(const RankedText& text, const SortConfig& config,
                              Dc3Stats* stats = nullptr);

}  // namespace saix::par
