#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace saix {

/// Range-minimum structures. Every query range is inclusive, i > j is
/// normalized by swapping, and ties resolve to the leftmost index.
namespace rmq {

/// O(n log n) table of window minima over power-of-two widths.
class SparseTable {
public:
    /// Throws std::invalid_argument on empty input.
    static SparseTable build(std::span<const std::int64_t> values);

    /// Index of the leftmost minimum over [i, j]. Throws std::out_of_range.
    std::size_t query(std::size_t i, std::size_t j) const;

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const std::int64_t> values() const noexcept { return values_; }
    /// table()[k][i] is the argmin over [i, i + 2^k).
    const std::vector<std::vector<std::uint32_t>>& table() const noexcept { return table_; }

private:
    std::vector<std::int64_t> values_;
    std::vector<std::vector<std::uint32_t>> table_;
};

inline constexpr std::uint32_t kNoNode = UINT32_MAX;

struct CartesianTree {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    std::uint32_t root = kNoNode;

    std::size_t size() const noexcept { return parent.size(); }
};

/// Min-heap ordered tree whose in-order traversal is 0..n-1. Among equal
/// values the leftmost is the ancestor. Throws std::invalid_argument on empty input.
CartesianTree build_cartesian(std::span<const std::int64_t> values);

/// Depth-first Euler tour: E holds node labels, L their depths (root at 0),
/// R the first tour position of each node.
struct EulerTour {
    std::vector<std::uint32_t> E;
    std::vector<std::int32_t> L;
    std::vector<std::uint32_t> R;
};

EulerTour euler_tour(const CartesianTree& tree);

/// <O(n), O(1)> RMQ for arrays whose neighbours differ by exactly one.
///
/// The array is cut into blocks of b = max(1, floor(log2(m) / 2)). A block's
/// type is the bit pattern of its b - 1 steps (bit set for +1), which fixes
/// every in-block answer; one lookup table per type present answers in-block
/// queries, and a sparse table over block minima answers the rest. The last
/// block is padded with +1 steps.
class PlusMinusOneRmq {
public:
    /// Throws std::invalid_argument on empty input or a step other than +-1.
    static PlusMinusOneRmq build(std::span<const std::int32_t> values);

    std::size_t query(std::size_t i, std::size_t j) const;

    std::size_t size() const noexcept { return values_.size(); }
    std::size_t block_size() const noexcept { return block_; }
    std::size_t block_count() const noexcept { return types_.size(); }
    std::uint32_t block_type(std::size_t block) const { return types_.at(block); }
    /// In-block argmin offset for a block type and offsets i <= j < block_size().
    std::size_t in_block(std::uint32_t type, std::size_t i, std::size_t j) const;
    std::size_t distinct_types() const noexcept { return type_tables_.size(); }

private:
    std::vector<std::int32_t> values_;
    std::size_t block_ = 1;
    std::vector<std::uint32_t> types_;
    std::vector<std::uint32_t> type_slot_;  // type -> index into type_tables_, or kNoNode
    std::vector<std::vector<std::uint8_t>> type_tables_;  // b*b argmin offsets per type
    std::vector<std::uint32_t> block_argmin_;
    SparseTable block_minima_;
};

/// RMQ through the Cartesian tree: the minimum over [i, j] is the LCA of
/// nodes i and j, found as the shallowest tour entry between R[i] and R[j].
class LcaRmq {
public:
    static LcaRmq build(std::span<const std::int64_t> values);

    std::size_t query(std::size_t i, std::size_t j) const;

    std::size_t size() const noexcept { return tree_.size(); }
    const CartesianTree& tree() const noexcept { return tree_; }
    const EulerTour& tour() const noexcept { return tour_; }
    const PlusMinusOneRmq& depths() const noexcept { return pm1_; }

private:
    CartesianTree tree_;
    EulerTour tour_;
    PlusMinusOneRmq pm1_;
};

/// One-shot convenience: builds an LcaRmq and answers a single query.
std::size_t rmq_via_lca(std::span<const std::int64_t> values, std::size_t i, std::size_t j);

enum class Engine { sparse, euler };

/// Either engine behind one query interface. Empty when built over no values.
class Structure {
public:
    Structure() = default;
    static Structure build(std::span<const std::int64_t> values, Engine engine = Engine::sparse);

    std::size_t query(std::size_t i, std::size_t j) const;
    Engine engine() const noexcept { return engine_; }
    bool empty() const noexcept { return std::holds_alternative<std::monostate>(impl_); }

private:
    Engine engine_ = Engine::sparse;
    std::variant<std::monostate, SparseTable, LcaRmq> impl_;
};

}  // namespace rmq
}  // namespace saix
