#include "saix/rmq.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace saix::rmq {

namespace {

void check_range(std::size_t i, std::size_t j, std::size_t n) {
    if (i >= n || j >= n) {
        throw std::out_of_range("RMQ index out of range: (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") with n = " + std::to_string(n));
    }
}

inline std::size_t floor_log2(std::size_t x) {
    return static_cast<std::size_t>(std::bit_width(x)) - 1;
}

}  // namespace

SparseTable SparseTable::build(std::span<const std::int64_t> values) {
    if (values.empty()) {
        throw std::invalid_argument("cannot build a sparse table over an empty array");
    }
    SparseTable st;
    st.values_.assign(values.begin(), values.end());
    const std::size_t n = values.size();
    const std::size_t levels = floor_log2(n) + 1;
    st.table_.resize(levels);
    st.table_[0].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        st.table_[0][i] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t k = 1; k < levels; ++k) {
        const std::size_t half = std::size_t{1} << (k - 1);
        const auto& prev = st.table_[k - 1];
        auto& cur = st.table_[k];
        cur.resize(n - (half << 1) + 1);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            auto a = prev[i];
            auto b = prev[i + half];
            cur[i] = st.values_[b] < st.values_[a] ? b : a;
        }
    }
    return st;
}

std::size_t SparseTable::query(std::size_t i, std::size_t j) const {
    check_range(i, j, values_.size());
    if (i > j) {
        std::swap(i, j);
    }
    const std::size_t k = floor_log2(j - i + 1);
    auto a = table_[k][i];
    auto b = table_[k][j + 1 - (std::size_t{1} << k)];
    return values_[b] < values_[a] ? b : a;
}

CartesianTree build_cartesian(std::span<const std::int64_t> values) {
    if (values.empty()) {
        throw std::invalid_argument("cannot build a Cartesian tree over an empty array");
    }
    const std::size_t n = values.size();
    CartesianTree tree;
    tree.parent.assign(n, kNoNode);
    tree.left.assign(n, kNoNode);
    tree.right.assign(n, kNoNode);

    // Rightmost spine; popping only strictly larger values keeps earlier ties as ancestors.
    std::vector<std::uint32_t> spine;
    spine.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t last = kNoNode;
        while (!spine.empty() && values[spine.back()] > values[i]) {
            last = spine.back();
            spine.pop_back();
        }
        if (last != kNoNode) {
            tree.left[i] = last;
            tree.parent[last] = i;
        }
        if (!spine.empty()) {
            tree.right[spine.back()] = i;
            tree.parent[i] = spine.back();
        }
        spine.push_back(i);
    }
    tree.root = spine.front();
    return tree;
}

EulerTour euler_tour(const CartesianTree& tree) {
    const std::size_t n = tree.size();
    if (n == 0 || tree.root == kNoNode) {
        throw std::invalid_argument("Euler tour of an empty tree");
    }
    EulerTour tour;
    tour.E.reserve(2 * n - 1);
    tour.L.reserve(2 * n - 1);
    tour.R.assign(n, kNoNode);

    struct Frame {
        std::uint32_t node;
        int stage;
    };
    std::vector<Frame> stack;
    auto enter = [&](std::uint32_t v) {
        tour.R[v] = static_cast<std::uint32_t>(tour.E.size());
        tour.E.push_back(v);
        tour.L.push_back(static_cast<std::int32_t>(stack.size()));
        stack.push_back({v, 0});
    };
    enter(tree.root);
    while (!stack.empty()) {
        Frame& top = stack.back();
        std::uint32_t child = kNoNode;
        if (top.stage == 0) {
            top.stage = 1;
            child = tree.left[top.node];
        } else if (top.stage == 1) {
            top.stage = 2;
            child = tree.right[top.node];
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                tour.E.push_back(stack.back().node);
                tour.L.push_back(static_cast<std::int32_t>(stack.size() - 1));
            }
            continue;
        }
        if (child != kNoNode) {
            enter(child);
        }
    }
    return tour;
}

PlusMinusOneRmq PlusMinusOneRmq::build(std::span<const std::int32_t> values) {
    if (values.empty()) {
        throw std::invalid_argument("cannot build a +-1 RMQ over an empty array");
    }
    const std::size_t m = values.size();
    for (std::size_t i = 1; i < m; ++i) {
        auto step = static_cast<std::int64_t>(values[i]) - values[i - 1];
        if (step != 1 && step != -1) {
            throw std::invalid_argument("array is not +-1 at position " + std::to_string(i));
        }
    }

    PlusMinusOneRmq r;
    r.values_.assign(values.begin(), values.end());
    r.block_ = std::max<std::size_t>(1, floor_log2(m) / 2);
    const std::size_t b = r.block_;
    const std::size_t blocks = (m + b - 1) / b;
    r.types_.resize(blocks);
    r.block_argmin_.resize(blocks);
    r.type_slot_.assign(std::size_t{1} << (b - 1), kNoNode);

    std::vector<std::int64_t> minima(blocks);
    std::vector<std::int32_t> local(b);
    for (std::size_t blk = 0; blk < blocks; ++blk) {
        const std::size_t start = blk * b;
        std::uint32_t type = 0;
        for (std::size_t s = 0; s + 1 < b; ++s) {
            std::size_t p = start + s;
            bool up = p + 1 >= m || r.values_[p + 1] > r.values_[p];
            if (up) {
                type |= std::uint32_t{1} << s;
            }
        }
        r.types_[blk] = type;

        if (r.type_slot_[type] == kNoNode) {
            local[0] = 0;
            for (std::size_t s = 0; s + 1 < b; ++s) {
                local[s + 1] = local[s] + (((type >> s) & 1U) != 0 ? 1 : -1);
            }
            std::vector<std::uint8_t> answers(b * b, 0);
            for (std::size_t i = 0; i < b; ++i) {
                std::size_t best = i;
                for (std::size_t j = i; j < b; ++j) {
                    if (local[j] < local[best]) {
                        best = j;
                    }
                    answers[i * b + j] = static_cast<std::uint8_t>(best);
                }
            }
            r.type_slot_[type] = static_cast<std::uint32_t>(r.type_tables_.size());
            r.type_tables_.push_back(std::move(answers));
        }

        const std::size_t last = std::min(start + b, m) - 1;
        const std::size_t arg = start + r.in_block(type, 0, last - start);
        r.block_argmin_[blk] = static_cast<std::uint32_t>(arg);
        minima[blk] = r.values_[arg];
    }
    r.block_minima_ = SparseTable::build(minima);
    return r;
}

std::size_t PlusMinusOneRmq::in_block(std::uint32_t type, std::size_t i, std::size_t j) const {
    if (type >= type_slot_.size() || type_slot_[type] == kNoNode) {
        throw std::out_of_range("block type not present");
    }
    if (i > j || j >= block_) {
        throw std::out_of_range("in-block offsets out of range");
    }
    return type_tables_[type_slot_[type]][i * block_ + j];
}

std::size_t PlusMinusOneRmq::query(std::size_t i, std::size_t j) const {
    check_range(i, j, values_.size());
    if (i > j) {
        std::swap(i, j);
    }
    const std::size_t b = block_;
    const std::size_t bi = i / b;
    const std::size_t bj = j / b;
    const std::size_t si = bi * b;
    if (bi == bj) {
        return si + in_block(types_[bi], i - si, j - si);
    }
    std::size_t best = si + in_block(types_[bi], i - si, b - 1);
    if (bj > bi + 1) {
        std::size_t mid = block_argmin_[block_minima_.query(bi + 1, bj - 1)];
        if (values_[mid] < values_[best]) {
            best = mid;
        }
    }
    const std::size_t sj = bj * b;
    std::size_t right = sj + in_block(types_[bj], 0, j - sj);
    if (values_[right] < values_[best]) {
        best = right;
    }
    return best;
}

LcaRmq LcaRmq::build(std::span<const std::int64_t> values) {
    LcaRmq r;
    r.tree_ = build_cartesian(values);
    r.tour_ = euler_tour(r.tree_);
    r.pm1_ = PlusMinusOneRmq::build(r.tour_.L);
    return r;
}

std::size_t LcaRmq::query(std::size_t i, std::size_t j) const {
    check_range(i, j, tree_.size());
    std::size_t a = tour_.R[i];
    std::size_t b = tour_.R[j];
    if (a > b) {
        std::swap(a, b);
    }
    return tour_.E[pm1_.query(a, b)];
}

std::size_t rmq_via_lca(std::span<const std::int64_t> values, std::size_t i, std::size_t j) {
    check_range(i, j, values.size());
    return LcaRmq::build(values).query(i, j);
}

Structure Structure::build(std::span<const std::int64_t> values, Engine engine) {
    Structure s;
    s.engine_ = engine;
    if (values.empty()) {
        return s;
    }
    if (engine == Engine::sparse) {
        s.impl_ = SparseTable::build(values);
    } else {
        s.impl_ = LcaRmq::build(values);
    }
    return s;
}

std::size_t Structure::query(std::size_t i, std::size_t j) const {
    if (const auto* st = std::get_if<SparseTable>(&impl_)) {
        return st->query(i, j);
    }
    if (const auto* lca = std::get_if<LcaRmq>(&impl_)) {
        return lca->query(i, j);
    }
    throw std::out_of_range("RMQ query on an empty structure");
}

}  // namespace saix::rmq
