#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dupdel {

// Fenwick (binary indexed) tree over signed 64-bit weights with append
// support: prefix sums, point updates, appends and sampling by cumulative
// weight are all O(log n). Indices are 0-based externally; the classic
// 1-based layout is internal.
class FenwickTree {
public:
    FenwickTree() : tree_(1, 0) {}

    std::size_t size() const { return tree_.size() - 1; }

    std::int64_t total() const { return prefix(size()); }

    // Sum of the weights at indices [0, count).
    std::int64_t prefix(std::size_t count) const {
        std::int64_t sum = 0;
        for (std::size_t i = count; i > 0; i -= i & (~i + 1))
            sum += tree_[i];
        return sum;
    }

    void add(std::size_t index, std::int64_t delta) {
        for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1))
            tree_[i] += delta;
    }

    // Appends a new weight at index size(). The new node at 1-based position
    // i covers the range (i - lowbit(i), i], whose sum is reconstructed from
    // two existing prefixes, so no rebuild is needed.
    void append(std::int64_t weight) {
        const std::size_t i = tree_.size();
        tree_.push_back(weight + prefix(i - 1) - prefix(i - (i & (~i + 1))));
    }

    // Smallest index j with prefix(j + 1) > target, for target in
    // [0, total()); a uniform target selects j with probability
    // weight[j] / total().
    std::size_t find(std::int64_t target) const {
        std::size_t pos = 0;
        for (std::size_t mask = std::bit_floor(size()); mask != 0; mask >>= 1) {
            const std::size_t next = pos + mask;
            if (next <= size() && tree_[next] <= target) {
                target -= tree_[next];
                pos = next;
            }
        }
        return pos;
    }

private:
    std::vector<std::int64_t> tree_;  // tree_[i] sums (i - lowbit(i), i]
};

}  // namespace dupdel
