#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dupdel/fenwick.hpp"
#include "dupdel/rng.hpp"

namespace dupdel {

using CliqueRef = std::size_t;

// Full simulator state. A duplication keeps the copied vertex's clique
// complete and a deletion just splits one vertex off as a singleton, so the
// graph is a disjoint union of cliques at all times and a multiset of clique
// sizes describes it exactly: a vertex in a clique of size s has degree
// s - 1. A Fenwick tree over the sizes samples the clique of a uniformly
// chosen vertex and applies size updates in O(log m).
class CliqueTable {
public:
    // A fresh graph is the single vertex, i.e. one clique of size 1.
    CliqueTable() { insert_singleton(); }

    std::int64_t total_vertices() const { return total_; }
    std::size_t clique_count() const { return sizes_.size(); }
    std::int64_t size_of(CliqueRef c) const { return sizes_[c]; }
    std::int64_t max_degree() const { return max_size_ - 1; }

    // Clique of a uniformly chosen vertex: clique j with probability
    // sizes[j] / N.
    CliqueRef sample_vertex(RandomSource& rng) const {
        return weights_.find(static_cast<std::int64_t>(
            rng.below(static_cast<std::uint64_t>(total_))));
    }

    // The new vertex is joined to the selected vertex and all its
    // neighbours, i.e. the clique grows by one.
    void duplicate(CliqueRef c) {
        const std::int64_t s = sizes_[c];
        count_of_size_[s] -= 1;
        sizes_[c] = s + 1;
        bump_count(s + 1);
        weights_.add(c, +1);
        total_ += 1;
    }

    // All edges of the selected vertex are removed; the vertex itself stays
    // as a fresh singleton clique. On an already isolated vertex this is a
    // genuine event that changes nothing.
    void delete_vertex(CliqueRef c) {
        const std::int64_t s = sizes_[c];
        if (s == 1) return;
        count_of_size_[s] -= 1;
        sizes_[c] = s - 1;
        count_of_size_[s - 1] += 1;
        weights_.add(c, -1);
        total_ -= 1;
        if (s == max_size_ && count_of_size_[s] == 0)
            while (max_size_ > 1 && count_of_size_[max_size_] == 0) --max_size_;
        insert_singleton();
    }

    // Sparse histogram degree -> vertex count, ascending in degree. A clique
    // of size s contributes s vertices of degree s - 1.
    std::vector<std::pair<std::int64_t, std::int64_t>> degree_histogram() const {
        std::vector<std::pair<std::int64_t, std::int64_t>> hist;
        for (std::int64_t s = 1; s <= max_size_; ++s)
            if (count_of_size_[s] > 0)
                hist.emplace_back(s - 1, count_of_size_[s] * s);
        return hist;
    }

    // Sum over all vertices of C(degree, r), computed per clique size as
    // count * s * C(s - 1, r). Throws std::overflow_error if the exact value
    // does not fit in 64 bits.
    std::int64_t s_n_r(int r) const;

    // Number of cliques of each size (index = size); sizes()[0] is unused.
    const std::vector<std::int64_t>& count_of_size() const { return count_of_size_; }

private:
    void insert_singleton() {
        sizes_.push_back(1);
        weights_.append(1);
        bump_count(1);
        total_ += 1;
    }

    void bump_count(std::int64_t s) {
        if (static_cast<std::size_t>(s) >= count_of_size_.size())
            count_of_size_.resize(s + 1, 0);
        count_of_size_[s] += 1;
        if (s > max_size_) max_size_ = s;
    }

    FenwickTree weights_;
    std::vector<std::int64_t> sizes_;
    std::vector<std::int64_t> count_of_size_{0, 0};
    std::int64_t max_size_ = 0;
    std::int64_t total_ = 0;
};

inline CliqueTable new_graph() { return CliqueTable{}; }

}  // namespace dupdel
