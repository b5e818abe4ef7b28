#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "dupdel/fenwick.hpp"

using dupdel::FenwickTree;

TEST_CASE("fenwick prefix sums match a naive accumulator") {
    std::mt19937_64 rng(12345);
    std::vector<std::int64_t> weights;
    FenwickTree tree;
    for (int i = 0; i < 300; ++i) {
        const auto w = static_cast<std::int64_t>(rng() % 17);
        weights.push_back(w);
        tree.append(w);
    }
    REQUIRE(tree.size() == weights.size());

    for (std::size_t count = 0; count <= weights.size(); ++count) {
        std::int64_t expected = 0;
        for (std::size_t i = 0; i < count; ++i) expected += weights[i];
        CHECK(tree.prefix(count) == expected);
    }
    CHECK(tree.total() == tree.prefix(weights.size()));
}

TEST_CASE("fenwick point updates after appends") {
    FenwickTree tree;
    std::vector<std::int64_t> weights{5, 1, 3, 9, 2, 4, 8, 7, 6};
    for (auto w : weights) tree.append(w);

    std::mt19937_64 rng(99);
    for (int round = 0; round < 200; ++round) {
        const std::size_t index = rng() % weights.size();
        const auto delta = static_cast<std::int64_t>(rng() % 7) - 3;
        if (weights[index] + delta < 0) continue;
        weights[index] += delta;
        tree.add(index, delta);
        std::int64_t expected = 0;
        for (std::size_t i = 0; i <= index; ++i) expected += weights[i];
        CHECK(tree.prefix(index + 1) == expected);
    }
}

TEST_CASE("fenwick find inverts the cumulative weights") {
    FenwickTree tree;
    const std::vector<std::int64_t> weights{2, 0, 5, 1, 0, 3, 4};
    for (auto w : weights) tree.append(w);

    std::int64_t target = 0;
    for (std::size_t j = 0; j < weights.size(); ++j)
        for (std::int64_t hit = 0; hit < weights[j]; ++hit)
            CHECK(tree.find(target++) == j);
    REQUIRE(target == tree.total());
}

TEST_CASE("fenwick find handles non-power-of-two sizes") {
    for (std::size_t n : {1u, 2u, 3u, 5u, 13u, 64u, 100u}) {
        FenwickTree tree;
        for (std::size_t i = 0; i < n; ++i) tree.append(1);
        for (std::size_t j = 0; j < n; ++j)
            CHECK(tree.find(static_cast<std::int64_t>(j)) == j);
    }
}
