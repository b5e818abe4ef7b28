#include "dupdel/clique_table.hpp"

#include <limits>
#include <stdexcept>

namespace dupdel {

namespace {

using uint128 = unsigned __int128;

constexpr uint128 kInt64Max =
    static_cast<uint128>(std::numeric_limits<std::int64_t>::max());

// Exact C(n, r) with early overflow detection. After the symmetry reduction
// r <= n/2 the partial values C(n, i) increase in i, so the first partial
// result beyond the guard bound proves the final value overflows too.
uint128 checked_binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    uint128 result = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        // result * (n - r + i) stays exactly divisible by i at every step.
        if (result > kInt64Max)
            throw std::overflow_error("binomial coefficient exceeds 64 bits");
        result = result * static_cast<uint128>(n - r + i) / static_cast<uint128>(i);
    }
    if (result > kInt64Max)
        throw std::overflow_error("binomial coefficient exceeds 64 bits");
    return result;
}

}  // namespace

std::int64_t CliqueTable::s_n_r(int r) const {
    if (r < 0) throw std::invalid_argument("s_n_r requires r >= 0");
    if (r == 0) return total_;  // C(d, 0) = 1 for every vertex
    uint128 sum = 0;
    for (std::int64_t s = 1; s <= max_size_; ++s) {
        const std::int64_t count = count_of_size_[s];
        if (count == 0) continue;
        const uint128 per_clique =
            static_cast<uint128>(s) * checked_binomial(s - 1, r);
        if (per_clique > kInt64Max)
            throw std::overflow_error("s_n_r exceeds 64 bits");
        sum += static_cast<uint128>(count) * per_clique;
        if (sum > kInt64Max)
            throw std::overflow_error("s_n_r exceeds 64 bits");
    }
    return static_cast<std::int64_t>(sum);
}

}  // namespace dupdel
