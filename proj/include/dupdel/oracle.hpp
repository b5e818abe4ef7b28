#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dupdel/params.hpp"
#include "dupdel/rng.hpp"

namespace dupdel::oracle {

// Exact law of the clique-size multiset after n steps, keyed by the
// canonical (sorted descending) multiset. std::map keeps iteration order
// deterministic for serialization and tests.
struct StateDistribution {
    int version = 1;
    int n = 0;
    double theta = 0.0;
    std::map<std::vector<int>, double> entries;

    double total_probability() const;
    double expected_vertices() const;
    // E sum_i C(degree_i, r) under this law.
    double expected_s_r(int r) const;
};

// Brute-force path expansion of the step dynamics; version 1 or 2. The state
// space explodes combinatorially, hence the n <= 8 guard.
StateDistribution enumerate_states(int version, double theta, int n);

// Solves the first-passage system for reaching degree r before deletion,
//   p_0 = theta p_1,   p_i = theta p_{i+1} + (i/(i+1))(1-theta) p_{i-1},
//   p_r = 1,
// by the Thomas algorithm (the matrix is strictly diagonally dominant).
// Returns p_0 .. p_r; p_0 equals 1/a_r.
std::vector<double> first_passage_solve(double theta, int r);

// Stationary law of the fixed-vertex degree chain truncated at k_trunc with
// a reflecting boundary (the up-rate out of the top state is dropped).
// Returns q_0 .. q_{k_trunc}, normalized; entries with k << k_trunc are
// accurate, the top of the range is truncation-dominated.
std::vector<double> stationary_solve(double theta, int k_trunc);

// Monte Carlo estimate of p_0(r) over the embedded jump chain.
double monte_carlo_first_passage(double theta, int r, std::int64_t replicas,
                                 RandomSource& rng);

}  // namespace dupdel::oracle
