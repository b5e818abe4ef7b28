#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dupdel/clique_table.hpp"
#include "dupdel/params.hpp"
#include "dupdel/rng.hpp"

namespace dupdel {

enum class EventKind { duplication, deletion, noop };

// One step of the base discrete model: pick a uniform vertex, duplicate it
// with probability theta, otherwise delete its edges.
EventKind step_v1(CliqueTable& table, const ModelParams& p, RandomSource& rng);

// The slowed-down variant: at step n (1-based) the base event happens with
// probability N_{n-1} / n, otherwise nothing changes. The dynamics guarantee
// N <= n entering every step; violating that is an internal error.
EventKind step_v2(CliqueTable& table, std::int64_t n, const ModelParams& p,
                  RandomSource& rng);

// The continuous-time variant, event-driven: the per-vertex unit clocks
// superpose to total rate N, so the waiting time is Exponential(N) and the
// jump itself is a base event. Returns the waiting time together with the
// event.
std::pair<double, EventKind> advance_v3(CliqueTable& table, const ModelParams& p,
                                        RandomSource& rng);

// State observed at one snapshot point of a run.
struct SimSnapshot {
    double step_or_time = 0.0;  // integer-valued for versions 1 and 2
    std::int64_t n_vertices = 0;
    std::int64_t max_degree = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> degree_histogram;
    std::int64_t s1 = 0, s2 = 0, s3 = 0;  // S(r) = sum_i C(degree_i, r)
    // Finite-run estimate of the limiting scale variable: N_n / n for
    // version 1 (law of large numbers scale), n^-theta N_n for version 2,
    // e^-theta t N(t) for version 3.
    double scaling_estimate = 0.0;
};

struct RunConfig {
    int version = 1;       // 1, 2 or 3
    double horizon = 0.0;  // step count (versions 1/2) or end time (version 3)
    // The engine seed is derived from (seed, replica) by the documented
    // mixing function; a standalone run is replica 0 of its master seed.
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;
    // Ascending snapshot points (steps or times); the horizon is always
    // recorded, whether or not it is listed.
    std::vector<double> snapshot_points;
};

// Runs one simulation from the single-vertex graph and returns the snapshots
// in schedule order. Version 3 snapshots observe the piecewise-constant state
// at exactly the scheduled time.
std::vector<SimSnapshot> run_simulation(const RunConfig& config, const ModelParams& p);

// Geometric checkpoint schedule: lo, 2 lo, 4 lo, ... not exceeding hi.
std::vector<double> geometric_snapshots(double lo, double hi);

}  // namespace dupdel
