#pragma once

#include <vector>

#include "dupdel/params.hpp"
#include "dupdel/rng.hpp"

namespace dupdel {

// Event history of a single tracked vertex's degree process. From degree d
// the transition rates are: up d -> d+1 at (d+1) theta, down d -> d-1 at
// d (1-theta), and reset d -> 0 at 1-theta when the vertex itself is picked
// for deletion; the total out-rate is d + 1. A reset at degree 0 is a real
// clock ring recorded as a 0 -> 0 event.
struct FixedVertexTrajectory {
    std::vector<double> times;  // event times, increasing; times[0] = 0
    std::vector<int> degrees;   // degree right after each event; degrees[0] = 0
    int running_max = 0;

    // Degree of the piecewise-constant process at time t >= 0.
    int degree_at(double t) const;
};

FixedVertexTrajectory simulate_fixed_vertex(const ModelParams& p, double t_end,
                                            RandomSource& rng);

}  // namespace dupdel
