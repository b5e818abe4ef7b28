#include "dupdel/fixed_vertex.hpp"

#include <algorithm>
#include <stdexcept>

namespace dupdel {

int FixedVertexTrajectory::degree_at(double t) const {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    // Last event at or before t.
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    return degrees[static_cast<std::size_t>(it - times.begin()) - 1];
}

FixedVertexTrajectory simulate_fixed_vertex(const ModelParams& p, double t_end,
                                            RandomSource& rng) {
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    FixedVertexTrajectory traj;
    traj.times.push_back(0.0);
    traj.degrees.push_back(0);

    double now = 0.0;
    int d = 0;
    for (;;) {
        // Draw order contract: waiting time first, then one uniform draw
        // split proportionally to the three rates.
        const double out_rate = d + 1.0;
        now += rng.exponential(out_rate);
        if (now > t_end) break;
        const double x = rng.u01() * out_rate;
        if (x < out_rate * p.theta)
            d += 1;
        else if (x < out_rate * p.theta + d * (1.0 - p.theta))
            d -= 1;
        else
            d = 0;
        traj.times.push_back(now);
        traj.degrees.push_back(d);
        traj.running_max = std::max(traj.running_max, d);
    }
    return traj;
}

}  // namespace dupdel
