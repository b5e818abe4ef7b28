#include "dupdel/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dupdel {

EventKind step_v1(CliqueTable& table, const ModelParams& p, RandomSource& rng) {
    // Draw order is part of the determinism contract: vertex first, then the
    // event coin.
    const CliqueRef c = table.sample_vertex(rng);
    if (rng.bernoulli(p.theta)) {
        table.duplicate(c);
        return EventKind::duplication;
    }
    table.delete_vertex(c);
    return EventKind::deletion;
}

EventKind step_v2(CliqueTable& table, std::int64_t n, const ModelParams& p,
                  RandomSource& rng) {
    if (n < 1) throw std::invalid_argument("step_v2 requires n >= 1");
    const std::int64_t vertices = table.total_vertices();
    if (vertices > n)
        throw std::logic_error("vertex count exceeds the step index");
    if (!rng.bernoulli(static_cast<double>(vertices) / static_cast<double>(n)))
        return EventKind::noop;
    return step_v1(table, p, rng);
}

std::pair<double, EventKind> advance_v3(CliqueTable& table, const ModelParams& p,
                                        RandomSource& rng) {
    const double dt =
        rng.exponential(static_cast<double>(table.total_vertices()));
    return {dt, step_v1(table, p, rng)};
}

namespace {

SimSnapshot take_snapshot(const CliqueTable& table, int version, double at,
                          double theta) {
    SimSnapshot snap;
    snap.step_or_time = at;
    snap.n_vertices = table.total_vertices();
    snap.max_degree = table.max_degree();
    snap.degree_histogram = table.degree_histogram();
    snap.s1 = table.s_n_r(1);
    snap.s2 = table.s_n_r(2);
    snap.s3 = table.s_n_r(3);
    const double n_vertices = static_cast<double>(snap.n_vertices);
    switch (version) {
        case 1:
            snap.scaling_estimate = at > 0.0 ? n_vertices / at : n_vertices;
            break;
        case 2:
            snap.scaling_estimate =
                at > 0.0 ? std::pow(at, -theta) * n_vertices : n_vertices;
            break;
        default:
            snap.scaling_estimate = std::exp(-theta * at) * n_vertices;
            break;
    }
    return snap;
}

}  // namespace

std::vector<SimSnapshot> run_simulation(const RunConfig& config, const ModelParams& p) {
    if (config.version < 1 || config.version > 3)
        throw std::invalid_argument("version must be 1, 2 or 3");
    if (config.horizon < 0.0)
        throw std::invalid_argument("horizon must be nonnegative");

    std::vector<double> points = config.snapshot_points;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (!points.empty() && (points.front() < 0.0 || points.back() > config.horizon))
        throw std::invalid_argument("snapshot points must lie within the horizon");
    if (points.empty() || points.back() < config.horizon)
        points.push_back(config.horizon);

    RandomSource rng = RandomSource::for_replica(config.seed, config.replica);
    CliqueTable table;
    std::vector<SimSnapshot> snapshots;
    snapshots.reserve(points.size());

    if (config.version == 3) {
        double now = 0.0;
        std::size_t next = 0;
        while (next < points.size()) {
            const double dt =
                rng.exponential(static_cast<double>(table.total_vertices()));
            // The state is constant on [now, now + dt); emit every snapshot
            // that falls in that window before applying the jump.
            while (next < points.size() && points[next] < now + dt)
                snapshots.push_back(take_snapshot(table, 3, points[next++], p.theta));
            if (next >= points.size()) break;
            now += dt;
            step_v1(table, p, rng);
        }
        return snapshots;
    }

    const auto total_steps = static_cast<std::int64_t>(std::llround(config.horizon));
    std::size_t next = 0;
    while (next < points.size() && points[next] < 0.5)
        snapshots.push_back(take_snapshot(table, config.version, points[next++], p.theta));
    for (std::int64_t n = 1; n <= total_steps; ++n) {
        if (config.version == 1)
            step_v1(table, p, rng);
        else
            step_v2(table, n, p, rng);
        while (next < points.size() &&
               static_cast<std::int64_t>(std::llround(points[next])) == n)
            snapshots.push_back(take_snapshot(table, config.version, points[next++], p.theta));
    }
    return snapshots;
}

std::vector<double> geometric_snapshots(double lo, double hi) {
    if (!(lo > 0.0) || hi < lo)
        throw std::invalid_argument("need 0 < lo <= hi");
    std::vector<double> points;
    for (double x = lo; x <= hi; x *= 2.0) points.push_back(x);
    return points;
}

}  // namespace dupdel
