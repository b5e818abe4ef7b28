#include "dupdel/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dupdel/fixed_vertex.hpp"
#include "dupdel/io.hpp"
#include "dupdel/oracle.hpp"
#include "dupdel/simulator.hpp"
#include "dupdel/theory.hpp"

namespace dupdel::experiments {

using nlohmann::json;

ExperimentKind kind_from_name(const std::string& name) {
    if (name == "degree_convergence") return ExperimentKind::degree_convergence;
    if (name == "fixed_vertex_marginal") return ExperimentKind::fixed_vertex_marginal;
    if (name == "max_degree_growth") return ExperimentKind::max_degree_growth;
    if (name == "first_passage") return ExperimentKind::first_passage;
    if (name == "growth_law") return ExperimentKind::growth_law;
    if (name == "tv_decay") return ExperimentKind::tv_decay;
    throw std::invalid_argument("unknown experiment kind: " + name);
}

const char* kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::degree_convergence: return "degree_convergence";
        case ExperimentKind::fixed_vertex_marginal: return "fixed_vertex_marginal";
        case ExperimentKind::max_degree_growth: return "max_degree_growth";
        case ExperimentKind::first_passage: return "first_passage";
        case ExperimentKind::growth_law: return "growth_law";
        default: return "tv_decay";
    }
}

void ExperimentSpec::validate() const {
    ModelParams check(theta);  // validates theta's range
    if (version < 1 || version > 3)
        throw std::invalid_argument("version must be 1, 2 or 3");
    // first_passage runs on the embedded jump chain and needs no horizon.
    if (kind != ExperimentKind::first_passage && !(horizon > 0.0))
        throw std::invalid_argument("horizon must be positive");
    if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
    if (!(lower_fraction > 0.0))
        throw std::invalid_argument("lower_fraction must be positive");
    if (kind == ExperimentKind::first_passage) {
        if (r_grid.empty())
            throw std::invalid_argument("first_passage requires a nonempty r_grid");
        for (int r : r_grid)
            if (r < 1) throw std::invalid_argument("r_grid entries must be >= 1");
        if (!std::is_sorted(r_grid.begin(), r_grid.end()))
            throw std::invalid_argument("r_grid must be ascending");
    }
    if (kind == ExperimentKind::tv_decay) {
        if (times.empty())
            throw std::invalid_argument("tv_decay requires a nonempty times list");
        for (double t : times)
            if (!(t > 0.0) || t > horizon)
                throw std::invalid_argument("times must lie in (0, horizon]");
    }
    if (kind == ExperimentKind::fixed_vertex_marginal ||
        kind == ExperimentKind::tv_decay) {
        if (version != 3)
            throw std::invalid_argument(
                "fixed-vertex experiments run on the continuous-time clock "
                "(version 3)");
    }
    for (double s : snapshots)
        if (!(s > 0.0) || s > horizon)
            throw std::invalid_argument("snapshots must lie in (0, horizon]");
}

ExperimentSpec spec_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid experiment JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("experiment spec must be a JSON object");

    static const std::set<std::string> known = {
        "schema_version", "kind",     "version",   "theta",
        "horizon",        "replicas", "master_seed", "k_max",
        "r_grid",         "times",    "snapshots", "tolerance",
        "lower_fraction"};
    for (const auto& [key, value] : doc.items())
        if (known.find(key) == known.end())
            throw std::invalid_argument("unknown experiment spec field: " + key);
    if (doc.contains("schema_version") && doc["schema_version"].get<int>() != io::kJsonSchemaVersion)
        throw std::invalid_argument("unsupported schema_version");
    if (!doc.contains("kind"))
        throw std::invalid_argument("experiment spec requires a kind");

    ExperimentSpec spec;
    try {
        spec.kind = kind_from_name(doc["kind"].get<std::string>());
        spec.version = doc.value("version", spec.version);
        spec.theta = doc.value("theta", spec.theta);
        spec.horizon = doc.value("horizon", spec.horizon);
        spec.replicas = doc.value("replicas", spec.replicas);
        spec.master_seed = doc.value("master_seed", spec.master_seed);
        spec.k_max = doc.value("k_max", spec.k_max);
        spec.tolerance = doc.value("tolerance", spec.tolerance);
        spec.lower_fraction = doc.value("lower_fraction", spec.lower_fraction);
        if (doc.contains("r_grid")) spec.r_grid = doc["r_grid"].get<std::vector<int>>();
        if (doc.contains("times")) spec.times = doc["times"].get<std::vector<double>>();
        if (doc.contains("snapshots"))
            spec.snapshots = doc["snapshots"].get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid experiment spec value: ") + e.what());
    }
    spec.validate();
    return spec;
}

namespace {

json spec_to_json(const ExperimentSpec& spec) {
    json doc;
    doc["schema_version"] = io::kJsonSchemaVersion;
    doc["kind"] = kind_name(spec.kind);
    doc["version"] = spec.version;
    doc["theta"] = spec.theta;
    doc["horizon"] = spec.horizon;
    doc["replicas"] = spec.replicas;
    doc["master_seed"] = spec.master_seed;
    doc["k_max"] = spec.k_max;
    doc["r_grid"] = spec.r_grid;
    doc["times"] = spec.times;
    doc["snapshots"] = spec.snapshots;
    doc["tolerance"] = spec.tolerance;
    doc["lower_fraction"] = spec.lower_fraction;
    return doc;
}

int histogram_cutoff(const ExperimentSpec& spec, const ModelParams& p) {
    if (spec.k_max > 0) return spec.k_max;
    // Heavy power-law tail in the supercritical regime needs a wider window
    // to keep the truncated mass below tolerance / 10.
    return p.regime == Regime::supercritical ? 100 : 30;
}

std::vector<double> snapshot_schedule(const ExperimentSpec& spec) {
    if (!spec.snapshots.empty()) return spec.snapshots;
    const double lo = std::min(1024.0, spec.horizon);
    return geometric_snapshots(lo, spec.horizon);
}

void add_verdict(RunResult& result, const std::string& metric, double observed,
                 double reference, double tolerance, bool pass) {
    result.verdicts.push_back({metric, observed, reference, tolerance, pass});
    result.overall_pass = result.overall_pass && pass;
}

// L1 distance over k <= k_cut between a count histogram and a probability
// table.
double l1_distance(const std::vector<std::pair<std::int64_t, std::int64_t>>& hist,
                   std::int64_t total, const std::vector<double>& probs, int k_cut) {
    std::vector<double> empirical(k_cut + 1, 0.0);
    for (const auto& [degree, count] : hist)
        if (degree <= k_cut)
            empirical[degree] = static_cast<double>(count) / static_cast<double>(total);
    double l1 = 0.0;
    for (int k = 0; k <= k_cut; ++k) l1 += std::abs(empirical[k] - probs[k]);
    return l1;
}

RunResult run_degree_convergence(const ExperimentSpec& spec) {
    RunResult result;
    result.spec = spec;
    const ModelParams p(spec.theta);
    const int k_cut = histogram_cutoff(spec, p);
    const std::vector<double> c = theory::compute_c(p, k_cut);

    std::int64_t passed = 0;
    for (std::int64_t i = 0; i < spec.replicas; ++i) {
        RunConfig config;
        config.version = spec.version;
        config.horizon = spec.horizon;
        config.seed = spec.master_seed;
        config.replica = static_cast<std::uint64_t>(i);
        config.snapshot_points = snapshot_schedule(spec);
        const std::vector<SimSnapshot> snaps = run_simulation(config, p);

        const std::string suffix = "[replica=" + std::to_string(i) + "]";
        double final_l1 = 0.0;
        for (const SimSnapshot& snap : snaps) {
            final_l1 = l1_distance(snap.degree_histogram, snap.n_vertices, c, k_cut);
            result.rows.push_back({snap.step_or_time, "l1" + suffix, final_l1});
        }
        const bool pass = final_l1 < spec.tolerance;
        passed += pass ? 1 : 0;
        result.verdicts.push_back(
            {"l1_final" + suffix, final_l1, 0.0, spec.tolerance, pass});
    }
    if (spec.replicas == 1) {
        result.overall_pass = result.verdicts.front().pass;
    } else {
        // Documented flakiness budget: the verdict suite must hold for at
        // least 9 of 10 seeds, i.e. a 0.9 pass fraction.
        const double fraction =
            static_cast<double>(passed) / static_cast<double>(spec.replicas);
        add_verdict(result, "pass_fraction", fraction, 0.9, 0.0, fraction >= 0.9);
        result.overall_pass = fraction >= 0.9;
    }
    return result;
}

struct FixedVertexEnsemble {
    // One degree histogram per observation time, plus running-max mean.
    std::vector<std::map<int, std::int64_t>> counts;
    double running_max_mean = 0.0;
};

FixedVertexEnsemble fixed_vertex_ensemble(const ExperimentSpec& spec,
                                          const std::vector<double>& obs_times) {
    const ModelParams p(spec.theta);
    FixedVertexEnsemble ens;
    ens.counts.resize(obs_times.size());
    double max_sum = 0.0;
    for (std::int64_t i = 0; i < spec.replicas; ++i) {
        RandomSource rng =
            RandomSource::for_replica(spec.master_seed, static_cast<std::uint64_t>(i));
        const FixedVertexTrajectory traj =
            simulate_fixed_vertex(p, spec.horizon, rng);
        for (std::size_t j = 0; j < obs_times.size(); ++j)
            ens.counts[j][traj.degree_at(obs_times[j])] += 1;
        max_sum += traj.running_max;
    }
    ens.running_max_mean = max_sum / static_cast<double>(spec.replicas);
    return ens;
}

// Total variation distance between the empirical law (counts) and q,
// bucketing everything above k_cut together, plus a conservative standard
// error: sd(TV) <= 1/2 sum_k sd(empirical_k).
struct TvEstimate {
    double tv = 0.0;
    double stderr_bound = 0.0;
};

TvEstimate tv_against(const std::map<int, std::int64_t>& counts, std::int64_t total,
                      const std::vector<double>& q, int k_cut) {
    std::vector<double> empirical(k_cut + 1, 0.0);
    double over = 0.0;
    for (const auto& [degree, count] : counts) {
        const double freq = static_cast<double>(count) / static_cast<double>(total);
        if (degree <= k_cut)
            empirical[degree] = freq;
        else
            over += freq;
    }
    double q_over = 1.0;
    for (int k = 0; k <= k_cut; ++k) q_over -= q[k];

    TvEstimate est;
    double se_sum = 0.0;
    for (int k = 0; k <= k_cut; ++k) {
        est.tv += std::abs(empirical[k] - q[k]);
        se_sum += std::sqrt(empirical[k] * (1.0 - empirical[k]) /
                            static_cast<double>(total));
    }
    est.tv = 0.5 * (est.tv + std::abs(over - q_over));
    se_sum += std::sqrt(over * (1.0 - over) / static_cast<double>(total));
    est.stderr_bound = 0.5 * se_sum;
    return est;
}

RunResult run_fixed_vertex_marginal(const ExperimentSpec& spec) {
    RunResult result;
    result.spec = spec;
    const ModelParams p(spec.theta);
    const int k_cut = histogram_cutoff(spec, p);
    const std::vector<double> q = theory::compute_q(p, k_cut);

    const FixedVertexEnsemble ens = fixed_vertex_ensemble(spec, {spec.horizon});
    const auto& counts = ens.counts.front();

    double l1 = 0.0;
    std::vector<double> empirical(k_cut + 1, 0.0);
    for (const auto& [degree, count] : counts)
        if (degree <= k_cut)
            empirical[degree] =
                static_cast<double>(count) / static_cast<double>(spec.replicas);
    for (int k = 0; k <= k_cut; ++k) {
        l1 += std::abs(empirical[k] - q[k]);
        result.rows.push_back({static_cast<double>(k), "empirical_q", empirical[k]});
        result.rows.push_back({static_cast<double>(k), "stationary_q", q[k]});
    }
    result.rows.push_back({spec.horizon, "running_max_mean", ens.running_max_mean});

    add_verdict(result, "l1_final", l1, 0.0, spec.tolerance, l1 < spec.tolerance);
    const double se0 =
        std::sqrt(q[0] * (1.0 - q[0]) / static_cast<double>(spec.replicas));
    add_verdict(result, "q0_agreement", empirical[0], q[0], 3.0 * se0,
                std::abs(empirical[0] - q[0]) <= 3.0 * se0);
    return result;
}

RunResult run_tv_decay(const ExperimentSpec& spec) {
    RunResult result;
    result.spec = spec;
    const ModelParams p(spec.theta);
    const int k_cut = histogram_cutoff(spec, p);
    const std::vector<double> q = theory::compute_q(p, k_cut);

    std::vector<double> obs_times = spec.times;
    std::sort(obs_times.begin(), obs_times.end());
    const FixedVertexEnsemble ens = fixed_vertex_ensemble(spec, obs_times);

    std::vector<double> tvs;
    for (std::size_t j = 0; j < obs_times.size(); ++j) {
        const TvEstimate est =
            tv_against(ens.counts[j], spec.replicas, q, k_cut);
        tvs.push_back(est.tv);
        result.rows.push_back({obs_times[j], "tv", est.tv});
        result.rows.push_back({obs_times[j], "tv_stderr", est.stderr_bound});
        // Coupling at the first deletion of the tracked vertex gives the
        // mixing bound e^{-(1-theta) t}; three conservative standard errors
        // absorb the Monte Carlo noise.
        const double bound = std::exp(-(1.0 - spec.theta) * obs_times[j]) +
                             3.0 * est.stderr_bound;
        const std::string label = "tv[t=" + io::format_double(obs_times[j]) + "]";
        add_verdict(result, label, est.tv, bound, 0.0, est.tv <= bound);
    }
    if (tvs.size() >= 2) {
        const bool decreasing = std::is_sorted(tvs.rbegin(), tvs.rend());
        add_verdict(result, "tv_decreasing", decreasing ? 1.0 : 0.0, 1.0, 0.0,
                    decreasing);
    }
    return result;
}

RunResult run_max_degree_growth(const ExperimentSpec& spec) {
    RunResult result;
    result.spec = spec;
    const ModelParams p(spec.theta);
    const theory::MaxDegreeConstants constants = theory::maxdeg_bound_constants(p);

    std::vector<double> points = spec.snapshots;
    if (points.empty()) {
        points = geometric_snapshots(std::min(16384.0, spec.horizon), spec.horizon);
    }

    // The bracket only holds asymptotically; early snapshots are recorded but
    // not judged.
    const double late_threshold = std::min(1e4, spec.horizon);
    double worst_late_ratio = 0.0;
    std::vector<double> final_ratios;
    for (std::int64_t i = 0; i < spec.replicas; ++i) {
        RunConfig config;
        config.version = spec.version;
        config.horizon = spec.horizon;
        config.seed = spec.master_seed;
        config.replica = static_cast<std::uint64_t>(i);
        config.snapshot_points = points;
        const std::vector<SimSnapshot> snaps = run_simulation(config, p);

        const std::string suffix = "[replica=" + std::to_string(i) + "]";
        double final_ratio = 0.0;
        for (const SimSnapshot& snap : snaps) {
            const double log_n = std::log(static_cast<double>(snap.n_vertices));
            const double max_degree = static_cast<double>(snap.max_degree);
            double ratio = 0.0;
            switch (constants.scale) {
                case theory::MaxDegreeConstants::Scale::log_n:
                    ratio = max_degree / log_n;
                    break;
                case theory::MaxDegreeConstants::Scale::log_sq_n:
                    ratio = max_degree / (log_n * log_n);
                    break;
                default:
                    ratio = max_degree >= 2.0 ? std::log(max_degree) / log_n : 0.0;
                    break;
            }
            result.rows.push_back({snap.step_or_time, "ratio" + suffix, ratio});
            if (snap.step_or_time >= late_threshold)
                worst_late_ratio = std::max(worst_late_ratio, ratio);
            final_ratio = ratio;
        }
        final_ratios.push_back(final_ratio);
    }
    std::sort(final_ratios.begin(), final_ratios.end());
    const double median = final_ratios[final_ratios.size() / 2];

    add_verdict(result, "upper_bracket", worst_late_ratio, constants.upper, 0.0,
                worst_late_ratio < constants.upper);
    add_verdict(result, "lower_bracket", median,
                spec.lower_fraction * constants.lower, 0.0,
                median > spec.lower_fraction * constants.lower);
    return result;
}

RunResult run_first_passage(const ExperimentSpec& spec) {
    RunResult result;
    result.spec = spec;
    const ModelParams p(spec.theta);
    const int r_max = spec.r_grid.back();
    const theory::SurvivalTable survival = theory::compute_a(spec.theta, r_max);

    double first_ratio_gap = -1.0, last_ratio_gap = -1.0;
    for (std::size_t j = 0; j < spec.r_grid.size(); ++j) {
        const int r = spec.r_grid[j];
        const double exact = oracle::first_passage_solve(spec.theta, r)[0];
        const double inv_a = std::exp(-survival.log_a[r]);
        const double asympt = theory::p0_asympt(p, r);
        RandomSource rng =
            RandomSource::for_replica(spec.master_seed, static_cast<std::uint64_t>(j));
        const double mc = oracle::monte_carlo_first_passage(
            spec.theta, r, spec.replicas, rng);

        const double at = static_cast<double>(r);
        result.rows.push_back({at, "p0_solve", exact});
        result.rows.push_back({at, "p0_inv_a", inv_a});
        result.rows.push_back({at, "p0_asympt", asympt});
        result.rows.push_back({at, "p0_mc", mc});

        const std::string suffix = "[r=" + std::to_string(r) + "]";
        add_verdict(result, "solve_vs_inv_a" + suffix, exact, inv_a, 1e-10,
                    std::abs(exact - inv_a) < 1e-10);
        const double se =
            std::sqrt(exact * (1.0 - exact) / static_cast<double>(spec.replicas));
        add_verdict(result, "mc_agreement" + suffix, mc, exact, 3.0 * se,
                    std::abs(mc - exact) <= 3.0 * se);

        const double gap = std::abs(exact / asympt - 1.0);
        if (j == 0) first_ratio_gap = gap;
        last_ratio_gap = gap;
        result.rows.push_back({at, "asympt_ratio", exact / asympt});
    }
    if (spec.r_grid.size() >= 2)
        add_verdict(result, "asympt_trend", last_ratio_gap, first_ratio_gap, 0.0,
                    last_ratio_gap < first_ratio_gap);
    return result;
}

RunResult run_growth_law(const ExperimentSpec& spec) {
    RunResult result;
    result.spec = spec;
    const ModelParams p(spec.theta);

    std::vector<double> finals;
    std::vector<double> drifts;
    for (std::int64_t i = 0; i < spec.replicas; ++i) {
        RunConfig config;
        config.version = spec.version;
        config.horizon = spec.horizon;
        config.seed = spec.master_seed;
        config.replica = static_cast<std::uint64_t>(i);
        config.snapshot_points = snapshot_schedule(spec);
        const std::vector<SimSnapshot> snaps = run_simulation(config, p);

        const std::string suffix = "[replica=" + std::to_string(i) + "]";
        for (const SimSnapshot& snap : snaps) {
            result.rows.push_back({snap.step_or_time, "n_vertices" + suffix,
                                   static_cast<double>(snap.n_vertices)});
            result.rows.push_back(
                {snap.step_or_time, "scaling_estimate" + suffix, snap.scaling_estimate});
        }
        finals.push_back(static_cast<double>(snaps.back().n_vertices));

        // Drift of the per-run scaling estimate over the last two decades of
        // the schedule (the limit variable stabilizes along a run).
        const double mid_point = spec.horizon / 100.0;
        double mid_estimate = 0.0;
        for (const SimSnapshot& snap : snaps)
            if (mid_estimate == 0.0 && snap.step_or_time >= mid_point)
                mid_estimate = snap.scaling_estimate;
        if (mid_estimate > 0.0)
            drifts.push_back(
                std::abs(snaps.back().scaling_estimate / mid_estimate - 1.0));
    }

    const double replicas = static_cast<double>(spec.replicas);
    double mean = 0.0;
    for (double f : finals) mean += f;
    mean /= replicas;

    if (spec.version == 1) {
        // N_n / n concentrates at theta (duplication count is Binomial(n, theta)).
        const double observed = mean / spec.horizon;
        add_verdict(result, "n_over_n", observed, spec.theta, spec.tolerance,
                    std::abs(observed - spec.theta) < spec.tolerance);
        return result;
    }

    const double reference = theory::expected_size(spec.version, p, spec.horizon);
    double variance = 0.0;
    for (double f : finals) variance += (f - mean) * (f - mean);
    variance = spec.replicas > 1 ? variance / (replicas - 1.0) : 0.0;
    const double stderr_mean = std::sqrt(variance / replicas);
    add_verdict(result, "mean_n", mean, reference, 3.0 * stderr_mean,
                std::abs(mean - reference) <= 3.0 * stderr_mean);

    if (!drifts.empty()) {
        std::sort(drifts.begin(), drifts.end());
        const double median_drift = drifts[drifts.size() / 2];
        add_verdict(result, "scaling_drift_median", median_drift, 0.0, 0.10,
                    median_drift < 0.10);
    }

    if (spec.version == 3) {
        // N(t) is Geometric(e^{-theta t}): success probability per bucket test
        // with four standard errors, buckets merged once the expected count
        // drops below 10.
        const double success = std::exp(-spec.theta * spec.horizon);
        std::map<std::int64_t, std::int64_t> counts;
        for (double f : finals) counts[static_cast<std::int64_t>(f)] += 1;
        double worst_z = 0.0;
        double tail_prob = 1.0;
        std::int64_t covered = 0;
        for (std::int64_t k = 1;; ++k) {
            const double pk = success * std::pow(1.0 - success, static_cast<double>(k - 1));
            if (replicas * pk < 10.0) break;
            const auto it = counts.find(k);
            const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
            const double z = (observed - replicas * pk) /
                             std::sqrt(replicas * pk * (1.0 - pk));
            worst_z = std::max(worst_z, std::abs(z));
            result.rows.push_back({static_cast<double>(k), "geometric_z", z});
            tail_prob -= pk;
            covered += it == counts.end() ? 0 : it->second;
        }
        const double tail_observed = replicas - static_cast<double>(covered);
        if (tail_prob > 0.0 && replicas * tail_prob >= 10.0) {
            const double z = (tail_observed - replicas * tail_prob) /
                             std::sqrt(replicas * tail_prob * (1.0 - tail_prob));
            worst_z = std::max(worst_z, std::abs(z));
        }
        add_verdict(result, "geometric_max_z", worst_z, 0.0, 4.0, worst_z <= 4.0);
    }
    return result;
}

}  // namespace

RunResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case ExperimentKind::degree_convergence: return run_degree_convergence(spec);
        case ExperimentKind::fixed_vertex_marginal: return run_fixed_vertex_marginal(spec);
        case ExperimentKind::max_degree_growth: return run_max_degree_growth(spec);
        case ExperimentKind::first_passage: return run_first_passage(spec);
        case ExperimentKind::growth_law: return run_growth_law(spec);
        default: return run_tv_decay(spec);
    }
}

std::string spec_to_json_text(const ExperimentSpec& spec) {
    return spec_to_json(spec).dump(2) + "\n";
}

std::string result_to_json_text(const RunResult& result) {
    json doc;
    doc["schema_version"] = io::kJsonSchemaVersion;
    doc["spec"] = spec_to_json(result.spec);
    json rows = json::array();
    for (const ResultRow& row : result.rows)
        rows.push_back({{"at", row.at}, {"metric", row.metric}, {"value", row.value}});
    doc["rows"] = std::move(rows);
    json verdicts = json::array();
    for (const Verdict& v : result.verdicts)
        verdicts.push_back({{"metric", v.metric},
                            {"observed", v.observed},
                            {"reference", v.reference},
                            {"tolerance", v.tolerance},
                            {"pass", v.pass}});
    doc["verdicts"] = std::move(verdicts);
    doc["overall_pass"] = result.overall_pass;
    return doc.dump(2) + "\n";
}

std::string result_to_csv_text(const RunResult& result) {
    std::ostringstream out;
    out << io::kCsvSchemaLine << "\n";
    out << "at,metric,value,reference,tolerance,pass\n";
    for (const ResultRow& row : result.rows)
        out << io::format_double(row.at) << ',' << row.metric << ','
            << io::format_double(row.value) << ",,,\n";
    for (const Verdict& v : result.verdicts)
        out << ',' << v.metric << ',' << io::format_double(v.observed) << ','
            << io::format_double(v.reference) << ',' << io::format_double(v.tolerance)
            << ',' << (v.pass ? 1 : 0) << "\n";
    return out.str();
}

}  // namespace dupdel::experiments
