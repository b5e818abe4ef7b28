#include "dupdel/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "dupdel/clique_table.hpp"
#include "dupdel/fixed_vertex.hpp"
#include "dupdel/oracle.hpp"
#include "dupdel/params.hpp"
#include "dupdel/rng.hpp"
#include "dupdel/simulator.hpp"
#include "dupdel/theory.hpp"

namespace dupdel::selfcheck {

namespace {

constexpr double kThetas[3] = {0.3, 0.5, 0.7};

// Documented seeds: statistical checks draw replica streams from these
// masters; single-run sweeps use master seeds 1..10 directly.
constexpr std::uint64_t kEnsembleVsExactSeed = 20260814;
constexpr std::uint64_t kStationaritySeed = 88001;
constexpr int kSweepSeeds = 10;

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(3);
    out << x;
    return out.str();
}

struct Worst {
    double value = 0.0;
    void update(double x) { value = std::max(value, x); }
};

// --- criterion 1: the degree-proportion sequence is a distribution ---
CheckResult check_normalization() {
    CheckResult result{1, "degree proportions sum to 1", true, "", 0.0};
    const double k_cut[3] = {200, 5000, 10000};
    const double tol[3] = {1e-8, 1e-8, 1e-2};
    Worst worst;
    for (int i = 0; i < 3; ++i) {
        const ModelParams p(kThetas[i]);
        double sum = 0.0, comp = 0.0;
        for (long long k = 0; k <= static_cast<long long>(k_cut[i]); ++k) {
            const double y = theory::c_at(p, k) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        const double gap = std::abs(sum - 1.0);
        worst.update(gap / tol[i]);
        if (gap >= tol[i]) result.pass = false;
    }
    result.detail = "worst |sum-1| at " + fmt(worst.value) + "x its tolerance";
    return result;
}

// --- criterion 2: recursion residuals on c, q and a ---
CheckResult check_residuals() {
    CheckResult result{2, "three-term recursion residuals", true, "", 0.0};
    Worst worst;
    for (double theta : kThetas) {
        const ModelParams p(theta);
        const std::vector<double> c = theory::compute_c(p, 101);
        const std::vector<double> q = theory::compute_q(p, 101);
        const theory::SurvivalTable surv = theory::compute_a(theta, 101);

        worst.update(std::abs(c[0] - (1.0 - theta) / (1.0 + theta) * (1.0 + c[1])) / c[0]);
        for (int k = 1; k <= 100; ++k) {
            const double pred = (k + 1.0) / (k + 1.0 + theta) *
                                (theta * c[k - 1] + (1.0 - theta) * c[k + 1]);
            worst.update(std::abs(c[k] - pred) / c[k]);
        }
        worst.update(std::abs(q[0] - (1.0 - theta) * (1.0 + q[1])) / q[0]);
        for (int k = 1; k <= 100; ++k) {
            const double pred = (k * theta * q[k - 1] + (k + 1.0) * (1.0 - theta) * q[k + 1]) /
                                (k + 1.0);
            worst.update(std::abs(q[k] - pred) / q[k]);
        }
        for (int i = 1; i <= 100; ++i) {
            const double resid = theta * surv.a[i + 1] - surv.a[i] +
                                 (static_cast<double>(i) / (i + 1.0)) * (1.0 - theta) *
                                     surv.a[i - 1];
            worst.update(std::abs(resid) / surv.a[i]);
        }
    }
    result.pass = worst.value < 1e-8;
    result.detail = "worst relative residual " + fmt(worst.value) + " (tol 1e-8)";
    return result;
}

// --- criterion 3: cross-method identities ---
CheckResult check_cross_methods() {
    CheckResult result{3, "cross-method identities", true, "", 0.0};
    Worst worst_q, worst_bin, worst_lag, worst_p0;
    for (double theta : kThetas) {
        const ModelParams p(theta);
        const std::vector<double> qi = theory::compute_q(p, 100);
        const std::vector<double> qc =
            theory::compute_q(p, 100, {}, theory::QMethod::from_c);
        for (int k = 0; k <= 100; ++k)
            worst_q.update(std::abs(qi[k] - qc[k]) / (1.0 + std::abs(qi[k])));

        const theory::SurvivalTable surv = theory::compute_a(theta, 100);
        if (p.has_beta()) {
            for (int r = 0; r <= 30; ++r)
                worst_bin.update(std::abs(surv.a[r] - theory::a_binomial_sum(theta, r)) /
                                 surv.a[r]);
        } else {
            for (int r = 0; r <= 100; ++r)
                worst_lag.update(std::abs(surv.a[r] - theory::laguerre_eval(r, -1.0)) /
                                 surv.a[r]);
        }
        for (int r = 1; r <= 50; ++r) {
            const double solved = oracle::first_passage_solve(theta, r)[0];
            worst_p0.update(std::abs(solved - surv.p0[r]));
        }
    }
    result.pass = worst_q.value < 1e-8 && worst_bin.value < 1e-9 &&
                  worst_lag.value <= 1e-10 && worst_p0.value < 1e-10;
    result.detail = "q gap " + fmt(worst_q.value) + ", a-vs-sum " + fmt(worst_bin.value) +
                    ", a-vs-laguerre " + fmt(worst_lag.value) + ", p0-vs-solve " +
                    fmt(worst_p0.value);
    return result;
}

// --- criterion 4: exact enumeration agrees with the moment recursion ---
CheckResult check_enumeration() {
    CheckResult result{4, "enumeration oracle agreement", true, "", 0.0};
    Worst worst;
    for (double theta : kThetas) {
        const auto es = theory::es_n_r_exact(theta, 6, 3);
        for (int n = 1; n <= 6; ++n) {
            const oracle::StateDistribution v2 = oracle::enumerate_states(2, theta, n);
            for (int r = 0; r <= 3; ++r)
                worst.update(std::abs(v2.expected_s_r(r) - es[n][r]));
            const oracle::StateDistribution v1 = oracle::enumerate_states(1, theta, n);
            worst.update(std::abs(v1.expected_vertices() - (1.0 + theta * n)));
            worst.update(std::abs(v1.total_probability() - 1.0));
            worst.update(std::abs(v2.total_probability() - 1.0));
        }
    }
    result.pass = worst.value <= 1e-12;
    result.detail = "worst gap " + fmt(worst.value) + " (tol 1e-12)";
    return result;
}

// --- criterion 5: moment bounds dominate, growth exponent matches ---
CheckResult check_moment_bounds() {
    CheckResult result{5, "moment bounds and growth exponents", true, "", 0.0};
    Worst worst_excess;
    for (double theta : {0.3, 0.5}) {
        const ModelParams p(theta);
        const auto es = theory::es_n_r_exact(theta, 10000, 5);
        for (int n = 1; n <= 10000; ++n)
            for (int r = 0; r <= 5; ++r) {
                const theory::BoundForm bound = theory::es_n_r_bound(p, n, r);
                worst_excess.update(es[n][r] / bound.value);
            }
    }
    if (worst_excess.value > 1.0) result.pass = false;

    // Supercritical growth exponent of E S_n(r), accelerated over the three
    // geometric subintervals of [1e3, 1e4].
    const ModelParams p7(0.7);
    const auto es7 = theory::es_n_r_exact(0.7, 10000, 3);
    const int pts[4] = {1000, 2154, 4642, 10000};
    Worst worst_fit;
    for (int r = 1; r <= 3; ++r) {
        double slopes[3];
        for (int j = 0; j < 3; ++j)
            slopes[j] = (std::log(es7[pts[j + 1]][r]) - std::log(es7[pts[j]][r])) /
                        (std::log(static_cast<double>(pts[j + 1])) -
                         std::log(static_cast<double>(pts[j])));
        const double d1 = slopes[1] - slopes[0];
        const double d2 = slopes[2] - slopes[1];
        const double accelerated = d2 != d1 ? slopes[2] - d2 * d2 / (d2 - d1) : slopes[2];
        const double target = theory::es_n_r_bound(p7, 10000, r).exponent;
        worst_fit.update(std::abs(accelerated - target));
    }
    if (worst_fit.value >= 0.05) result.pass = false;
    result.detail = "max E S/bound " + fmt(worst_excess.value) + " (<=1), exponent gap " +
                    fmt(worst_fit.value) + " (tol 0.05)";
    return result;
}

// Canonical clique-size multiset of a table, sorted descending.
std::vector<int> canonical_state(const CliqueTable& table) {
    std::vector<int> state;
    const auto& counts = table.count_of_size();
    for (std::size_t s = counts.size(); s-- > 1;)
        for (std::int64_t i = 0; i < counts[s]; ++i)
            state.push_back(static_cast<int>(s));
    return state;
}

// --- criterion 6: simulator frequencies match the exact 4-step law ---
CheckResult check_simulator_vs_exact() {
    CheckResult result{6, "simulator matches exact small-step law", true, "", 0.0};
    constexpr std::int64_t kRuns = 100000;
    constexpr int kSteps = 4;
    Worst worst;  // in units of the 4-standard-error allowance
    for (int t = 0; t < 3; ++t) {
        const ModelParams p(kThetas[t]);
        const oracle::StateDistribution exact =
            oracle::enumerate_states(1, kThetas[t], kSteps);

        std::map<std::vector<int>, std::int64_t> counts;
        const std::uint64_t master = kEnsembleVsExactSeed + 1000003ULL * t;
        for (std::int64_t i = 0; i < kRuns; ++i) {
            RandomSource rng =
                RandomSource::for_replica(master, static_cast<std::uint64_t>(i));
            CliqueTable table;
            for (int s = 0; s < kSteps; ++s) step_v1(table, p, rng);
            counts[canonical_state(table)] += 1;
        }

        std::int64_t matched = 0;
        for (const auto& [state, prob] : exact.entries) {
            const auto it = counts.find(state);
            const std::int64_t count = it == counts.end() ? 0 : it->second;
            matched += count;
            const double freq = static_cast<double>(count) / kRuns;
            const double allowance =
                4.0 * std::sqrt(prob * (1.0 - prob) / static_cast<double>(kRuns));
            worst.update(std::abs(freq - prob) / allowance);
        }
        if (matched != kRuns) {
            result.pass = false;  // a state outside the exact support appeared
            result.detail = "simulator reached a state missing from the exact law";
            return result;
        }
    }
    result.pass = worst.value <= 1.0;
    result.detail = "worst state gap at " + fmt(worst.value) + "x four standard errors";
    return result;
}

// --- criterion 7: long-run degree histogram approaches c ---
CheckResult check_degree_convergence() {
    CheckResult result{7, "degree distribution convergence", true, "", 0.0};
    int worst_fails = 0;
    std::string detail;
    for (double theta : kThetas) {
        const ModelParams p(theta);
        const int k_cut = p.regime == Regime::supercritical ? 100 : 30;
        const std::vector<double> c = theory::compute_c(p, k_cut);
        int fails = 0;
        Worst worst;
        for (int seed = 1; seed <= kSweepSeeds; ++seed) {
            RunConfig config;
            config.version = 1;
            config.horizon = 1e6;
            config.seed = static_cast<std::uint64_t>(seed);
            const SimSnapshot snap = run_simulation(config, p).back();
            double l1 = 0.0;
            std::vector<double> empirical(k_cut + 1, 0.0);
            for (const auto& [degree, count] : snap.degree_histogram)
                if (degree <= k_cut)
                    empirical[degree] = static_cast<double>(count) /
                                        static_cast<double>(snap.n_vertices);
            for (int k = 0; k <= k_cut; ++k) l1 += std::abs(empirical[k] - c[k]);
            worst.update(l1);
            if (!(l1 < 0.02)) ++fails;
        }
        worst_fails = std::max(worst_fails, fails);
        if (!detail.empty()) detail += "; ";
        detail += "theta=" + fmt(theta) + " (k<=" + std::to_string(k_cut) +
                  "): worst L1 " + fmt(worst.value) + ", fails " +
                  std::to_string(fails) + "/10";
    }
    result.pass = worst_fails <= 1;
    result.detail = detail + " (tol 0.02, 1 failing seed allowed per theta)";
    return result;
}

// --- criterion 8: fixed-vertex marginal is stationary, mixing decays ---
CheckResult check_fixed_vertex_stationarity() {
    CheckResult result{8, "fixed-vertex stationarity and mixing", true, "", 0.0};
    constexpr std::int64_t kRuns = 100000;
    constexpr int kCut = 30;
    const double obs_times[3] = {2.0, 4.0, 8.0};
    const ModelParams p(0.5);
    const std::vector<double> q = theory::compute_q(p, kCut);

    std::map<int, std::int64_t> final_counts;
    std::map<int, std::int64_t> time_counts[3];
    for (std::int64_t i = 0; i < kRuns; ++i) {
        RandomSource rng =
            RandomSource::for_replica(kStationaritySeed, static_cast<std::uint64_t>(i));
        const FixedVertexTrajectory traj = simulate_fixed_vertex(p, 50.0, rng);
        final_counts[traj.degree_at(50.0)] += 1;
        for (int j = 0; j < 3; ++j) time_counts[j][traj.degree_at(obs_times[j])] += 1;
    }

    double l1 = 0.0;
    for (int k = 0; k <= kCut; ++k) {
        const auto it = final_counts.find(k);
        const double freq =
            it == final_counts.end() ? 0.0 : static_cast<double>(it->second) / kRuns;
        l1 += std::abs(freq - q[k]);
    }
    if (!(l1 < 0.02)) result.pass = false;

    // Mixing: total variation against q bounded by the coupling rate
    // e^{-(1-theta) t} plus three conservative standard errors.
    double worst_tv_margin = 0.0;
    for (int j = 0; j < 3; ++j) {
        double tv = 0.0, se = 0.0, over = 1.0, q_over = 1.0;
        for (int k = 0; k <= kCut; ++k) {
            const auto it = time_counts[j].find(k);
            const double freq =
                it == time_counts[j].end() ? 0.0 : static_cast<double>(it->second) / kRuns;
            tv += std::abs(freq - q[k]);
            se += std::sqrt(freq * (1.0 - freq) / static_cast<double>(kRuns));
            over -= freq;
            q_over -= q[k];
        }
        tv = 0.5 * (tv + std::abs(over - q_over));
        se = 0.5 * (se + std::sqrt(std::max(over, 0.0) * (1.0 - over) /
                                   static_cast<double>(kRuns)));
        const double bound = std::exp(-(1.0 - p.theta) * obs_times[j]) + 3.0 * se;
        worst_tv_margin = std::max(worst_tv_margin, tv / bound);
        if (!(tv <= bound)) result.pass = false;
    }
    result.detail = "L1 at t=50 " + fmt(l1) + " (tol 0.02), worst tv at " +
                    fmt(worst_tv_margin) + "x its bound";
    return result;
}

// --- criterion 9: asymptotic formulas converge in ratio ---
CheckResult check_asymptotic_trends() {
    CheckResult result{9, "asymptotic ratio trends", true, "", 0.0};
    Worst worst;
    for (double theta : kThetas) {
        const ModelParams p(theta);
        const theory::SurvivalTable surv = theory::compute_a(theta, 1000);
        const struct {
            double near, far;
        } gaps[3] = {
            {std::exp(theory::log_c_at(p, 100) - theory::log_asympt_c(p, 100)) - 1.0,
             std::exp(theory::log_c_at(p, 1000) - theory::log_asympt_c(p, 1000)) - 1.0},
            {std::exp(theory::log_tail_q(p, 100) - theory::log_tail_q_asympt(p, 100)) - 1.0,
             std::exp(theory::log_tail_q(p, 1000) - theory::log_tail_q_asympt(p, 1000)) -
                 1.0},
            {std::exp(-surv.log_a[100] - theory::log_p0_asympt(p, 100)) - 1.0,
             std::exp(-surv.log_a[1000] - theory::log_p0_asympt(p, 1000)) - 1.0},
        };
        for (const auto& gap : gaps) {
            if (!(std::abs(gap.far) < std::abs(gap.near))) result.pass = false;
            if (!(std::abs(gap.far) < 0.2)) result.pass = false;
            worst.update(std::abs(gap.far));
        }
    }
    result.detail = "worst |ratio-1| at the far point " + fmt(worst.value) + " (tol 0.2)";
    return result;
}

// --- criterion 10: maximal degree stays inside the regime brackets ---
CheckResult check_max_degree_brackets() {
    CheckResult result{10, "maximal degree brackets", true, "", 0.0};
    std::ostringstream detail;
    for (double theta : kThetas) {
        const ModelParams p(theta);
        const theory::MaxDegreeConstants constants = theory::maxdeg_bound_constants(p);
        double worst_ratio = 0.0;
        std::vector<double> finals;
        for (int seed = 1; seed <= kSweepSeeds; ++seed) {
            RunConfig config;
            config.version = 1;
            config.horizon = 1e6;
            config.seed = static_cast<std::uint64_t>(seed);
            config.snapshot_points = geometric_snapshots(16384.0, 1e6);
            const std::vector<SimSnapshot> snaps = run_simulation(config, p);
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
                worst_ratio = std::max(worst_ratio, ratio);
                final_ratio = ratio;
            }
            finals.push_back(final_ratio);
        }
        std::sort(finals.begin(), finals.end());
        const double median = finals[finals.size() / 2];
        const bool upper_ok = worst_ratio < constants.upper;
        const bool lower_ok = median > 0.5 * constants.lower;
        if (!upper_ok || !lower_ok) result.pass = false;
        detail << regime_name(p.regime) << ": max " << fmt(worst_ratio)
               << (upper_ok ? " < " : " !< ") << fmt(constants.upper) << ", final median "
               << fmt(median) << (lower_ok ? " > " : " !> ") << fmt(0.5 * constants.lower)
               << "; ";
    }
    result.detail = detail.str();
    return result;
}

}  // namespace

std::vector<CheckResult> run_battery(bool fast_only, int criterion) {
    using Check = CheckResult (*)();
    static const Check checks[10] = {
        check_normalization,     check_residuals,
        check_cross_methods,     check_enumeration,
        check_moment_bounds,     check_simulator_vs_exact,
        check_degree_convergence, check_fixed_vertex_stationarity,
        check_asymptotic_trends, check_max_degree_brackets,
    };
    const int last = fast_only ? 6 : 10;
    std::vector<CheckResult> results;
    for (int i = 1; i <= last; ++i) {
        if (criterion != 0 && criterion != i) continue;
        const auto start = std::chrono::steady_clock::now();
        CheckResult r = checks[i - 1]();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
        results.push_back(std::move(r));
    }
    return results;
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

}  // namespace dupdel::selfcheck
