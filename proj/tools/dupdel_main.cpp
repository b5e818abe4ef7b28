// Command-line front end: theory tables, simulations, brute-force oracles,
// declarative experiments and the selfcheck battery.
//
// Exit codes: 0 success; 2 invalid configuration or usage; 3 a tolerance
// verdict failed (selfcheck / experiment); 4 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dupdel/experiments.hpp"
#include "dupdel/io.hpp"
#include "dupdel/oracle.hpp"
#include "dupdel/params.hpp"
#include "dupdel/selfcheck.hpp"
#include "dupdel/simulator.hpp"
#include "dupdel/theory.hpp"

namespace {

using dupdel::ModelParams;
using dupdel::io::format_double;
using nlohmann::json;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    dupdel::io::atomic_write_text(dupdel::io::resolve_output_path(out_path), text);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// ---- theory tables ----

std::string theory_c_csv(const ModelParams& p, int k_max) {
    const std::vector<double> c = dupdel::theory::compute_c(p, k_max + 1);
    std::ostringstream out;
    out << dupdel::io::kCsvSchemaLine << "\nk,c_k,recursion_residual,asympt_ratio\n";
    for (int k = 0; k <= k_max; ++k) {
        const double predicted =
            k == 0 ? (1.0 - p.theta) / (1.0 + p.theta) * (1.0 + c[1])
                   : (k + 1.0) / (k + 1.0 + p.theta) *
                         (p.theta * c[k - 1] + (1.0 - p.theta) * c[k + 1]);
        out << k << ',' << format_double(c[k]) << ','
            << format_double(std::abs(c[k] - predicted) / c[k]) << ',';
        if (k >= 1) out << format_double(c[k] / dupdel::theory::asympt_c(p, k));
        out << '\n';
    }
    return out.str();
}

std::string theory_q_csv(const ModelParams& p, int k_max) {
    const std::vector<double> q = dupdel::theory::compute_q(p, k_max + 1);
    const std::vector<double> from_c =
        dupdel::theory::compute_q(p, k_max, {}, dupdel::theory::QMethod::from_c);
    std::ostringstream out;
    out << dupdel::io::kCsvSchemaLine << "\nk,q_k,balance_residual,from_c_delta\n";
    for (int k = 0; k <= k_max; ++k) {
        const double predicted =
            k == 0 ? (1.0 - p.theta) * (1.0 + q[1])
                   : (k * p.theta * q[k - 1] + (k + 1.0) * (1.0 - p.theta) * q[k + 1]) /
                         (k + 1.0);
        out << k << ',' << format_double(q[k]) << ','
            << format_double(std::abs(q[k] - predicted) / q[k]) << ','
            << format_double(q[k] - from_c[k]) << '\n';
    }
    return out.str();
}

std::string theory_tail_csv(const ModelParams& p, int k_max) {
    std::ostringstream out;
    out << dupdel::io::kCsvSchemaLine << "\nk,tail_q,asympt_ratio\n";
    for (int k = 1; k <= k_max; ++k)
        out << k << ',' << format_double(dupdel::theory::tail_q(p, k)) << ','
            << format_double(std::exp(dupdel::theory::log_tail_q(p, k) -
                                      dupdel::theory::log_tail_q_asympt(p, k)))
            << '\n';
    return out.str();
}

std::string theory_p0_csv(const ModelParams& p, int r_max) {
    const dupdel::theory::SurvivalTable surv = dupdel::theory::compute_a(p.theta, r_max);
    const bool critical = !p.has_beta();
    std::ostringstream out;
    out << dupdel::io::kCsvSchemaLine << "\nr,a_r,p0,"
        << (critical ? "laguerre_delta" : "binomial_sum_delta") << ",asympt_ratio\n";
    for (int r = 0; r <= r_max; ++r) {
        out << r << ',' << format_double(surv.a[r]) << ',' << format_double(surv.p0[r])
            << ',';
        // The closed binomial sum cancels catastrophically past r = 30; the
        // critical-point Laguerre identity is stable everywhere.
        if (critical)
            out << format_double(
                (surv.a[r] - dupdel::theory::laguerre_eval(r, -1.0)) / surv.a[r]);
        else if (r <= 30)
            out << format_double(
                (surv.a[r] - dupdel::theory::a_binomial_sum(p.theta, r)) / surv.a[r]);
        out << ',';
        if (r >= 1)
            out << format_double(
                std::exp(-surv.log_a[r] - dupdel::theory::log_p0_asympt(p, r)));
        out << '\n';
    }
    return out.str();
}

int run_theory(double theta, const std::string& what, int k_max, int r_max,
               const std::string& out_path) {
    const ModelParams p(theta);
    std::string text;
    if (what == "c")
        text = theory_c_csv(p, k_max);
    else if (what == "q")
        text = theory_q_csv(p, k_max);
    else if (what == "tail")
        text = theory_tail_csv(p, std::max(1, k_max));
    else
        text = theory_p0_csv(p, r_max);
    emit(text, out_path);
    return 0;
}

// ---- simulation snapshots ----

int run_simulate(int version, double theta, const ModelParams& p, double horizon,
                 std::uint64_t seed, int k_cap,
                 const std::vector<double>& snapshot_points,
                 const std::string& out_prefix) {
    dupdel::RunConfig config;
    config.version = version;
    config.horizon = horizon;
    config.seed = seed;
    config.snapshot_points = snapshot_points;
    if (config.snapshot_points.empty() && horizon > 2048.0)
        config.snapshot_points =
            dupdel::geometric_snapshots(1024.0, horizon);
    const std::vector<dupdel::SimSnapshot> snaps = dupdel::run_simulation(config, p);

    auto at_column = [version](double at) {
        return version == 3 ? format_double(at)
                            : std::to_string(static_cast<long long>(std::llround(at)));
    };
    const std::string run_prefix = std::to_string(version) + ',' + format_double(theta) +
                                   ',' + std::to_string(seed) + ',';

    std::ostringstream hist;
    hist << dupdel::io::kCsvSchemaLine
         << "\nversion,theta,seed,step_or_time,N,max_degree,k,count\n";
    std::ostringstream summary;
    summary << dupdel::io::kCsvSchemaLine
            << "\nversion,theta,seed,step_or_time,N,max_degree,scaling_estimate,S1,S2,S3\n";
    for (const dupdel::SimSnapshot& snap : snaps) {
        const std::string row_prefix = run_prefix + at_column(snap.step_or_time) + ',' +
                                       std::to_string(snap.n_vertices) + ',' +
                                       std::to_string(snap.max_degree) + ',';
        std::vector<std::int64_t> dense(
            static_cast<std::size_t>(std::min<std::int64_t>(snap.max_degree, k_cap)) + 1,
            0);
        std::int64_t overflow = 0;
        for (const auto& [degree, count] : snap.degree_histogram) {
            if (degree <= k_cap)
                dense[static_cast<std::size_t>(degree)] = count;
            else
                overflow += count;
        }
        for (std::size_t k = 0; k < dense.size(); ++k)
            hist << row_prefix << k << ',' << dense[k] << '\n';
        hist << row_prefix << "overflow," << overflow << '\n';

        summary << row_prefix << format_double(snap.scaling_estimate) << ','
                << snap.s1 << ',' << snap.s2 << ',' << snap.s3 << '\n';
    }

    const std::filesystem::path prefix =
        dupdel::io::resolve_output_path(std::filesystem::path(out_prefix));
    std::filesystem::path hist_path = prefix;
    hist_path += ".hist.csv";
    std::filesystem::path summary_path = prefix;
    summary_path += ".summary.csv";
    dupdel::io::atomic_write_text(hist_path, hist.str());
    dupdel::io::atomic_write_text(summary_path, summary.str());
    return 0;
}

// ---- oracles ----

int run_oracle(int enumerate_n, int first_passage_r, int stationary_k, int version,
               double theta, std::int64_t mc_replicas, std::uint64_t seed,
               const std::string& out_path) {
    const int modes = (enumerate_n >= 0 ? 1 : 0) + (first_passage_r > 0 ? 1 : 0) +
                      (stationary_k > 0 ? 1 : 0);
    if (modes != 1)
        throw std::invalid_argument(
            "choose exactly one of --enumerate, --first-passage, --stationary");

    json doc;
    doc["schema_version"] = dupdel::io::kJsonSchemaVersion;
    doc["theta"] = theta;
    if (enumerate_n >= 0) {
        const dupdel::oracle::StateDistribution dist =
            dupdel::oracle::enumerate_states(version, theta, enumerate_n);
        doc["kind"] = "enumeration";
        doc["version"] = dist.version;
        doc["n"] = dist.n;
        json states = json::array();
        for (const auto& [multiset, probability] : dist.entries)
            states.push_back({{"multiset", multiset}, {"p", probability}});
        doc["states"] = std::move(states);
        doc["expected_vertices"] = dist.expected_vertices();
    } else if (first_passage_r > 0) {
        const std::vector<double> p_arr =
            dupdel::oracle::first_passage_solve(theta, first_passage_r);
        const dupdel::theory::SurvivalTable surv =
            dupdel::theory::compute_a(theta, first_passage_r);
        doc["kind"] = "first_passage";
        doc["r"] = first_passage_r;
        doc["p"] = p_arr;
        doc["p0"] = p_arr[0];
        doc["inv_a"] = surv.p0[first_passage_r];
        if (mc_replicas > 0) {
            dupdel::RandomSource rng = dupdel::RandomSource::for_replica(seed, 0);
            doc["mc"] = dupdel::oracle::monte_carlo_first_passage(
                theta, first_passage_r, mc_replicas, rng);
            doc["mc_replicas"] = mc_replicas;
            doc["mc_seed"] = seed;
        }
    } else {
        doc["kind"] = "stationary";
        doc["k_trunc"] = stationary_k;
        doc["q"] = dupdel::oracle::stationary_solve(theta, stationary_k);
    }
    emit(doc.dump(2) + "\n", out_path);
    return 0;
}

// ---- experiments ----

int run_experiment_cmd(const std::string& spec_path, const std::string& out_prefix,
                       const std::string& format) {
    const dupdel::experiments::ExperimentSpec spec =
        dupdel::experiments::spec_from_json_text(slurp(spec_path));
    const dupdel::experiments::RunResult result =
        dupdel::experiments::run_experiment(spec);
    if (out_prefix.empty()) {
        std::cout << (format == "csv"
                          ? dupdel::experiments::result_to_csv_text(result)
                          : dupdel::experiments::result_to_json_text(result));
    } else {
        const std::filesystem::path prefix =
            dupdel::io::resolve_output_path(std::filesystem::path(out_prefix));
        std::filesystem::path json_path = prefix;
        json_path += ".json";
        std::filesystem::path csv_path = prefix;
        csv_path += ".csv";
        dupdel::io::atomic_write_text(json_path,
                                      dupdel::experiments::result_to_json_text(result));
        dupdel::io::atomic_write_text(csv_path,
                                      dupdel::experiments::result_to_csv_text(result));
    }
    return result.overall_pass ? 0 : 3;
}

// ---- selfcheck ----

int run_selfcheck(bool fast, int criterion) {
    const std::vector<dupdel::selfcheck::CheckResult> results =
        dupdel::selfcheck::run_battery(fast, criterion);
    if (results.empty())
        throw std::invalid_argument("criterion out of range for this mode");
    for (const auto& r : results)
        std::printf("criterion %2d  %s  %-40s %7.2fs  %s\n", r.criterion,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.detail.c_str());
    return dupdel::selfcheck::all_pass(results) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"duplication-deletion random graph laboratory"};
    app.require_subcommand(1);

    // theory
    auto* theory = app.add_subcommand("theory", "exact/numeric theory tables (CSV)");
    double theta = 0.5;
    std::string what;
    int k_max = 100, r_max = 50;
    std::string out_path, format = "csv";
    theory->add_option("--theta", theta, "duplication probability in (0,1)")->required();
    theory->add_option("--what", what, "table to emit")
        ->required()
        ->check(CLI::IsMember({"c", "q", "tail", "p0"}));
    theory->add_option("--kmax", k_max, "largest degree k (c/q/tail tables)");
    theory->add_option("--rmax", r_max, "largest target degree r (p0 table)");
    theory->add_option("--out", out_path, "output file (default: stdout)");
    theory->add_option("--format", format)->check(CLI::IsMember({"csv"}));

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run one simulation, write snapshot CSVs");
    int version = 1;
    std::uint64_t steps = 0;
    double t_max = 0.0;
    std::uint64_t seed = 0;
    int k_cap = 200;
    std::vector<double> snapshot_points;
    std::string sim_out, sim_format = "csv";
    simulate->add_option("--version", version, "model version")
        ->required()
        ->check(CLI::Range(1, 3));
    simulate->add_option("--theta", theta, "duplication probability in (0,1)")->required();
    auto* steps_opt = simulate->add_option("--steps", steps, "step count (versions 1/2)");
    auto* tmax_opt = simulate->add_option("--tmax", t_max, "end time (version 3)");
    simulate->add_option("--seed", seed, "master seed (run = replica 0)");
    simulate->add_option("--kmax", k_cap, "histogram cap; higher degrees sum into the overflow row");
    simulate->add_option("--snapshot", snapshot_points,
                         "snapshot step/time (repeatable; default: powers of two)");
    simulate->add_option("--out", sim_out, "output path prefix (-> <prefix>.hist.csv, <prefix>.summary.csv)")
        ->required();
    simulate->add_option("--format", sim_format)->check(CLI::IsMember({"csv"}));

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force references (JSON)");
    int enumerate_n = -1, first_passage_r = 0, stationary_k = 0;
    std::int64_t mc_replicas = 0;
    std::string oracle_out, oracle_format = "json";
    oracle_cmd->add_option("--theta", theta, "duplication probability in (0,1)")->required();
    oracle_cmd->add_option("--enumerate", enumerate_n, "exact state law after N steps (N <= 8)");
    oracle_cmd->add_option("--first-passage", first_passage_r,
                           "first-passage probabilities up to degree R");
    oracle_cmd->add_option("--stationary", stationary_k,
                           "truncated stationary solve up to degree K");
    oracle_cmd->add_option("--version", version, "model version for --enumerate")
        ->check(CLI::Range(1, 2));
    oracle_cmd->add_option("--mc", mc_replicas,
                           "also Monte Carlo estimate p0 with this many replicas");
    oracle_cmd->add_option("--seed", seed, "master seed for --mc");
    oracle_cmd->add_option("--out", oracle_out, "output file (default: stdout)");
    oracle_cmd->add_option("--format", oracle_format)->check(CLI::IsMember({"json"}));

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run a declarative experiment spec");
    std::string spec_path, exp_out, exp_format = "json";
    experiment->add_option("--spec", spec_path, "experiment spec JSON file")->required();
    experiment->add_option("--out", exp_out,
                           "output path prefix (-> <prefix>.json, <prefix>.csv)");
    experiment->add_option("--format", exp_format, "stdout format when --out is absent")
        ->check(CLI::IsMember({"json", "csv"}));

    // selfcheck
    auto* selfcheck_cmd = app.add_subcommand("selfcheck", "run the cross-validation battery");
    bool fast = false;
    int criterion = 0;
    selfcheck_cmd->add_flag("--fast", fast, "exact/oracle-backed checks only (1-6)");
    selfcheck_cmd->add_option("--criterion", criterion, "run a single criterion")
        ->check(CLI::Range(1, 10));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (theory->parsed()) return run_theory(theta, what, k_max, r_max, out_path);
        if (simulate->parsed()) {
            const ModelParams p(theta);
            const bool discrete = version != 3;
            if (discrete && (!*steps_opt || *tmax_opt))
                throw std::invalid_argument("versions 1/2 take --steps (not --tmax)");
            if (!discrete && (!*tmax_opt || *steps_opt))
                throw std::invalid_argument("version 3 takes --tmax (not --steps)");
            return run_simulate(version, theta, p,
                                discrete ? static_cast<double>(steps) : t_max, seed,
                                k_cap, snapshot_points, sim_out);
        }
        if (oracle_cmd->parsed())
            return run_oracle(enumerate_n, first_passage_r, stationary_k, version,
                              theta, mc_replicas, seed, oracle_out);
        if (experiment->parsed())
            return run_experiment_cmd(spec_path, exp_out, exp_format);
        if (selfcheck_cmd->parsed()) return run_selfcheck(fast, criterion);
        return 2;  // unreachable: a subcommand is required
    } catch (const dupdel::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const std::overflow_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 4;
    }
}
