#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dupdel/params.hpp"

namespace dupdel::experiments {

enum class ExperimentKind {
    degree_convergence,
    fixed_vertex_marginal,
    max_degree_growth,
    first_passage,
    growth_law,
    tv_decay,
};

ExperimentKind kind_from_name(const std::string& name);  // throws invalid_argument
const char* kind_name(ExperimentKind kind);

// Declarative description of one experiment; read from JSON, echoed into
// every result.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::degree_convergence;
    int version = 1;
    double theta = 0.5;
    double horizon = 0.0;        // steps (versions 1/2) or end time (version 3)
    std::int64_t replicas = 1;
    std::uint64_t master_seed = 1;
    int k_max = 0;               // histogram cutoff; 0 = regime default (30, 100 supercritical)
    std::vector<int> r_grid;     // first_passage degree targets
    std::vector<double> times;   // tv_decay observation times
    std::vector<double> snapshots;  // empty = geometric default schedule
    double tolerance = 0.02;
    double lower_fraction = 0.5;    // max_degree_growth: slack on the lower constant

    void validate() const;  // throws std::invalid_argument
};

ExperimentSpec spec_from_json_text(const std::string& text);
std::string spec_to_json_text(const ExperimentSpec& spec);

// One recorded observation (snapshot value, per-k probability, ratio, ...).
struct ResultRow {
    double at = 0.0;  // snapshot step/time, degree k, or target r, by kind
    std::string metric;
    double value = 0.0;
};

// One pass/fail comparison against a reference value.
struct Verdict {
    std::string metric;
    double observed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct RunResult {
    ExperimentSpec spec;
    std::vector<ResultRow> rows;
    std::vector<Verdict> verdicts;
    bool overall_pass = true;
};

// Runs the experiment described by the spec; deterministic in the spec
// (replica i draws from the documented seed derivation of master_seed and i).
RunResult run_experiment(const ExperimentSpec& spec);

std::string result_to_json_text(const RunResult& result);
// Flat table, one row per observation and per verdict; observation rows
// leave the verdict columns empty, verdict rows leave `at` empty.
std::string result_to_csv_text(const RunResult& result);

}  // namespace dupdel::experiments
