#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dupdel/experiments.hpp"
#include "dupdel/fixed_vertex.hpp"
#include "dupdel/oracle.hpp"
#include "dupdel/params.hpp"
#include "dupdel/rng.hpp"
#include "dupdel/simulator.hpp"
#include "dupdel/theory.hpp"

namespace py = pybind11;

namespace {

py::dict snapshot_to_dict(const dupdel::SimSnapshot& snap) {
    py::dict d;
    d["step_or_time"] = snap.step_or_time;
    d["n_vertices"] = snap.n_vertices;
    d["max_degree"] = snap.max_degree;
    py::dict hist;
    for (const auto& [degree, count] : snap.degree_histogram)
        hist[py::int_(degree)] = count;
    d["degree_histogram"] = std::move(hist);
    d["s1"] = snap.s1;
    d["s2"] = snap.s2;
    d["s3"] = snap.s3;
    d["scaling_estimate"] = snap.scaling_estimate;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "duplication-deletion random graph laboratory (C++ core)";

    py::register_exception<dupdel::NumericError>(m, "NumericError");

    py::class_<dupdel::ModelParams>(m, "ModelParams")
        .def(py::init<double>(), py::arg("theta"))
        .def_readonly("theta", &dupdel::ModelParams::theta)
        .def_readonly("gamma", &dupdel::ModelParams::gamma)
        .def("beta", &dupdel::ModelParams::beta)
        .def_property_readonly(
            "regime",
            [](const dupdel::ModelParams& p) { return dupdel::regime_name(p.regime); })
        .def("__repr__", [](const dupdel::ModelParams& p) {
            return "ModelParams(theta=" + std::to_string(p.theta) + ")";
        });

    // Theory evaluators.
    m.def(
        "compute_c",
        [](double theta, int k_max) {
            return dupdel::theory::compute_c(dupdel::ModelParams(theta), k_max);
        },
        py::arg("theta"), py::arg("k_max"),
        "Limit proportions c_0..c_k of vertices of each degree.");
    m.def(
        "compute_q",
        [](double theta, int k_max, bool from_c) {
            return dupdel::theory::compute_q(
                dupdel::ModelParams(theta), k_max, {},
                from_c ? dupdel::theory::QMethod::from_c
                       : dupdel::theory::QMethod::integral);
        },
        py::arg("theta"), py::arg("k_max"), py::arg("from_c") = false,
        "Stationary law q_0..q_k of a fixed vertex's degree.");
    m.def(
        "tail_q",
        [](double theta, long long k) {
            return dupdel::theory::tail_q(dupdel::ModelParams(theta), k);
        },
        py::arg("theta"), py::arg("k"), "Tail sum of q from k upward.");
    m.def(
        "asympt_c",
        [](double theta, long long k) {
            return dupdel::theory::asympt_c(dupdel::ModelParams(theta), k);
        },
        py::arg("theta"), py::arg("k"));
    m.def(
        "compute_a",
        [](double theta, int r_max) {
            const dupdel::theory::SurvivalTable t = dupdel::theory::compute_a(theta, r_max);
            py::dict d;
            d["a"] = t.a;
            d["log_a"] = t.log_a;
            d["p0"] = t.p0;
            return d;
        },
        py::arg("theta"), py::arg("r_max"),
        "First-passage scale a_r and p0(r) = 1/a_r.");
    m.def("a_binomial_sum", &dupdel::theory::a_binomial_sum, py::arg("theta"),
          py::arg("r"));
    m.def("laguerre_eval", &dupdel::theory::laguerre_eval, py::arg("r"), py::arg("x"));
    m.def(
        "p0_asympt",
        [](double theta, long long r) {
            return dupdel::theory::p0_asympt(dupdel::ModelParams(theta), r);
        },
        py::arg("theta"), py::arg("r"));
    m.def(
        "expected_size",
        [](int version, double theta, double n_or_t) {
            return dupdel::theory::expected_size(version, dupdel::ModelParams(theta),
                                                 n_or_t);
        },
        py::arg("version"), py::arg("theta"), py::arg("n_or_t"));
    m.def("es_n_r_exact", &dupdel::theory::es_n_r_exact, py::arg("theta"),
          py::arg("n_max"), py::arg("r_max"));

    // Oracles.
    m.def(
        "enumerate_states",
        [](int version, double theta, int n) {
            const dupdel::oracle::StateDistribution dist =
                dupdel::oracle::enumerate_states(version, theta, n);
            py::list states;
            for (const auto& [multiset, probability] : dist.entries)
                states.append(py::make_tuple(multiset, probability));
            return states;
        },
        py::arg("version"), py::arg("theta"), py::arg("n"),
        "Exact state law as a list of (clique-size multiset, probability).");
    m.def("first_passage_solve", &dupdel::oracle::first_passage_solve, py::arg("theta"),
          py::arg("r"));
    m.def("stationary_solve", &dupdel::oracle::stationary_solve, py::arg("theta"),
          py::arg("k_trunc"));

    // Simulation.
    m.def(
        "simulate",
        [](int version, double theta, double horizon, std::uint64_t seed,
           const std::vector<double>& snapshots, std::uint64_t replica) {
            dupdel::RunConfig config;
            config.version = version;
            config.horizon = horizon;
            config.seed = seed;
            config.replica = replica;
            config.snapshot_points = snapshots;
            const auto snaps =
                dupdel::run_simulation(config, dupdel::ModelParams(theta));
            py::list out;
            for (const auto& snap : snaps) out.append(snapshot_to_dict(snap));
            return out;
        },
        py::arg("version"), py::arg("theta"), py::arg("horizon"), py::arg("seed") = 0,
        py::arg("snapshots") = std::vector<double>{}, py::arg("replica") = 0,
        "Run one simulation; returns a list of snapshot dicts.");
    m.def(
        "simulate_fixed_vertex",
        [](double theta, double t_end, std::uint64_t seed, std::uint64_t replica) {
            dupdel::RandomSource rng = dupdel::RandomSource::for_replica(seed, replica);
            const dupdel::FixedVertexTrajectory traj =
                dupdel::simulate_fixed_vertex(dupdel::ModelParams(theta), t_end, rng);
            py::dict d;
            d["times"] = traj.times;
            d["degrees"] = traj.degrees;
            d["running_max"] = traj.running_max;
            return d;
        },
        py::arg("theta"), py::arg("t_end"), py::arg("seed") = 0, py::arg("replica") = 0,
        "Degree trajectory of one tracked vertex.");

    // Experiments (JSON text in, JSON text out).
    m.def(
        "run_experiment_json",
        [](const std::string& spec_text) {
            return dupdel::experiments::result_to_json_text(
                dupdel::experiments::run_experiment(
                    dupdel::experiments::spec_from_json_text(spec_text)));
        },
        py::arg("spec_json"),
        "Run a declarative experiment from its JSON spec; returns result JSON.");
}
