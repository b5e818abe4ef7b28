#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "dupdel/experiments.hpp"

namespace ex = dupdel::experiments;

namespace {

const ex::ResultRow* find_row(const ex::RunResult& result, const std::string& metric) {
    for (const auto& row : result.rows)
        if (row.metric == metric) return &row;
    return nullptr;
}

const ex::Verdict* find_verdict(const ex::RunResult& result, const std::string& metric) {
    for (const auto& v : result.verdicts)
        if (v.metric == metric) return &v;
    return nullptr;
}

}  // namespace

TEST_CASE("kind names round-trip") {
    for (const char* name :
         {"degree_convergence", "fixed_vertex_marginal", "max_degree_growth",
          "first_passage", "growth_law", "tv_decay"}) {
        CHECK(std::string(ex::kind_name(ex::kind_from_name(name))) == name);
    }
    CHECK_THROWS_AS(ex::kind_from_name("no_such_kind"), std::invalid_argument);
}

TEST_CASE("specs parse from JSON with strict keys") {
    const std::string text = R"({
        "schema_version": 1,
        "kind": "degree_convergence",
        "version": 1,
        "theta": 0.5,
        "horizon": 50000,
        "replicas": 2,
        "master_seed": 9,
        "k_max": 20
    })";
    const auto spec = ex::spec_from_json_text(text);
    CHECK(spec.kind == ex::ExperimentKind::degree_convergence);
    CHECK(spec.version == 1);
    CHECK(spec.theta == 0.5);
    CHECK(spec.horizon == 50000);
    CHECK(spec.replicas == 2);
    CHECK(spec.master_seed == 9);
    CHECK(spec.k_max == 20);
    CHECK(spec.tolerance == 0.02);  // default

    CHECK_THROWS_AS(ex::spec_from_json_text(R"({"kind": "growth_law", "bogus": 1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ex::spec_from_json_text(R"({"version": 1})"),
                    std::invalid_argument);  // kind is required
    CHECK_THROWS_AS(ex::spec_from_json_text("not json at all"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        ex::spec_from_json_text(R"({"kind": "growth_law", "schema_version": 2})"),
        std::invalid_argument);
}

TEST_CASE("specs serialize and parse back unchanged") {
    ex::ExperimentSpec spec;
    spec.kind = ex::ExperimentKind::first_passage;
    spec.theta = 0.7;
    spec.horizon = 0.0;
    spec.replicas = 1000;
    spec.master_seed = 4;
    spec.r_grid = {1, 2, 4};
    const auto round = ex::spec_from_json_text(ex::spec_to_json_text(spec));
    CHECK(round.kind == spec.kind);
    CHECK(round.theta == spec.theta);
    CHECK(round.replicas == spec.replicas);
    CHECK(round.master_seed == spec.master_seed);
    CHECK(round.r_grid == spec.r_grid);
}

TEST_CASE("spec validation rejects inconsistent requests") {
    ex::ExperimentSpec spec;
    spec.kind = ex::ExperimentKind::first_passage;
    spec.theta = 0.5;
    spec.replicas = 100;
    spec.r_grid = {};  // needs at least one target
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.r_grid = {3, 2};  // must ascend
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

    ex::ExperimentSpec tv;
    tv.kind = ex::ExperimentKind::tv_decay;
    tv.version = 3;
    tv.horizon = 10.0;
    tv.times = {4.0, 20.0};  // beyond the horizon
    CHECK_THROWS_AS(tv.validate(), std::invalid_argument);
    tv.times = {4.0, 8.0};
    tv.version = 1;  // continuous-time only
    CHECK_THROWS_AS(tv.validate(), std::invalid_argument);
}

TEST_CASE("growth law experiment validates the discrete mean") {
    ex::ExperimentSpec spec;
    spec.kind = ex::ExperimentKind::growth_law;
    spec.version = 1;
    spec.theta = 0.5;
    spec.horizon = 20000;
    spec.replicas = 4;
    spec.master_seed = 2;
    spec.tolerance = 0.05;

    const auto result = ex::run_experiment(spec);
    CHECK(result.overall_pass);
    const auto* verdict = find_verdict(result, "n_over_n");
    REQUIRE(verdict != nullptr);
    CHECK(std::abs(verdict->observed - 0.5) < 0.05);
    CHECK(verdict->reference == 0.5);
    REQUIRE(find_row(result, "n_vertices[replica=0]") != nullptr);
    for (const auto& v : result.verdicts) CHECK(v.pass);
}

TEST_CASE("degree convergence experiment reaches the limit proportions") {
    ex::ExperimentSpec spec;
    spec.kind = ex::ExperimentKind::degree_convergence;
    spec.version = 1;
    spec.theta = 0.5;
    spec.horizon = 200000;
    spec.replicas = 2;
    spec.master_seed = 3;
    spec.k_max = 20;
    spec.tolerance = 0.05;

    const auto result = ex::run_experiment(spec);
    CHECK(result.overall_pass);
    const auto* final_l1 = find_verdict(result, "l1_final[replica=0]");
    REQUIRE(final_l1 != nullptr);
    CHECK(final_l1->observed < 0.05);
}

TEST_CASE("first passage experiment crosschecks all four estimates") {
    ex::ExperimentSpec spec;
    spec.kind = ex::ExperimentKind::first_passage;
    spec.theta = 0.5;
    spec.replicas = 40000;
    spec.master_seed = 8;
    spec.r_grid = {1, 2, 3};

    const auto result = ex::run_experiment(spec);
    CHECK(result.overall_pass);
    const auto* solve = find_verdict(result, "solve_vs_inv_a[r=2]");
    REQUIRE(solve != nullptr);
    CHECK(solve->pass);
    const auto* mc = find_verdict(result, "mc_agreement[r=2]");
    REQUIRE(mc != nullptr);
    CHECK(mc->pass);
    CHECK(std::abs(mc->reference - 2.0 / 7.0) < 1e-12);
}

TEST_CASE("results serialize to JSON and CSV with the schema markers") {
    ex::ExperimentSpec spec;
    spec.kind = ex::ExperimentKind::growth_law;
    spec.version = 1;
    spec.theta = 0.3;
    spec.horizon = 5000;
    spec.replicas = 2;
    spec.master_seed = 11;
    spec.tolerance = 0.1;

    const auto result = ex::run_experiment(spec);
    const auto json_text = ex::result_to_json_text(result);
    CHECK(json_text.find("\"schema_version\": 1") != std::string::npos);
    CHECK(json_text.find("\"overall_pass\"") != std::string::npos);
    CHECK(json_text.find("\"growth_law\"") != std::string::npos);
    CHECK(json_text.back() == '\n');

    const auto csv_text = ex::result_to_csv_text(result);
    CHECK(csv_text.rfind("# dupdel-schema v1\n", 0) == 0);
    CHECK(csv_text.find("at,metric,value,reference,tolerance,pass") != std::string::npos);
    CHECK(csv_text.find("n_over_n") != std::string::npos);
}
