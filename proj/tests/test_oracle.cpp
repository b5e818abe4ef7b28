#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dupdel/oracle.hpp"
#include "dupdel/params.hpp"
#include "dupdel/rng.hpp"
#include "dupdel/theory.hpp"

using dupdel::ModelParams;
using dupdel::RandomSource;
namespace orc = dupdel::oracle;
namespace th = dupdel::theory;

TEST_CASE("one step from a single vertex has the textbook law") {
    const auto law = orc::enumerate_states(1, 0.3, 1);
    REQUIRE(law.entries.size() == 2);
    CHECK(law.entries.at({1}) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(law.entries.at({2}) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(law.total_probability() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("two steps enumerate all four reachable states") {
    const auto law = orc::enumerate_states(1, 0.3, 2);
    REQUIRE(law.entries.size() == 4);
    CHECK(law.entries.at({3}) == doctest::Approx(0.09).epsilon(1e-14));
    CHECK(law.entries.at({1, 1}) == doctest::Approx(0.21).epsilon(1e-14));
    CHECK(law.entries.at({2}) == doctest::Approx(0.21).epsilon(1e-14));
    CHECK(law.entries.at({1}) == doctest::Approx(0.49).epsilon(1e-14));
    CHECK(law.expected_vertices() == doctest::Approx(1.6).epsilon(1e-14));
}

TEST_CASE("exact enumeration conserves probability and the mean growth laws") {
    for (double theta : {0.3, 0.7}) {
        for (int n = 0; n <= 6; ++n) {
            const auto law1 = orc::enumerate_states(1, theta, n);
            CHECK(law1.total_probability() == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(law1.expected_vertices() ==
                  doctest::Approx(1.0 + theta * n).epsilon(1e-13));

            const auto law2 = orc::enumerate_states(2, theta, n);
            CHECK(law2.total_probability() == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(law2.expected_vertices() ==
                  doctest::Approx(th::expected_size(2, ModelParams(theta), n))
                      .epsilon(1e-13));
        }
    }
}

TEST_CASE("enumerated moments reproduce the dynamic program") {
    for (double theta : {0.3, 0.5, 0.7}) {
        const auto es = th::es_n_r_exact(theta, 5, 2);
        for (int n = 1; n <= 5; ++n) {
            const auto law = orc::enumerate_states(2, theta, n);
            for (int r = 1; r <= 2; ++r)
                CHECK(std::abs(law.expected_s_r(r) - es[n][r]) < 1e-12);
        }
    }
}

TEST_CASE("enumeration guards its domain") {
    CHECK_THROWS_AS(orc::enumerate_states(3, 0.5, 2), std::invalid_argument);
    CHECK_THROWS_AS(orc::enumerate_states(1, 0.5, 9), std::invalid_argument);
    CHECK_THROWS_AS(orc::enumerate_states(1, 1.0, 2), std::invalid_argument);
}

TEST_CASE("first passage probabilities solve by hand at small r") {
    for (double theta : {0.3, 0.5, 0.7}) {
        const auto p = orc::first_passage_solve(theta, 1);
        REQUIRE(p.size() == 2);
        CHECK(p[0] == doctest::Approx(theta).epsilon(1e-14));
        CHECK(p[1] == 1.0);
    }
    const auto p = orc::first_passage_solve(0.5, 2);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
    CHECK(p[2] == 1.0);
}

TEST_CASE("first passage vector increases towards the target") {
    const auto p = orc::first_passage_solve(0.7, 40);
    for (std::size_t i = 1; i < p.size(); ++i) REQUIRE(p[i] > p[i - 1]);
    CHECK(p[0] > 0.0);
}

TEST_CASE("linear solve inverts the survival scale") {
    for (double theta : {0.3, 0.5, 0.7}) {
        const auto surv = th::compute_a(theta, 25);
        for (int r = 1; r <= 25; ++r) {
            const auto p = orc::first_passage_solve(theta, r);
            CHECK(std::abs(p[0] - 1.0 / surv.a[r]) < 1e-12);
        }
    }
}

TEST_CASE("truncated stationary solve matches the integral law at low degrees") {
    for (double theta : {0.3, 0.5, 0.7}) {
        const ModelParams p(theta);
        const auto stat = orc::stationary_solve(theta, 200);
        REQUIRE(stat.size() == 201);
        double total = 0.0;
        for (double v : stat) {
            REQUIRE(v >= 0.0);
            total += v;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

        const auto q = th::compute_q(p, 100);
        for (int k = 0; k <= 100; ++k)
            CHECK(std::abs(stat[k] - q[k]) < 1e-6 * (1.0 + q[k]));
    }
}

TEST_CASE("stationary solve guards its domain") {
    CHECK_THROWS_AS(orc::stationary_solve(0.5, 9), std::invalid_argument);
    CHECK_THROWS_AS(orc::stationary_solve(0.0, 100), std::invalid_argument);
}

TEST_CASE("Monte Carlo first passage agrees with the linear solve") {
    RandomSource rng(4242);
    const double exact = 2.0 / 7.0;
    const std::int64_t replicas = 200000;
    const double est = orc::monte_carlo_first_passage(0.5, 2, replicas, rng);
    const double sigma = std::sqrt(exact * (1.0 - exact) / replicas);
    CHECK(std::abs(est - exact) < 4.0 * sigma);
}
