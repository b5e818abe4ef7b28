#pragma once

#include <cstdint>
#include <vector>

#include "dupdel/params.hpp"
#include "dupdel/quadrature.hpp"

namespace dupdel::theory {

enum class Method { integral, recursion, closed_sum };

// Limit proportions c_k of degree-k vertices and the stationary law q_k of a
// fixed vertex's degree, with provenance of how each array was produced.
struct TheoryTable {
    double theta = 0.0;
    int k_max = 0;
    std::vector<double> c;
    std::vector<double> q;
    std::vector<double> tail;  // tail[k] = sum_{j >= k} q_j; tail[0] = 1; empty unless requested
    Method c_method = Method::integral;
    Method q_method = Method::integral;
};

// ---- limit degree proportions c_k ----
// Regime-specific integral representations; the three-term recursion is only
// ever used as a residual check because generating c forward mixes in the
// growing second solution of the recursion.
double c_at(const ModelParams& p, long long k, const QuadratureSpec& quad = {});
// log c_k stays finite deep in the subcritical regime where c_k itself
// underflows (the gamma^-k prefactor is applied in log space).
double log_c_at(const ModelParams& p, long long k, const QuadratureSpec& quad = {});
std::vector<double> compute_c(const ModelParams& p, int k_max, const QuadratureSpec& quad = {});
double asympt_c(const ModelParams& p, long long k);
double log_asympt_c(const ModelParams& p, long long k);

// ---- stationary law q_k of a fixed vertex's degree ----
enum class QMethod { integral, from_c };
double q_at(const ModelParams& p, long long k, const QuadratureSpec& quad = {});
std::vector<double> compute_q(const ModelParams& p, int k_max,
                              const QuadratureSpec& quad = {},
                              QMethod method = QMethod::integral);

// ---- tail sums of q ----
double tail_q(const ModelParams& p, long long k, const QuadratureSpec& quad = {});
double log_tail_q(const ModelParams& p, long long k, const QuadratureSpec& quad = {});
double tail_q_asympt(const ModelParams& p, long long k);
double log_tail_q_asympt(const ModelParams& p, long long k);

TheoryTable make_theory_table(const ModelParams& p, int k_max, bool with_tail = false,
                              const QuadratureSpec& quad = {},
                              QMethod q_method = QMethod::integral);

// ---- first-passage scale a_r; p0(r) = 1/a_r is the probability a freshly
// ---- isolated vertex reaches degree r before its own deletion ----
struct SurvivalTable {
    double theta = 0.0;
    int r_max = 0;
    std::vector<double> a;      // overflows to +inf for very large subcritical r
    std::vector<double> log_a;  // always finite (the recursion is rescaled)
    std::vector<double> p0;     // exp(-log_a); may underflow to 0
};
// Forward recursion; a_r is the dominant solution in every regime, so the
// forward direction is the numerically stable one.
SurvivalTable compute_a(double theta, int r_max);
// Closed binomial-sum form (theta != 1/2). Alternating sum: documented
// validity window is r <= 30 at double precision; beyond that the recursion
// is authoritative.
double a_binomial_sum(double theta, int r);
// Laguerre polynomial L_r(x) by the three-term recursion; at theta = 1/2 the
// survival scale satisfies a_r = L_r(-1).
double laguerre_eval(int r, double x);
// First-order asymptotic of L_r(-y) for y > 0.
double laguerre_asympt(int r, double y);
double p0_asympt(const ModelParams& p, long long r);
double log_p0_asympt(const ModelParams& p, long long r);

// ---- expected vertex count ----
// version 1: 1 + theta * n (exact); version 2: prod_{i<=n}(1 + theta/i)
// (exact); version 3: e^{theta t} (exact mean of the geometric law of N(t)).
double expected_size(int version, const ModelParams& p, double n_or_t);

// ---- factorial-moment sums E S_n(r) of the slowed discrete chain ----
// Exact dynamic program over (n, r); row n holds E S_n(0..r_max).
std::vector<std::vector<double>> es_n_r_exact(double theta, int n_max, int r_max);

struct BoundForm {
    bool is_numeric;      // sub/critical: `value` bounds E S_n(r) from above
    double value;
    double exponent;      // supercritical: growth exponent of E S_n(r) in n
    bool log_correction;  // supercritical: extra log factor exactly at r = beta - 1
};
BoundForm es_n_r_bound(const ModelParams& p, std::int64_t n, int r);

// Bracket constants for the maximal degree: sub/critical regimes bound
// M_n / scale(N_n), the supercritical regime bounds log M_n / log N_n.
struct MaxDegreeConstants {
    enum class Scale { log_n, log_sq_n, log_ratio };
    double lower = 0.0;
    double upper = 0.0;
    Scale scale = Scale::log_n;
};
MaxDegreeConstants maxdeg_bound_constants(const ModelParams& p);

}  // namespace dupdel::theory
