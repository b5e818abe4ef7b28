#include "dupdel/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace dupdel::theory {

namespace {

// All integrands are evaluated as exp(log integrand) so the t^k factor keeps
// full relative precision up to k of several thousand instead of underflowing.
// The quadrature supplies u and 1-u separately; the linear endpoint factors
// are rebuilt from 1-u so nothing is lost to cancellation:
//   subcritical   1 - u/gamma   = ((gamma - 1) + (1-u)) / gamma
//   supercritical 1 - gamma * u = (1 - gamma) + gamma * (1-u)

double sub_integral(const ModelParams& p, long long k, double pow_u,
                    double pow_omu, double pow_lin, const QuadratureSpec& quad,
                    const char* label) {
    const double g = p.gamma;
    auto f = [=](double u, double omu) {
        return std::exp(pow_u * std::log(u) + pow_omu * std::log(omu) +
                        pow_lin * std::log((g - 1.0 + omu) / g));
    };
    return integrate01(f, quad, label, k);
}

double super_integral(const ModelParams& p, long long k, double pow_u,
                      double pow_omu, double pow_lin, const QuadratureSpec& quad,
                      const char* label) {
    const double g = p.gamma;
    auto f = [=](double u, double omu) {
        return std::exp(pow_u * std::log(u) + pow_omu * std::log(omu) +
                        pow_lin * std::log(1.0 - g + g * omu));
    };
    return integrate01(f, quad, label, k);
}

// Critical integrals after the substitution t = u/(1-u), which maps the
// [0, inf) forms onto (0, 1):
//   c_k = (k+1) * Int_0^1 u^k e^{-u/(1-u)} du
//   q_k =         Int_0^1 u^k e^{-u/(1-u)} / (1-u) du
double crit_integral(long long k, bool extra_inv_omu, const QuadratureSpec& quad,
                     const char* label) {
    const double kk = static_cast<double>(k);
    auto f = [=](double u, double omu) {
        double log_val = kk * std::log(u) - u / omu;
        if (extra_inv_omu) log_val -= std::log(omu);
        return std::exp(log_val);
    };
    return integrate01(f, quad, label, k);
}

void require_k(long long k, long long min_k, const char* what) {
    if (k < min_k)
        throw std::invalid_argument(std::string(what) + " requires k >= " +
                                    std::to_string(min_k));
}

}  // namespace

double c_at(const ModelParams& p, long long k, const QuadratureSpec& quad) {
    require_k(k, 0, "c_at");
    const double kk = static_cast<double>(k);
    switch (p.regime) {
        case Regime::subcritical: {
            const double beta = p.beta();
            const double integral =
                sub_integral(p, k, kk + 1.0, -1.0 - beta, beta - 1.0, quad, "c");
            return std::exp(-(kk + 1.0) * std::log(p.gamma)) * integral;
        }
        case Regime::critical:
            return (kk + 1.0) * crit_integral(k, false, quad, "c");
        default: {
            const double beta = p.beta();
            return p.gamma *
                   super_integral(p, k, kk + 1.0, beta - 1.0, -1.0 - beta, quad, "c");
        }
    }
}

double log_c_at(const ModelParams& p, long long k, const QuadratureSpec& quad) {
    require_k(k, 0, "log_c_at");
    const double kk = static_cast<double>(k);
    switch (p.regime) {
        case Regime::subcritical: {
            const double beta = p.beta();
            const double integral =
                sub_integral(p, k, kk + 1.0, -1.0 - beta, beta - 1.0, quad, "log_c");
            return -(kk + 1.0) * std::log(p.gamma) + std::log(integral);
        }
        case Regime::critical:
            return std::log(kk + 1.0) + std::log(crit_integral(k, false, quad, "log_c"));
        default: {
            const double beta = p.beta();
            return std::log(p.gamma) +
                   std::log(super_integral(p, k, kk + 1.0, beta - 1.0, -1.0 - beta,
                                           quad, "log_c"));
        }
    }
}

std::vector<double> compute_c(const ModelParams& p, int k_max, const QuadratureSpec& quad) {
    if (k_max < 1) throw std::invalid_argument("compute_c requires k_max >= 1");
    std::vector<double> c(k_max + 1);
    for (int k = 0; k <= k_max; ++k) c[k] = c_at(p, k, quad);
    return c;
}

double log_asympt_c(const ModelParams& p, long long k) {
    require_k(k, 1, "asympt_c");
    const double kk = static_cast<double>(k);
    switch (p.regime) {
        case Regime::subcritical: {
            // (1-beta)^{-beta} Gamma(1-beta) gamma^{-k} k^{beta}
            const double beta = p.beta();
            return -beta * std::log(1.0 - beta) + std::lgamma(1.0 - beta) -
                   kk * std::log(p.gamma) + beta * std::log(kk);
        }
        case Regime::critical:
            // (e pi)^{1/2} k^{1/4} e^{-2 sqrt k}
            return 0.5 * (1.0 + std::log(M_PI)) + 0.25 * std::log(kk) -
                   2.0 * std::sqrt(kk);
        default: {
            // gamma beta^beta Gamma(beta+1) k^{-beta}
            const double beta = p.beta();
            return std::log(p.gamma) + beta * std::log(beta) +
                   std::lgamma(beta + 1.0) - beta * std::log(kk);
        }
    }
}

double asympt_c(const ModelParams& p, long long k) { return std::exp(log_asympt_c(p, k)); }

double q_at(const ModelParams& p, long long k, const QuadratureSpec& quad) {
    require_k(k, 0, "q_at");
    const double kk = static_cast<double>(k);
    switch (p.regime) {
        case Regime::subcritical: {
            const double beta = p.beta();
            const double integral =
                sub_integral(p, k, kk, -beta, beta - 1.0, quad, "q");
            return std::exp(-kk * std::log(p.gamma)) * integral;
        }
        case Regime::critical:
            return crit_integral(k, true, quad, "q");
        default: {
            const double beta = p.beta();
            return p.gamma * super_integral(p, k, kk, beta - 1.0, -beta, quad, "q");
        }
    }
}

std::vector<double> compute_q(const ModelParams& p, int k_max, const QuadratureSpec& quad,
                              QMethod method) {
    if (k_max < 1) throw std::invalid_argument("compute_q requires k_max >= 1");
    std::vector<double> q(k_max + 1);
    if (method == QMethod::integral) {
        for (int k = 0; k <= k_max; ++k) q[k] = q_at(p, k, quad);
    } else {
        // q_0 = gamma (1 - c_0), q_k = c_{k-1} - gamma c_k
        const std::vector<double> c = compute_c(p, k_max, quad);
        q[0] = p.gamma * (1.0 - c[0]);
        for (int k = 1; k <= k_max; ++k) q[k] = c[k - 1] - p.gamma * c[k];
    }
    return q;
}

double tail_q(const ModelParams& p, long long k, const QuadratureSpec& quad) {
    require_k(k, 1, "tail_q");
    const double kk = static_cast<double>(k);
    switch (p.regime) {
        case Regime::subcritical: {
            const double beta = p.beta();
            const double integral =
                sub_integral(p, k, kk, -beta, beta - 2.0, quad, "tail_q");
            return std::exp(-kk * std::log(p.gamma)) * integral;
        }
        case Regime::critical:
            // The critical tail telescopes exactly to c_{k-1}.
            return c_at(p, k - 1, quad);
        default: {
            const double beta = p.beta();
            return p.gamma *
                   super_integral(p, k, kk, beta - 2.0, -beta, quad, "tail_q");
        }
    }
}

double log_tail_q(const ModelParams& p, long long k, const QuadratureSpec& quad) {
    require_k(k, 1, "log_tail_q");
    const double kk = static_cast<double>(k);
    switch (p.regime) {
        case Regime::subcritical: {
            const double beta = p.beta();
            const double integral =
                sub_integral(p, k, kk, -beta, beta - 2.0, quad, "log_tail_q");
            return -kk * std::log(p.gamma) + std::log(integral);
        }
        case Regime::critical:
            return log_c_at(p, k - 1, quad);
        default:
            return std::log(tail_q(p, k, quad));
    }
}

double log_tail_q_asympt(const ModelParams& p, long long k) {
    require_k(k, 1, "tail_q_asympt");
    const double kk = static_cast<double>(k);
    switch (p.regime) {
        case Regime::subcritical: {
            // (1-beta)^{2-beta} Gamma(1-beta) k^{beta-1} gamma^{-k}
            const double beta = p.beta();
            return (2.0 - beta) * std::log(1.0 - beta) + std::lgamma(1.0 - beta) +
                   (beta - 1.0) * std::log(kk) - kk * std::log(p.gamma);
        }
        case Regime::critical:
            return log_asympt_c(p, k);
        default: {
            // gamma beta^beta Gamma(beta-1) k^{1-beta}
            const double beta = p.beta();
            return std::log(p.gamma) + beta * std::log(beta) +
                   std::lgamma(beta - 1.0) + (1.0 - beta) * std::log(kk);
        }
    }
}

double tail_q_asympt(const ModelParams& p, long long k) {
    return std::exp(log_tail_q_asympt(p, k));
}

TheoryTable make_theory_table(const ModelParams& p, int k_max, bool with_tail,
                              const QuadratureSpec& quad, QMethod q_method) {
    TheoryTable table;
    table.theta = p.theta;
    table.k_max = k_max;
    table.c = compute_c(p, k_max, quad);
    table.q = compute_q(p, k_max, quad, q_method);
    table.c_method = Method::integral;
    table.q_method =
        (q_method == QMethod::integral) ? Method::integral : Method::recursion;
    if (with_tail) {
        table.tail.resize(k_max + 1);
        table.tail[0] = 1.0;
        for (int k = 1; k <= k_max; ++k) table.tail[k] = tail_q(p, k, quad);
    }
    return table;
}

SurvivalTable compute_a(double theta, int r_max) {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("theta must lie in (0, 1)");
    if (r_max < 1) throw std::invalid_argument("compute_a requires r_max >= 1");
    SurvivalTable table;
    table.theta = theta;
    table.r_max = r_max;
    table.a.resize(r_max + 1);
    table.log_a.resize(r_max + 1);
    table.p0.resize(r_max + 1);

    // The recursion is linear and homogeneous, so both carried terms can be
    // rescaled whenever they approach the top of the double range; the
    // factor accumulates in log_scale and log_a stays finite in every regime
    // (subcritically a_r grows like gamma^r, far past double overflow).
    double prev = 1.0;          // a_{i-1} / scale
    double curr = 1.0 / theta;  // a_i / scale
    double log_scale = 0.0;
    auto store = [&table](int r, double x, double ls) {
        const double log_a = std::log(x) + ls;
        table.log_a[r] = log_a;
        table.a[r] = x * std::exp(ls);
        table.p0[r] = std::exp(-log_a);
    };
    store(0, prev, 0.0);
    store(1, curr, 0.0);
    for (int i = 1; i < r_max; ++i) {
        const double next =
            (curr - (static_cast<double>(i) / (i + 1.0)) * (1.0 - theta) * prev) / theta;
        prev = curr;
        curr = next;
        if (curr > 1e300) {
            prev *= 1e-300;
            curr *= 1e-300;
            log_scale += std::log(1e300);
        }
        store(i + 1, curr, log_scale);
    }
    return table;
}

namespace {

// Generalized binomial coefficient for real upper argument; the running
// product keeps the sign exact for negative x.
double generalized_binomial(double x, int j) {
    double b = 1.0;
    for (int m = 1; m <= j; ++m) b *= (x - (m - 1)) / m;
    return b;
}

double a_binomial_sum_super(double beta, double gamma, int r) {
    // Alternating sum; compensated accumulation keeps the documented r <= 30
    // window honest.
    double sum = 0.0, comp = 0.0;
    double gamma_pow = 1.0;
    for (int i = 0; i <= r; ++i) {
        const double term = generalized_binomial(beta - 1.0, i) *
                            generalized_binomial(-beta, r - i) * gamma_pow;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        gamma_pow *= gamma;
    }
    return (r % 2 == 0) ? sum : -sum;
}

}  // namespace

double a_binomial_sum(double theta, int r) {
    if (r < 0) throw std::invalid_argument("a_binomial_sum requires r >= 0");
    ModelParams p(theta);
    if (!p.has_beta())
        throw std::domain_error("a_binomial_sum is undefined at theta = 1/2; "
                                "use laguerre_eval");
    if (p.regime == Regime::supercritical)
        return a_binomial_sum_super(p.beta(), p.gamma, r);
    // Subcritical values reduce to the mirrored supercritical chain:
    // a_r(theta) = gamma^r a_r(1 - theta).
    ModelParams mirror(1.0 - theta);
    return std::pow(p.gamma, r) *
           a_binomial_sum_super(mirror.beta(), mirror.gamma, r);
}

double laguerre_eval(int r, double x) {
    if (r < 0) throw std::invalid_argument("laguerre_eval requires r >= 0");
    double prev = 1.0;        // L_0
    if (r == 0) return prev;
    double curr = 1.0 - x;    // L_1
    for (int i = 1; i < r; ++i) {
        const double next = ((2.0 * i + 1.0 - x) * curr - i * prev) / (i + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

double laguerre_asympt(int r, double y) {
    if (r < 1 || !(y > 0.0))
        throw std::invalid_argument("laguerre_asympt requires r >= 1 and y > 0");
    const double rr = static_cast<double>(r);
    return 0.5 / std::sqrt(M_PI) * std::pow(rr, -0.25) * std::exp(-0.5 * y) *
           std::pow(y, -0.25) * std::exp(2.0 * std::sqrt(y * rr));
}

double log_p0_asympt(const ModelParams& p, long long r) {
    require_k(r, 1, "p0_asympt");
    const double rr = static_cast<double>(r);
    switch (p.regime) {
        case Regime::subcritical: {
            // (1-beta)^{-beta} Gamma(1-beta) r^{beta} gamma^{-r}
            const double beta = p.beta();
            return -beta * std::log(1.0 - beta) + std::lgamma(1.0 - beta) +
                   beta * std::log(rr) - rr * std::log(p.gamma);
        }
        case Regime::critical:
            // 2 (e pi)^{1/2} r^{1/4} e^{-2 sqrt r}
            return std::log(2.0) + 0.5 * (1.0 + std::log(M_PI)) +
                   0.25 * std::log(rr) - 2.0 * std::sqrt(rr);
        default: {
            // beta^{beta-1} Gamma(beta) r^{1-beta}
            const double beta = p.beta();
            return (beta - 1.0) * std::log(beta) + std::lgamma(beta) +
                   (1.0 - beta) * std::log(rr);
        }
    }
}

double p0_asympt(const ModelParams& p, long long r) {
    return std::exp(log_p0_asympt(p, r));
}

double expected_size(int version, const ModelParams& p, double n_or_t) {
    if (n_or_t < 0.0) throw std::invalid_argument("horizon must be nonnegative");
    switch (version) {
        case 1:
            return 1.0 + p.theta * n_or_t;
        case 2: {
            const auto n = static_cast<long long>(std::llround(n_or_t));
            if (n <= 1000000) {
                double prod = 1.0;
                for (long long i = 1; i <= n; ++i) prod *= 1.0 + p.theta / i;
                return prod;
            }
            // Gamma form of the same product for very large n.
            const double nn = static_cast<double>(n);
            return std::exp(std::lgamma(nn + 1.0 + p.theta) -
                            std::lgamma(1.0 + p.theta) - std::lgamma(nn + 1.0));
        }
        case 3:
            return std::exp(p.theta * n_or_t);
        default:
            throw std::invalid_argument("version must be 1, 2 or 3");
    }
}

std::vector<std::vector<double>> es_n_r_exact(double theta, int n_max, int r_max) {
    if (n_max < 1 || r_max < 1)
        throw std::invalid_argument("es_n_r_exact requires n_max, r_max >= 1");
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("theta must lie in (0, 1)");
    std::vector<std::vector<double>> es(n_max + 1, std::vector<double>(r_max + 1, 0.0));
    es[0][0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        es[n][0] = es[n - 1][0] * (1.0 + theta / n);
        for (int r = 1; r <= r_max; ++r) {
            // The first coefficient can be negative for small n in the
            // subcritical regime, but only while E S_{n-1}(r) is still
            // exactly 0 (degree r needs more than n vertices), so the
            // recursion never actually mixes in a negative contribution.
            es[n][r] = (1.0 + (2.0 * theta - 1.0) * (r + 1.0) / n) * es[n - 1][r] +
                       theta * (r + 1.0) / n * es[n - 1][r - 1];
        }
    }
    return es;
}

BoundForm es_n_r_bound(const ModelParams& p, std::int64_t n, int r) {
    if (n < 1 || r < 0) throw std::invalid_argument("es_n_r_bound requires n >= 1, r >= 0");
    const double nn = static_cast<double>(n);
    switch (p.regime) {
        case Regime::subcritical: {
            const double beta = p.beta();
            return {true, 2.0 * (r + 1.0) * std::pow(-beta, r) * std::pow(nn, p.theta),
                    0.0, false};
        }
        case Regime::critical: {
            double factorial = 1.0;
            for (int i = 2; i <= r + 1; ++i) factorial *= i;
            return {true, 2.0 * factorial * std::sqrt(nn), 0.0, false};
        }
        default: {
            // Only the growth exponent is meaningful here (the numeric
            // prefactor is a recursively defined constant that is out of
            // scope); a log factor appears exactly when the two exponent
            // branches tie, i.e. at r = beta - 1.
            const double poly = (r + 1.0) * (2.0 * p.theta - 1.0);
            const double exponent = std::max(p.theta, poly);
            const bool log_corr = std::abs(poly - p.theta) < 1e-12;
            return {false, 0.0, exponent, log_corr};
        }
    }
}

MaxDegreeConstants maxdeg_bound_constants(const ModelParams& p) {
    switch (p.regime) {
        case Regime::subcritical:
            return {(1.0 - p.theta) / std::log(p.gamma),
                    (1.0 + p.theta) / (p.theta * std::log(p.gamma)),
                    MaxDegreeConstants::Scale::log_n};
        case Regime::critical:
            return {1.0 / 16.0, 9.0 / 4.0, MaxDegreeConstants::Scale::log_sq_n};
        default: {
            const double beta = p.beta();
            return {p.theta / beta, 1.0 / beta, MaxDegreeConstants::Scale::log_ratio};
        }
    }
}

}  // namespace dupdel::theory
