#include "dupdel/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace dupdel::oracle {

namespace {

// Compensated accumulation; the enumeration sums thousands of tiny branch
// weights and the 1e-12 agreement target leaves no room for drift.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double binomial_small(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    double b = 1.0;
    for (int m = 1; m <= r; ++m) b = b * (n - r + m) / m;
    return b;
}

std::vector<int> with_duplicated(const std::vector<int>& state, std::size_t idx) {
    std::vector<int> next = state;
    next[idx] += 1;
    std::sort(next.begin(), next.end(), std::greater<int>());
    return next;
}

std::vector<int> with_deleted(const std::vector<int>& state, std::size_t idx) {
    std::vector<int> next = state;
    next[idx] -= 1;
    next.push_back(1);
    std::sort(next.begin(), next.end(), std::greater<int>());
    return next;
}

}  // namespace

double StateDistribution::total_probability() const {
    KahanSum s;
    for (const auto& [state, p] : entries) s.add(p);
    return s.sum;
}

double StateDistribution::expected_vertices() const {
    KahanSum s;
    for (const auto& [state, p] : entries) {
        int vertices = 0;
        for (int size : state) vertices += size;
        s.add(p * vertices);
    }
    return s.sum;
}

double StateDistribution::expected_s_r(int r) const {
    if (r < 0) throw std::invalid_argument("r must be nonnegative");
    KahanSum s;
    for (const auto& [state, p] : entries) {
        double value = 0.0;
        for (int size : state) value += size * binomial_small(size - 1, r);
        s.add(p * value);
    }
    return s.sum;
}

StateDistribution enumerate_states(int version, double theta, int n) {
    if (version != 1 && version != 2)
        throw std::invalid_argument("enumeration covers versions 1 and 2 only");
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("theta must lie in (0, 1)");
    if (n < 0 || n > 8)
        throw std::invalid_argument("enumeration is limited to n <= 8");

    StateDistribution dist;
    dist.version = version;
    dist.n = n;
    dist.theta = theta;
    dist.entries[{1}] = 1.0;

    for (int step = 1; step <= n; ++step) {
        std::map<std::vector<int>, double> next;
        for (const auto& [state, prob] : dist.entries) {
            int vertices = 0;
            for (int size : state) vertices += size;
            double event_prob = 1.0;
            if (version == 2) {
                event_prob = static_cast<double>(vertices) / step;
                if (event_prob < 1.0)
                    next[state] += prob * (1.0 - event_prob);
            }
            // Group identical clique sizes: a vertex in any size-s clique
            // leads to the same successor multiset, so expand one branch per
            // position with weight size/N.
            for (std::size_t i = 0; i < state.size(); ++i) {
                const double pick =
                    static_cast<double>(state[i]) / vertices * event_prob * prob;
                next[with_duplicated(state, i)] += pick * theta;
                if (state[i] == 1)
                    next[state] += pick * (1.0 - theta);
                else
                    next[with_deleted(state, i)] += pick * (1.0 - theta);
            }
        }
        dist.entries = std::move(next);
    }
    return dist;
}

std::vector<double> first_passage_solve(double theta, int r) {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("theta must lie in (0, 1)");
    if (r < 1) throw std::invalid_argument("first_passage_solve requires r >= 1");

    // Rows 0..r: diag 1; row 0 super -theta; row i in (0, r) sub
    // -(i/(i+1))(1-theta), super -theta; row r fixes p_r = 1.
    const int m = r + 1;
    std::vector<double> super(m, 0.0), rhs(m, 0.0);
    super[0] = -theta;
    rhs[r] = 1.0;

    // Thomas forward sweep (diagonal stays positive by dominance).
    std::vector<double> diag(m, 1.0);
    for (int i = 1; i < r; ++i) {
        const double sub = -(static_cast<double>(i) / (i + 1.0)) * (1.0 - theta);
        const double w = sub / diag[i - 1];
        diag[i] = 1.0 - w * super[i - 1];
        rhs[i] -= w * rhs[i - 1];
        super[i] = -theta;
    }

    std::vector<double> p(m, 0.0);
    p[r] = rhs[r];
    for (int i = r - 1; i >= 0; --i) p[i] = (rhs[i] - super[i] * p[i + 1]) / diag[i];
    return p;
}

std::vector<double> stationary_solve(double theta, int k_trunc) {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("theta must lie in (0, 1)");
    if (k_trunc < 10) throw std::invalid_argument("stationary_solve requires k_trunc >= 10");

    const int m = k_trunc + 1;
    Eigen::MatrixXd generator = Eigen::MatrixXd::Zero(m, m);
    // Row k holds the rates out of degree k; the reset at degree 0 is a
    // self-loop and cancels out of the generator.
    generator(0, 1) = theta;
    generator(0, 0) = -theta;
    for (int k = 1; k < m; ++k) {
        const double up = (k + 1.0) * theta;
        const double down = k * (1.0 - theta);
        const double reset = 1.0 - theta;
        double out = down + reset;
        if (k < k_trunc) {
            generator(k, k + 1) = up;
            out += up;
        }
        generator(k, k - 1) += down;
        generator(k, 0) += reset;
        generator(k, k) -= out;
    }

    // Stationarity q M = 0 transposes to M^T q = 0; one redundant balance row
    // is replaced by the normalization sum q = 1.
    Eigen::MatrixXd system = generator.transpose();
    system.row(m - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    rhs(m - 1) = 1.0;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const Eigen::VectorXd q = lu.solve(rhs);
    const double residual = (system * q - rhs).cwiseAbs().maxCoeff();
    if (!std::isfinite(residual) || residual > 1e-8)
        throw NumericError("stationary solve did not converge", k_trunc);

    // Entries whose true value underflows come back as +-1e-20 noise from
    // the elimination; clamp them to zero and renormalize. Anything more
    // negative than that is a genuine failure.
    std::vector<double> out(q.data(), q.data() + m);
    double total = 0.0;
    for (double& v : out) {
        if (v < 0.0) {
            if (v < -1e-12)
                throw NumericError("stationary solve produced a negative mass",
                                   k_trunc);
            v = 0.0;
        }
        total += v;
    }
    for (double& v : out) v /= total;
    return out;
}

double monte_carlo_first_passage(double theta, int r, std::int64_t replicas,
                                 RandomSource& rng) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    std::int64_t successes = 0;
    for (std::int64_t i = 0; i < replicas; ++i) {
        int d = 0;
        for (;;) {
            // Embedded jump chain of the degree process: up with probability
            // theta, down d/(d+1) (1-theta), reset (vertex deleted, failure)
            // with the remaining (1-theta)/(d+1).
            const double x = rng.u01();
            if (x < theta) {
                if (++d == r) {
                    ++successes;
                    break;
                }
            } else if (x < theta + (static_cast<double>(d) / (d + 1.0)) * (1.0 - theta)) {
                --d;
            } else {
                break;
            }
        }
    }
    return static_cast<double>(successes) / static_cast<double>(replicas);
}

}  // namespace dupdel::oracle
