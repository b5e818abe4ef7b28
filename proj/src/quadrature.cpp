#include "dupdel/quadrature.hpp"

#include <cmath>

namespace dupdel {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kPi = 3.141592653589793;

// Beyond |s| ~ 6 the abscissa has collapsed onto an endpoint in double
// precision and the weight underflows, so the line sum is truncated there.
constexpr double kSMax = 6.5;

// One abscissa of the transformation u = (1 + tanh((pi/2) sinh s)) / 2.
// u and 1-u are produced separately (1/(1+e^{-2a}) and 1/(1+e^{2a})) so the
// one near an endpoint is accurate to full relative precision.
struct DePoint {
    double u, one_minus_u, weight;
};

DePoint de_point(double s) {
    const double a = kHalfPi * std::sinh(s);
    const double u = 1.0 / (1.0 + std::exp(-2.0 * a));
    const double omu = 1.0 / (1.0 + std::exp(2.0 * a));
    return {u, omu, kPi * std::cosh(s) * u * omu};
}

// Sum of w(s) f(s) over s = j*h for j = j0, j0 + dj, ... within the cutoff
// (s is formed as the exact product so refinement levels stay aligned).
// Points whose abscissa already collapsed to an endpoint are skipped; their
// true contribution is below double resolution for any integrable f.
double line_sum(const std::function<double(double, double)>& f,
                double h, long j0, long dj) {
    double sum = 0.0;
    for (long j = j0; std::abs(j * h) <= kSMax; j += dj) {
        const DePoint p = de_point(j * h);
        if (p.u <= 0.0 || p.one_minus_u <= 0.0) continue;
        sum += p.weight * f(p.u, p.one_minus_u);
    }
    return sum;
}

}  // namespace

double integrate01(const std::function<double(double, double)>& f,
                   const QuadratureSpec& spec, const char* label, long long index) {
    // Level 0: step 1 over all integer s. Each refinement halves the step
    // and only evaluates the new (odd-multiple) abscissas.
    double h = 1.0;
    double value = h * (line_sum(f, h, 0, 1) + line_sum(f, -h, 1, 1));
    for (int level = 1; level <= spec.max_levels; ++level) {
        h *= 0.5;
        const double odd = line_sum(f, h, 1, 2) + line_sum(f, -h, 1, 2);
        const double refined = 0.5 * value + h * odd;
        const double diff = std::abs(refined - value);
        value = refined;
        // One halving squares the error of this rule, so agreement of two
        // consecutive levels certifies the requested tolerance.
        if (level >= 2 && diff <= spec.rel_tol * std::abs(value))
            return value;
    }
    throw NumericError(std::string("quadrature did not converge for ") + label, index);
}

}  // namespace dupdel
