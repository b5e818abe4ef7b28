#pragma once

#include <functional>

#include "dupdel/params.hpp"

namespace dupdel {

// Policy for the tanh-sinh rule below.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    int max_levels = 10;  // level m halves the step to 2^-m
};

// Integral over (0, 1) by the tanh-sinh (double-exponential) rule. The
// integrand receives both u and 1 - u, each computed directly from the
// transformation so endpoint factors like (1-u)^alpha never lose precision
// to cancellation; integrable endpoint singularities are absorbed by the
// double-exponentially decaying weights.
//
// label/index only feed the NumericError raised on non-convergence.
double integrate01(const std::function<double(double u, double one_minus_u)>& f,
                   const QuadratureSpec& spec, const char* label, long long index);

}  // namespace dupdel
