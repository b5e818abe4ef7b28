#pragma once

#include <stdexcept>
#include <string>

namespace dupdel {

// Thrown when a numerical routine (quadrature, linear solve, recursion) fails;
// carries the index it was processing so callers can report the offending k/r.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, long long index)
        : std::runtime_error(what + " (index " + std::to_string(index) + ")"),
          index_(index) {}

    long long index() const { return index_; }

private:
    long long index_;
};

enum class Regime { subcritical, critical, supercritical };

// Duplication probability theta plus the two derived ratios the closed
// formulas are written in. beta = theta/(2 theta - 1) blows up at the
// critical point, so it is exposed through a checked accessor instead of a
// plain field.
struct ModelParams {
    double theta;
    double gamma;   // (1 - theta) / theta
    Regime regime;

    explicit ModelParams(double theta_in)
        : theta(theta_in), gamma((1.0 - theta_in) / theta_in) {
        if (!(theta > 0.0) || !(theta < 1.0))
            throw std::invalid_argument("theta must lie in (0, 1)");
        if (theta < 0.5)
            regime = Regime::subcritical;
        else if (theta > 0.5)
            regime = Regime::supercritical;
        else
            regime = Regime::critical;
    }

    bool has_beta() const { return regime != Regime::critical; }

    // Negative in the subcritical regime, > 1 in the supercritical one.
    double beta() const {
        if (!has_beta())
            throw std::domain_error("beta is undefined at theta = 1/2");
        return theta / (2.0 * theta - 1.0);
    }
};

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::subcritical: return "subcritical";
        case Regime::critical: return "critical";
        default: return "supercritical";
    }
}

}  // namespace dupdel
