#include "fujita/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace fujita {

ProblemParams::ProblemParams(double p_, int dim) : p(p_), dim_for_exponent_tables(dim) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("p must lie strictly inside (0, 1)");
    }
    if (dim < 1) {
        throw std::invalid_argument("dimension must be a positive integer");
    }
}

double homogeneous_state(double t, double p) {
    if (t < 0.0) throw std::invalid_argument("homogeneous_state: t must be nonnegative");
    if (t == 0.0) return 0.0;
    return std::pow((1.0 - p) * t, 1.0 / (1.0 - p));
}

std::pair<double, double> critical_exponents(int dim) {
    if (dim < 1) throw std::invalid_argument("critical_exponents: N must be positive");
    double n = static_cast<double>(dim);
    return {n / (n + 2.0), 1.0 + 2.0 / n};
}

double rate_exponent(double p) {
    return (3.0 * p - 1.0) / (2.0 * (1.0 - p));
}

bool near_transitional(double p, double band) {
    return std::abs(p - transitional_exponent) <= band;
}

}  // namespace fujita
