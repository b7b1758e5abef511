#pragma once

#include <utility>

namespace fujita {

/// Exponent of the transitional stability regime in one space dimension.
inline constexpr double transitional_exponent = 1.0 / 3.0;

/// Problem parameters: the sublinear reaction exponent p in (0,1) and the
/// spatial dimension N used only by the critical-exponent tables.
struct ProblemParams {
    double p;
    int dim_for_exponent_tables = 1;

    explicit ProblemParams(double p_, int dim = 1);
};

/// Spatially homogeneous state ((1-p) t)^{1/(1-p)}; the exact solution of
/// du/dt = u^p started from zero. Rejects t < 0.
double homogeneous_state(double t, double p);

/// (p_minus, p_plus) = (N/(N+2), 1 + 2/N). The pair multiplies to 1.
std::pair<double, double> critical_exponents(int dim);

/// Power of (1-p)t governing the growth/decay of the sup deviation from the
/// homogeneous state: (3p - 1) / (2 (1 - p)). Zero exactly at p = 1/3.
double rate_exponent(double p);

/// True when p sits inside the tolerance band around 1/3.
bool near_transitional(double p, double band = 1e-9);

}  // namespace fujita
