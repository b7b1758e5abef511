#pragma once

#include <functional>
#include <span>

namespace fujita {

/// Tolerances and truncation policy for the quadrature-backed evaluators.
struct QuadratureConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    int max_subdivisions = 4000;
    /// Gaussian-kernel truncation radius in units of the kernel width
    /// sqrt(2(t-1)); the truncated tail is then far below abs_tol.
    double infinite_cutoff_sigma = 12.0;

    void validate() const;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
///
/// The interval is pre-split at the given breakpoints (datum knots land
/// here so the piecewise-linear kink never sits inside a panel), then the
/// panel with the largest error estimate is bisected until the summed
/// estimate meets max(abs_tol, rel_tol * |integral|).
double integrate_adaptive(const Integrand& f, double a, double b,
                          const QuadratureConfig& cfg,
                          std::span<const double> breakpoints = {});

/// Non-adaptive composite G7/K15 with a fixed panel width. The node set
/// moves smoothly with the endpoints, so the quadrature error is a smooth
/// function of any parameter the endpoints depend on; finite-difference
/// stencils applied on top of these integrals see no subdivision noise.
double integrate_composite(const Integrand& f, double a, double b, double max_panel);

}  // namespace fujita
