#pragma once

#include "fujita/kernels.hpp"
#include "fujita/solver.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fujita {

/// Scalar field psi(x, t) under verification.
using SpaceTimeField = std::function<double(double x, double t)>;

/// Absolute slack allowed at time t when comparing numerical fields against
/// the analytic envelopes.
using SlackFn = std::function<double(double t)>;

/// Slack proportional to the homogeneous state, the natural scale of the
/// solution at late times.
SlackFn relative_slack(double factor, double p);

struct StencilSteps {
    double hx = 1e-3;
    double ht = 1e-3;
};

/// Central finite-difference estimate of psi_t - psi_xx - [psi^p]^+ at (x,t).
/// Second-order accurate in both stencil steps.
double residual_operator(const SpaceTimeField& psi, double x, double t, double p,
                         StencilSteps steps = {});

/// Closed-form parabolic residual of the subsolution:
///   -p (1-p)^{-2} (1+supnorm)^{-2} D_x^2 ((1-p)t + (1+supnorm)^{-1} D)^{(2p-1)/(1-p)}
/// Nonpositive everywhere; vanishes where D_x does.
double subsolution_residual_analytic(const KernelEvaluator& eval, double x, double t);

/// Signed margins for one inequality family over a run's space-time lattice.
struct CheckEntry {
    std::string name;
    double worst_violation = 0.0;  // positive means the inequality failed by that much
    double slack_at_worst = 0.0;
    double x = 0.0;
    double t = 0.0;
    long samples = 0;
    bool pass = true;
    bool advisory = false;  // reported but not gating
};

struct SandwichReport {
    std::vector<CheckEntry> entries;
    bool pass = true;
};

/// Checks, at every grid node and output time, the strict homogeneous-state
/// lower bound, the global sup-norm upper bound, the heat-envelope upper
/// bound, and (for t >= 1) the subsolution/supersolution sandwich.
SandwichReport check_sandwich(const RunResult& result, const KernelEvaluator& eval,
                              const SlackFn& slack);

struct RateBoundsReport {
    std::vector<CheckEntry> entries;
    bool pass = true;
};

/// Checks u - u_h >= c_minus ((1-p)t)^rho and u - u_h <= c_plus ((1-p)t)^rho
/// at every node for output times t >= 2 (the upper-bound dominance starts
/// there); times in (1, 2) are reported as advisory entries.
RateBoundsReport check_rate_bounds(const RunResult& result, const KernelEvaluator& eval,
                                   const SlackFn& slack);

struct RateFit {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double predicted = 0.0;
    int points = 0;
};

/// Ordinary least squares of ln(deviation) against ln(t) over the window.
/// Requires t_lo >= 1, at least 8 points, and positive deviations.
RateFit fit_rate(std::span<const std::pair<double, double>> series, double t_lo,
                 double t_hi, double p);

enum class Regime { asymptotically_stable, liapunov_stable, unstable };

std::string to_string(Regime regime);

struct RegimeClassification {
    Regime regime;
    double p;
    double band;
};

/// Bands (0, 1/3 - band), [1/3 - band, 1/3 + band], (1/3 + band, 1).
RegimeClassification classify_regime(double p, double band = 1e-9);

/// Three-level refinement estimate of the discretization constant C in the
/// error model C (dx^2 + dt^2), measured on a short run of the given
/// configuration. Multiply by the target resolution to calibrate slack.
double estimate_discretization_constant(const InitialDatum& datum, const ProblemParams& params,
                                        const SimConfig& base);

}  // namespace fujita
