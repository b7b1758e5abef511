#pragma once

#include "fujita/datum.hpp"
#include "fujita/kernels.hpp"
#include "fujita/problem.hpp"
#include "fujita/sim_config.hpp"

#include <functional>
#include <span>
#include <vector>

namespace fujita {

struct SolutionFrame {
    double t = 0.0;
    std::vector<double> values;
};

struct RunDiagnostics {
    long steps = 0;
    double dx = 0.0;
    double dt = 0.0;
    double half_width = 0.0;
    /// max over output times of tail_bound(L-1, t); proxy for the influence
    /// of the truncated boundary on interior values.
    double boundary_influence = 0.0;
};

struct RunResult {
    std::vector<SolutionFrame> frames;
    /// (t, max over grid of u - u_h(t)) at each output time.
    std::vector<std::pair<double, double>> deviation;
    RunDiagnostics diagnostics;
};

/// Smallest half-width L such that the Gaussian tail bound for D stays below
/// tol on (0, t_end] at the boundary. Starts from the closed-form value
/// L = 1 + 2 sqrt(t_end ln(mass / (2 sqrt(pi t_end) tol))) and grows L if the
/// interior-in-time maximum of the bound still exceeds tol.
double choose_domain(const InitialDatum& datum, double t_end, double tol);

/// Exact flow of du/dtau = u^p over duration tau, from u >= 0 (negative
/// inputs clamp to zero): (u^{1-p} + (1-p) tau)^{1/(1-p)}. Well defined at
/// u = 0, which is what makes the split scheme immune to the non-Lipschitz
/// reaction.
double reaction_exact(double u, double tau, double p);

/// Inverse of reaction_exact in its duration argument.
double reaction_exact_inverse(double u, double tau, double p);

/// One implicit-trapezoidal (Crank-Nicolson) step of u_t = u_xx on a uniform
/// grid with Dirichlet values (left, right) held at both time levels.
SolutionFrame diffusion_step(const SolutionFrame& frame, double dt, double dx,
                             double left, double right);

/// Dirichlet trace u(+-L, t) the composed split step should reproduce at the
/// end of each step; called with the end-of-step time.
using BoundaryTrace = std::function<double(double x, double t)>;

/// Marching state for the Strang-split scheme: exact reaction half-step,
/// Crank-Nicolson diffusion step, exact reaction half-step.
class SolverState {
public:
    SolverState(const InitialDatum& datum, const ProblemParams& params, const SimConfig& config);

    // the default boundary trace closes over this object
    SolverState(const SolverState&) = delete;
    SolverState& operator=(const SolverState&) = delete;

    /// Replaces the default (boundary_mode-derived) trace; used by tests.
    void set_boundary_trace(BoundaryTrace trace) { trace_ = std::move(trace); }

    /// Overwrites the current field (time unchanged); used by tests.
    void set_field(std::span<const double> values);

    void step();

    const SolutionFrame& frame() const { return frame_; }
    double time() const { return frame_.t; }
    const std::vector<double>& grid() const { return grid_; }
    const SimConfig& config() const { return config_; }

private:
    ProblemParams params_;
    SimConfig config_;
    KernelEvaluator kernels_;
    BoundaryTrace trace_;
    SolutionFrame frame_;
    std::vector<double> grid_;
    long steps_done_ = 0;
    // Constant-coefficient tridiagonal solve: the elimination factors are
    // precomputed once, each step only sweeps the right-hand side.
    std::vector<double> thomas_cprime_;
    std::vector<double> thomas_inv_denom_;
    std::vector<double> rhs_;
};

/// Integrates the problem on [-L, L] up to t_end and samples the requested
/// output times. Requires L to pass the tail-bound criterion at domain_tol.
RunResult run(const InitialDatum& datum, const ProblemParams& params, const SimConfig& config);

}  // namespace fujita
