#pragma once

#include "fujita/datum.hpp"
#include "fujita/problem.hpp"
#include "fujita/sim_config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fujita {

/// One fully resolved run: datum, exponent, grid, and check tolerances.
struct RunSpec {
    InitialDatum datum;
    ProblemParams params;
    SimConfig sim;
    /// Sandwich/rate-bound slack as a multiple of u_h(t).
    double slack_rel = 1e-3;
    /// When true the slack factor is calibrated by a refinement study
    /// instead of taken from slack_rel.
    bool calibrate_slack = false;
};

/// Parameter sweep: one run spec template applied to several exponents.
struct SweepSpec {
    std::vector<double> p_values;
    RunSpec base;
    double fit_window_lo = 0.0;  // zero means t_end / 10
    double fit_window_hi = 0.0;  // zero means t_end
};

/// Parses the flat key-value run configuration:
///   p, t_end, dt, output_times, datum | datum_knots/datum_values,
///   boundary_mode, L (number or "auto"), nx or dx, domain_tol, slack_rel.
/// Unknown keys and malformed values throw std::invalid_argument naming the
/// key. When L is "auto" (or absent) the half-width comes from the
/// tail-bound criterion, and nx from the requested dx.
RunSpec parse_run_config(const std::string& path);

/// Same keys plus p_values (and optional fit_window); p is not required.
SweepSpec parse_sweep_config(const std::string& path);

/// Exposed for tests: parse from in-memory text.
RunSpec parse_run_config_text(const std::string& text);
SweepSpec parse_sweep_config_text(const std::string& text);

}  // namespace fujita
