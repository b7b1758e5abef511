#pragma once

#include <string>
#include <vector>

namespace fujita {

enum class BoundaryMode { homogeneous_state, subsolution_trace };

std::string to_string(BoundaryMode mode);

/// Truncated-domain run configuration. The grid is uniform on [-L, L] with
/// an odd point count so x = 0 is a node, and every output time must be an
/// integer multiple of dt (frames are never interpolated in time).
struct SimConfig {
    double half_width = 0.0;  // L > 1
    int nx = 0;               // odd, >= 3
    double dt = 0.0;
    double t_end = 0.0;
    std::vector<double> output_times;
    BoundaryMode boundary_mode = BoundaryMode::homogeneous_state;
    /// Tolerance fed to the tail-bound criterion when sizing/validating L.
    double domain_tol = 1e-10;

    double dx() const { return 2.0 * half_width / (nx - 1); }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Step index of each output time; throws if dt does not divide a gap.
    std::vector<long> output_steps() const;

    long total_steps() const;
};

}  // namespace fujita
