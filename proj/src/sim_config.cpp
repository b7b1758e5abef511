#include "fujita/sim_config.hpp"

#include <cmath>
#include <stdexcept>

namespace fujita {

std::string to_string(BoundaryMode mode) {
    return mode == BoundaryMode::homogeneous_state ? "homogeneous_state" : "subsolution_trace";
}

namespace {

long multiple_of_dt(double value, double dt, const char* what) {
    const double ratio = value / dt;
    const long k = std::lround(ratio);
    if (k < 1 || std::abs(static_cast<double>(k) * dt - value) > 1e-9 * std::max(1.0, value)) {
        throw std::invalid_argument(std::string(what) + ": must be a positive integer multiple of dt");
    }
    return k;
}

}  // namespace

void SimConfig::validate() const {
    if (!(half_width > 1.0)) throw std::invalid_argument("L: must exceed 1");
    if (nx < 3 || nx % 2 == 0) throw std::invalid_argument("nx: must be odd and at least 3");
    if (!(dt > 0.0)) throw std::invalid_argument("dt: must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end: must be positive");
    if (!(domain_tol > 0.0) || !(domain_tol < 1.0)) {
        throw std::invalid_argument("domain_tol: must lie in (0, 1)");
    }
    if (output_times.empty()) throw std::invalid_argument("output_times: must not be empty");
    double prev = 0.0;
    for (double t : output_times) {
        if (!(t > prev)) throw std::invalid_argument("output_times: must be strictly increasing and positive");
        if (t > t_end * (1.0 + 1e-12)) throw std::invalid_argument("output_times: must not exceed t_end");
        prev = t;
    }
    (void)output_steps();
    (void)total_steps();
}

std::vector<long> SimConfig::output_steps() const {
    std::vector<long> steps;
    steps.reserve(output_times.size());
    for (double t : output_times) {
        steps.push_back(multiple_of_dt(t, dt, "output_times"));
    }
    return steps;
}

long SimConfig::total_steps() const { return multiple_of_dt(t_end, dt, "t_end"); }

}  // namespace fujita
