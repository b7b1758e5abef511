#include "fujita/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fujita {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kTimeFloor = 1e-12;

// Nearest-edge z beyond which erf differences saturate and the closed-form
// panels cancel away; switch to positive quadrature there.
constexpr double kClosedFormZMax = 5.0;

}  // namespace

KernelEvaluator::KernelEvaluator(InitialDatum datum, ProblemParams params, QuadratureConfig quad)
    : datum_(std::move(datum)), params_(params), quad_(quad) {
    quad_.validate();

    // E(s) <= K * Delta(s)^{1-p} with K from convexity of the excess map,
    // and Delta obeys the Gaussian tail majorant at t = 1; solve for the
    // radius where the product falls two decades below abs_tol.
    const double p = params_.p;
    const double delta_cap = std::min(datum_.supnorm(), datum_.mass() / (2.0 * kSqrtPi));
    const double y_cap = std::pow(delta_cap, 1.0 - p);
    const double q = 1.0 / (1.0 - p);
    const double e_cap = std::pow(1.0 - p, q) * std::expm1(q * std::log1p(y_cap / (1.0 - p)));
    const double amp = (e_cap / y_cap) * std::pow(datum_.mass() / (2.0 * kSqrtPi), 1.0 - p);
    const double log_ratio = std::log(std::max(amp / (0.01 * quad_.abs_tol), 1.0));
    excess_radius_ = 1.0 + 2.0 * std::sqrt(log_ratio / (1.0 - p));

    // I = integral of E, truncated at the excess radius and extended until
    // the marginal panel is negligible.
    const double panel = 0.5;
    double lo = -excess_radius_, hi = excess_radius_;
    double total = integrate_composite([this](double s) { return excess(s); }, lo, hi, panel);
    for (int i = 0; i < 64; ++i) {
        const double c = integrate_composite([this](double s) { return excess(s); },
                                             hi, hi + panel, panel);
        total += c;
        hi += panel;
        if (std::abs(c) < 0.1 * quad_.abs_tol) break;
    }
    for (int i = 0; i < 64; ++i) {
        const double c = integrate_composite([this](double s) { return excess(s); },
                                             lo - panel, lo, panel);
        total += c;
        lo -= panel;
        if (std::abs(c) < 0.1 * quad_.abs_tol) break;
    }
    excess_mass_ = total;
}

double KernelEvaluator::closed_form_panels(double x, double t) const {
    // Per panel [a,b] with value v_a at a and slope beta, with
    // z = (s - x) / (2 sqrt(t)):
    //   (1/(2 sqrt(pi t))) int u0(s) exp(-(s-x)^2/(4t)) ds
    //     = A/2 (erf(z_b) - erf(z_a)) - beta sqrt(t/pi) (e^{-z_b^2} - e^{-z_a^2})
    // where A = v_a + beta (x - a) is the panel chord extrapolated to x.
    const auto& knots = datum_.knots();
    const auto& values = datum_.values();
    const double root_t = std::sqrt(t);
    const double inv = 1.0 / (2.0 * root_t);

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = knots[i], b = knots[i + 1];
        const double beta = datum_.slope(i);
        const double za = (a - x) * inv;
        const double zb = (b - x) * inv;
        const double chord_at_x = values[i] + beta * (x - a);
        sum += 0.5 * chord_at_x * (std::erf(zb) - std::erf(za));
        sum -= beta * root_t / kSqrtPi * (std::exp(-zb * zb) - std::exp(-za * za));
    }
    return sum;
}

double KernelEvaluator::far_field_quad(double x, double t) const {
    const double pref = 1.0 / (2.0 * kSqrtPi * std::sqrt(t));
    const double inv4t = 1.0 / (4.0 * t);
    auto f = [&](double s) {
        const double d = s - x;
        return datum_(s) * std::exp(-d * d * inv4t);
    };
    return pref * integrate_adaptive(f, datum_.knots().front(), datum_.knots().back(),
                                     quad_, datum_.knots());
}

double KernelEvaluator::heat_convolution(double x, double t) const {
    if (t < 0.0) throw std::invalid_argument("heat_convolution: t must be nonnegative");
    if (t <= kTimeFloor) return datum_(x);

    const double lo = datum_.knots().front(), hi = datum_.knots().back();
    const double dist = std::max({lo - x, x - hi, 0.0});
    if (dist / (2.0 * std::sqrt(t)) > kClosedFormZMax) {
        return far_field_quad(x, t);
    }
    return closed_form_panels(x, t);
}

double KernelEvaluator::heat_convolution_quad(double x, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("heat_convolution_quad: t must be positive");
    return far_field_quad(x, t);
}

double KernelEvaluator::heat_convolution_dx(double x, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("heat_convolution_dx: t must be positive");
    // Integrating by parts moves the derivative onto the datum, whose
    // endpoint values vanish: dD/dx = (1/(2 sqrt(pi t))) int u0'(s) K ds,
    // and u0' is the constant panel slope.
    const auto& knots = datum_.knots();
    const double inv = 1.0 / (2.0 * std::sqrt(t));
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double za = (knots[i] - x) * inv;
        const double zb = (knots[i + 1] - x) * inv;
        sum += 0.5 * datum_.slope(i) * (std::erf(zb) - std::erf(za));
    }
    return sum;
}

double KernelEvaluator::delta(double s) const { return heat_convolution(s, 1.0); }

double KernelEvaluator::excess(double s) const {
    const double p = params_.p;
    const double q = 1.0 / (1.0 - p);
    const double y = std::pow(delta(s), 1.0 - p);
    // ((1-p) + y)^q - (1-p)^q without cancellation for tiny y.
    return std::pow(1.0 - p, q) * std::expm1(q * std::log1p(y / (1.0 - p)));
}

double KernelEvaluator::excess_sup_bound() const {
    const double p = params_.p;
    const double q = 1.0 / (1.0 - p);
    const double y = std::pow(datum_.supnorm(), 1.0 - p);
    return std::pow(1.0 - p, q) * std::expm1(q * std::log1p(y / (1.0 - p)));
}

double KernelEvaluator::convolved_excess(double x, double t) const {
    const double var = t - 1.0;  // kernel exp(-(s-x)^2 / (4 var))
    const double sigma = std::sqrt(2.0 * var);
    const double reach = quad_.infinite_cutoff_sigma * sigma;
    const double panel = std::min(0.5 * sigma, 0.5);

    double lo = std::max(x - reach, -excess_radius_);
    double hi = std::min(x + reach, excess_radius_);
    if (!(lo < hi)) return 0.0;

    const double inv4 = 1.0 / (4.0 * var);
    auto f = [&](double s) {
        const double d = s - x;
        return excess(s) * std::exp(-d * d * inv4);
    };

    double total = integrate_composite(f, lo, hi, panel);
    for (int i = 0; i < 64; ++i) {
        const double c = integrate_composite(f, hi, hi + panel, panel);
        total += c;
        hi += panel;
        if (std::abs(c) < 0.1 * quad_.abs_tol) break;
    }
    for (int i = 0; i < 64; ++i) {
        const double c = integrate_composite(f, lo - panel, lo, panel);
        total += c;
        lo -= panel;
        if (std::abs(c) < 0.1 * quad_.abs_tol) break;
    }
    return total;
}

double KernelEvaluator::linearized(double x, double t) const {
    if (t < 1.0) throw std::invalid_argument("linearized: t must be at least 1");
    if (t - 1.0 <= kTimeFloor) return excess(x);
    const double p = params_.p;
    const double pref = std::pow(t, p / (1.0 - p)) / (2.0 * std::sqrt(kPi * (t - 1.0)));
    return pref * convolved_excess(x, t);
}

double KernelEvaluator::subsolution(double x, double t) const {
    const double p = params_.p;
    const double k = 1.0 / (1.0 + datum_.supnorm());
    return std::pow((1.0 - p) * t + k * heat_convolution(x, t), 1.0 / (1.0 - p));
}

double KernelEvaluator::supersolution(double x, double t) const {
    return homogeneous_state(t, params_.p) + linearized(x, t);
}

double KernelEvaluator::envelope_upper(double x, double t) const {
    if (t < 0.0) throw std::invalid_argument("envelope_upper: t must be nonnegative");
    if (t <= kTimeFloor) return datum_(x);
    const double p = params_.p;
    const double d = heat_convolution(x, t);
    return std::pow((1.0 - p) * t + std::pow(d, 1.0 - p), 1.0 / (1.0 - p));
}

double KernelEvaluator::subsolution_minus_uh(double x, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("subsolution_minus_uh: t must be positive");
    const double p = params_.p;
    const double q = 1.0 / (1.0 - p);
    const double a = (1.0 - p) * t;
    const double h = heat_convolution(x, t) / (1.0 + datum_.supnorm());
    return std::pow(a, q) * std::expm1(q * std::log1p(h / a));
}

double KernelEvaluator::envelope_upper_minus_uh(double x, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("envelope_upper_minus_uh: t must be positive");
    const double p = params_.p;
    const double q = 1.0 / (1.0 - p);
    const double a = (1.0 - p) * t;
    const double h = std::pow(heat_convolution(x, t), 1.0 - p);
    return std::pow(a, q) * std::expm1(q * std::log1p(h / a));
}

double KernelEvaluator::c_minus(double x, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("c_minus: t must be positive");
    // (1+supnorm)^{-1} (2 sqrt(pi (1-p)))^{-1} int u0 K ds, and the integral
    // is 2 sqrt(pi t) D(x,t).
    const double p = params_.p;
    const double k = 1.0 / (1.0 + datum_.supnorm());
    return k * std::sqrt(t / (1.0 - p)) * heat_convolution(x, t);
}

double KernelEvaluator::c_plus(double x, double t) const {
    if (!(t > 1.0)) throw std::invalid_argument("c_plus: t must exceed 1");
    const double p = params_.p;
    const double pref = std::pow(1.0 - p, (1.0 - 2.0 * p) / (1.0 - p))
                      / std::sqrt(2.0 * kPi * (1.0 - p));
    return pref * convolved_excess(x, t);
}

double KernelEvaluator::c_minus_limit() const {
    const double p = params_.p;
    const double k = 1.0 / (1.0 + datum_.supnorm());
    return k * datum_.mass() / (2.0 * std::sqrt(kPi * (1.0 - p)));
}

double KernelEvaluator::c_plus_limit() const {
    const double p = params_.p;
    const double pref = std::pow(1.0 - p, (1.0 - 2.0 * p) / (1.0 - p))
                      / std::sqrt(2.0 * kPi * (1.0 - p));
    return pref * excess_mass_;
}

std::pair<double, double> KernelEvaluator::cbar_constants(double band) const {
    if (!near_transitional(params_.p, band)) {
        throw std::invalid_argument("cbar_constants: p must sit in the transitional band");
    }
    const double k = 1.0 / (1.0 + datum_.supnorm());
    const double cbar_minus = k * datum_.mass() / (2.0 * std::sqrt(2.0 * kPi / 3.0));
    const double cbar_plus = excess_mass_ / std::sqrt(2.0 * kPi);
    return {cbar_minus, cbar_plus};
}

double KernelEvaluator::tail_bound(double x, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("tail_bound: t must be positive");
    const double ax = std::abs(x);
    if (ax < 1.0) throw std::invalid_argument("tail_bound: |x| must be at least 1");
    const double d = ax - 1.0;
    return datum_.mass() / (2.0 * std::sqrt(kPi * t)) * std::exp(-d * d / (4.0 * t));
}

}  // namespace fujita
