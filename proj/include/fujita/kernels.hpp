#pragma once

#include "fujita/datum.hpp"
#include "fujita/problem.hpp"
#include "fujita/quadrature.hpp"

#include <utility>

namespace fujita {

/// Evaluators for the closed-form objects attached to the sublinear
/// reaction-diffusion problem: the heat convolution D of the datum, its
/// x-derivative, the unit-time profile Delta, the excess E and its mass I,
/// the linearized solution W, the sub/supersolution envelopes, the rate
/// coefficients c_-/c_+ with their large-time limits, and the Gaussian tail
/// bound used for domain truncation.
///
/// Piecewise-linear data admit exact panel integrals in terms of erf and the
/// Gaussian antiderivative; these are the default evaluation route. Far
/// outside the support, where erf differences lose all significance, the
/// evaluator switches to adaptive quadrature of the (positive) integrand.
/// Convolutions against the excess use a fixed-panel composite rule whose
/// nodes move smoothly with (x, t).
///
/// All methods are pure; a single evaluator may be shared across threads.
class KernelEvaluator {
public:
    KernelEvaluator(InitialDatum datum, ProblemParams params, QuadratureConfig quad = {});

    const InitialDatum& datum() const { return datum_; }
    const ProblemParams& params() const { return params_; }
    const QuadratureConfig& quad() const { return quad_; }

    /// D(x,t): heat kernel applied to the datum. D(x,0) is the datum itself.
    double heat_convolution(double x, double t) const;

    /// Adaptive-quadrature route for D; cross-checks the closed-form panels.
    double heat_convolution_quad(double x, double t) const;

    /// dD/dx, via the integrated-by-parts closed form (the datum vanishes at
    /// the support endpoints, so only the panel slopes survive).
    double heat_convolution_dx(double x, double t) const;

    /// Delta(s) = D(s, 1).
    double delta(double s) const;

    /// E(s) = ((1-p) + Delta(s)^{1-p})^{1/(1-p)} - (1-p)^{1/(1-p)}, computed
    /// in expm1/log1p form so tiny Delta never cancels to zero.
    double excess(double s) const;

    /// Upper bound for E: the same expression with Delta replaced by the
    /// datum sup-norm.
    double excess_sup_bound() const;

    /// I = integral of E over the line.
    double excess_mass() const { return excess_mass_; }

    /// W(x,t) for t >= 1; W(.,1) = E. Solves W_t = W_xx + p((1-p)t)^{-1} W.
    double linearized(double x, double t) const;

    /// ((1-p)t + (1+supnorm)^{-1} D)^{1/(1-p)}; subsolution for t >= 0.
    double subsolution(double x, double t) const;

    /// u_h(t) + W(x,t); supersolution for t >= 1.
    double supersolution(double x, double t) const;

    /// ((1-p)t + D^{1-p})^{1/(1-p)}; upper envelope for t >= 0.
    double envelope_upper(double x, double t) const;

    /// subsolution - u_h without cancellation (valid for t > 0).
    double subsolution_minus_uh(double x, double t) const;

    /// envelope_upper - u_h without cancellation (valid for t > 0).
    double envelope_upper_minus_uh(double x, double t) const;

    /// Lower rate coefficient; equals (1+supnorm)^{-1} sqrt(t/(1-p)) D(x,t).
    double c_minus(double x, double t) const;

    /// Upper rate coefficient; Gaussian convolution of E with width 4(t-1),
    /// defined for t > 1.
    double c_plus(double x, double t) const;

    /// t -> infinity limits of c_-/c_+ (uniform in x).
    double c_minus_limit() const;
    double c_plus_limit() const;

    /// (cbar_minus, cbar_plus) for p in the transitional band around 1/3.
    std::pair<double, double> cbar_constants(double band = 1e-9) const;

    /// Gaussian tail majorant for D, valid for |x| >= 1, t > 0.
    double tail_bound(double x, double t) const;

    /// Radius beyond which E falls below the configured absolute tolerance.
    double excess_support_radius() const { return excess_radius_; }

    /// Convolution integral of E against exp(-(s-x)^2/(4(t-1))); shared by
    /// linearized() and c_plus().
    double convolved_excess(double x, double t) const;

private:
    double closed_form_panels(double x, double t) const;
    double far_field_quad(double x, double t) const;

    InitialDatum datum_;
    ProblemParams params_;
    QuadratureConfig quad_;
    double excess_radius_ = 0.0;
    double excess_mass_ = 0.0;
};

}  // namespace fujita
