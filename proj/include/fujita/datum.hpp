#pragma once

#include <vector>

namespace fujita {

/// Nonnegative, nontrivial, continuous piecewise-linear initial datum with
/// support contained in [-1, 1] and continuous zero extension to the line.
///
/// The representation is a strictly increasing knot list with one ordinate
/// per knot; the first and last ordinates must be zero so the zero extension
/// is continuous. Sup-norm and mass (the exact trapezoid integral of the
/// interpolant) are computed once at construction.
class InitialDatum {
public:
    InitialDatum(std::vector<double> knots, std::vector<double> values);

    double operator()(double x) const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    double supnorm() const { return supnorm_; }
    double mass() const { return mass_; }

    /// Slope of the interpolant on panel [knots[i], knots[i+1]].
    double slope(std::size_t panel) const;
    std::size_t panel_count() const { return knots_.size() - 1; }

    bool is_even() const;

private:
    std::vector<double> knots_;
    std::vector<double> values_;
    double supnorm_ = 0.0;
    double mass_ = 0.0;
};

/// Canonical test datum u0(x) = 1 - |x| on [-1, 1].
InitialDatum make_tent_datum();

}  // namespace fujita
