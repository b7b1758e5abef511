#include "fujita/datum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fujita {

InitialDatum::InitialDatum(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.size() < 2) {
        throw std::invalid_argument("datum: need at least two knots");
    }
    if (knots_.size() != values_.size()) {
        throw std::invalid_argument("datum: knot/value count mismatch");
    }
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        if (!(knots_[i] < knots_[i + 1])) {
            throw std::invalid_argument("datum: knots must be strictly increasing");
        }
    }
    if (knots_.front() < -1.0 || knots_.back() > 1.0) {
        throw std::invalid_argument("datum: support must lie in [-1, 1]");
    }
    if (values_.front() != 0.0 || values_.back() != 0.0) {
        throw std::invalid_argument("datum: endpoint values must be zero");
    }
    bool nontrivial = false;
    for (double v : values_) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw std::invalid_argument("datum: values must be finite and nonnegative");
        }
        if (v > 0.0) nontrivial = true;
    }
    if (!nontrivial) {
        throw std::invalid_argument("datum: at least one value must be positive");
    }

    supnorm_ = *std::max_element(values_.begin(), values_.end());
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        mass_ += 0.5 * (values_[i] + values_[i + 1]) * (knots_[i + 1] - knots_[i]);
    }
}

double InitialDatum::operator()(double x) const {
    if (x <= knots_.front() || x >= knots_.back()) return 0.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    double w = (x - knots_[i]) / (knots_[i + 1] - knots_[i]);
    return values_[i] + w * (values_[i + 1] - values_[i]);
}

double InitialDatum::slope(std::size_t panel) const {
    return (values_[panel + 1] - values_[panel]) / (knots_[panel + 1] - knots_[panel]);
}

bool InitialDatum::is_even() const {
    const double tol = 1e-15;
    std::size_t n = knots_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(knots_[i] + knots_[n - 1 - i]) > tol) return false;
        if (std::abs(values_[i] - values_[n - 1 - i]) > tol) return false;
    }
    return true;
}

InitialDatum make_tent_datum() {
    return InitialDatum({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
}

}  // namespace fujita
