#include "fujita/datum.hpp"
#include "fujita/problem.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

using namespace fujita;

TEST_SUITE_BEGIN("core");

TEST_CASE("tent datum has the documented shape") {
    const auto tent = make_tent_datum();
    CHECK(tent.supnorm() == 1.0);
    CHECK(tent.mass() == 1.0);
    CHECK(tent(0.5) == 0.5);
    CHECK(tent(2.0) == 0.0);
    CHECK(tent(-0.25) == 0.75);
    CHECK(tent(-1.0) == 0.0);
    CHECK(tent.is_even());
}

TEST_CASE("datum construction rejects bad inputs") {
    CHECK_THROWS_AS(InitialDatum({-1.0, 1.0}, {0.0, 0.0}), std::invalid_argument);   // trivial
    CHECK_THROWS_AS(InitialDatum({-1.0, 0.5, 0.2}, {0.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(InitialDatum({-2.0, 0.0, 1.0}, {0.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(InitialDatum({-1.0, 0.0, 1.0}, {0.0, -1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(InitialDatum({-1.0, 0.0, 1.0}, {0.5, 1.0, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(InitialDatum({-0.5, 0.0, 0.25}, {0.0, 2.0, 0.0}));  // support inside [-1,1]
}

TEST_CASE("datum mass and supnorm agree with brute-force sampling") {
    const InitialDatum d({-1.0, -0.3, 0.1, 0.8, 1.0}, {0.0, 0.7, 2.0, 0.2, 0.0});

    // Trapezoid over a uniform million-point grid augmented with the knots.
    const long n = 1'000'000;
    std::vector<double> xs;
    xs.reserve(n + 8);
    for (long i = 0; i < n; ++i) xs.push_back(-1.0 + 2.0 * i / (n - 1));
    for (double k : d.knots()) xs.push_back(k);
    std::sort(xs.begin(), xs.end());

    double mass = 0.0, comp = 0.0, sup = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double va = d(xs[i]), vb = d(xs[i + 1]);
        sup = std::max({sup, va, vb});
        const double y = 0.5 * (va + vb) * (xs[i + 1] - xs[i]) - comp;
        const double t = mass + y;
        comp = (t - mass) - y;
        mass = t;
    }
    CHECK(std::abs(mass - d.mass()) < 1e-12);
    CHECK(std::abs(sup - d.supnorm()) < 1e-12);
}

TEST_CASE("homogeneous state values and ODE") {
    CHECK(homogeneous_state(8.0, 0.5) == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(homogeneous_state(0.0, 0.7) == 0.0);
    CHECK(homogeneous_state(1.5, 1.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(homogeneous_state(-0.1, 0.5), std::invalid_argument);

    // d/dt u_h = u_h^p, second-order convergence of the central difference.
    const double p = 0.4, t = 2.0;
    auto fd_err = [&](double h) {
        const double fd = (homogeneous_state(t + h, p) - homogeneous_state(t - h, p)) / (2.0 * h);
        return std::abs(fd - std::pow(homogeneous_state(t, p), p));
    };
    const double e1 = fd_err(1e-2), e2 = fd_err(5e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("critical exponents and reciprocity") {
    const auto [lo1, hi1] = critical_exponents(1);
    CHECK(lo1 == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    CHECK(hi1 == 3.0);
    const auto [lo2, hi2] = critical_exponents(2);
    CHECK(lo2 == 0.5);
    CHECK(hi2 == 2.0);
    for (int n = 1; n <= 10; ++n) {
        const auto [lo, hi] = critical_exponents(n);
        CHECK(std::abs(lo * hi - 1.0) <= 1e-15);
    }
    CHECK_THROWS_AS(critical_exponents(0), std::invalid_argument);
}

TEST_CASE("rate exponent") {
    CHECK(rate_exponent(1.0 / 3.0) == 0.0);
    CHECK(rate_exponent(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rate_exponent(0.2) == doctest::Approx(-0.25).epsilon(1e-15));

    // Algebraic identity rho(p) = p/(1-p) - 1/2 on random exponents.
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> unif(1e-6, 1.0 - 1e-6);
    for (int i = 0; i < 100; ++i) {
        const double p = unif(rng);
        CHECK(rate_exponent(p) == doctest::Approx(p / (1.0 - p) - 0.5).epsilon(1e-13));
    }
}

TEST_CASE("problem params validation") {
    CHECK_THROWS_AS(ProblemParams(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ProblemParams(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ProblemParams(-0.2), std::invalid_argument);
    CHECK_THROWS_AS(ProblemParams(0.5, 0), std::invalid_argument);
    CHECK_NOTHROW(ProblemParams(1e-9));
    CHECK(near_transitional(1.0 / 3.0));
    CHECK(near_transitional(0.333333333333333315));
    CHECK_FALSE(near_transitional(0.3334));
}

TEST_SUITE_END();
