#include "fujita/quadrature.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>

using namespace fujita;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("adaptive rule reproduces known integrals") {
    QuadratureConfig cfg;
    CHECK(integrate_adaptive([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0, cfg)
          == doctest::Approx(16.0).epsilon(1e-14));
    // int_{-inf}^{inf} e^{-x^2} = sqrt(pi), truncated far out
    CHECK(integrate_adaptive([](double x) { return std::exp(-x * x); }, -10.0, 10.0, cfg)
          == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    // orientation
    CHECK(integrate_adaptive([](double x) { return x; }, 1.0, 0.0, cfg)
          == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("breakpoints rescue kinked integrands") {
    QuadratureConfig cfg;
    auto kink = [](double x) { return std::abs(x); };
    const double split[] = {0.0};
    CHECK(integrate_adaptive(kink, -1.0, 2.0, cfg, split)
          == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("adaptive rule resolves a sharp gaussian") {
    QuadratureConfig cfg;
    auto narrow = [](double x) { return std::exp(-x * x / 5e-3); };
    CHECK(integrate_adaptive(narrow, -5.0, 5.0, cfg)
          == doctest::Approx(std::sqrt(5e-3 * M_PI)).epsilon(1e-11));

    // A spike three orders narrower still converges when its location is
    // declared as a breakpoint (the engine's contract for known features).
    auto spike = [](double x) { return std::exp(-x * x / 2e-6); };
    const double split[] = {-1e-3, 0.0, 1e-3};
    CHECK(integrate_adaptive(spike, -5.0, 5.0, cfg, split)
          == doctest::Approx(std::sqrt(2e-6 * M_PI)).epsilon(1e-11));
}

TEST_CASE("composite rule matches adaptive on smooth data") {
    QuadratureConfig cfg;
    auto f = [](double x) { return std::exp(-0.3 * x * x) * (1.0 + std::sin(x)); };
    const double a = integrate_adaptive(f, -8.0, 8.0, cfg);
    const double c = integrate_composite(f, -8.0, 8.0, 0.5);
    CHECK(c == doctest::Approx(a).epsilon(1e-13));
}

TEST_CASE("config validation") {
    QuadratureConfig cfg;
    cfg.rel_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.infinite_cutoff_sigma = 4.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    CHECK_NOTHROW(cfg.validate());
}

TEST_SUITE_END();
