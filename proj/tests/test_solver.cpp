#include "fujita/solver.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

using namespace fujita;

namespace {

SimConfig small_config(const InitialDatum& datum, double t_end, double dt, double dx,
                       double tol = 1e-8) {
    SimConfig cfg;
    cfg.t_end = t_end;
    cfg.dt = dt;
    cfg.domain_tol = tol;
    cfg.half_width = choose_domain(datum, t_end, tol);
    cfg.nx = 2 * static_cast<int>(std::ceil(cfg.half_width / dx)) + 1;
    cfg.output_times = {t_end};
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("choose_domain") {
    const auto tent = make_tent_datum();

    // Monotone in the horizon, matches the closed-form start when the
    // in-time maximum lies beyond it.
    const double l10 = choose_domain(tent, 10.0, 1e-12);
    const double l100 = choose_domain(tent, 100.0, 1e-12);
    CHECK(l10 < l100);
    const double formula =
        1.0 + 2.0 * std::sqrt(100.0 * std::log(1.0 / (2.0 * std::sqrt(M_PI * 100.0) * 1e-12)));
    CHECK(l100 == doctest::Approx(formula).epsilon(1e-12));

    // Postcondition: the tail bound stays below tol at the maximizing time.
    for (double t_end : {0.5, 10.0, 100.0}) {
        for (double tol : {1e-6, 1e-12}) {
            const double l = choose_domain(tent, t_end, tol);
            const double t_star = std::min(0.5 * (l - 1.0) * (l - 1.0), t_end);
            const double bound = tent.mass() / (2.0 * std::sqrt(M_PI * t_star))
                                 * std::exp(-(l - 1.0) * (l - 1.0) / (4.0 * t_star));
            CHECK(bound < tol);
            CHECK(l > 1.0);
        }
    }

    CHECK_THROWS_AS(choose_domain(tent, 10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(choose_domain(tent, -1.0, 1e-8), std::invalid_argument);
}

TEST_CASE("exact reaction flow") {
    CHECK(reaction_exact(0.0, 4.0, 0.5) == doctest::Approx(homogeneous_state(4.0, 0.5)).epsilon(1e-15));
    CHECK(reaction_exact(3.7, 0.0, 0.3) == doctest::Approx(3.7).epsilon(1e-15));
    CHECK(reaction_exact(1.0, 1.5, 1.0 / 3.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(reaction_exact(-5.0, 1.0, 0.5) == reaction_exact(0.0, 1.0, 0.5));  // clamped
    CHECK_THROWS_AS(reaction_exact(1.0, -0.1, 0.5), std::invalid_argument);

    // Strictly increasing in duration; inverse round-trips.
    CHECK(reaction_exact(1.0, 0.2, 0.4) < reaction_exact(1.0, 0.3, 0.4));
    const double v = reaction_exact(0.8, 0.7, 0.25);
    CHECK(reaction_exact_inverse(v, 0.7, 0.25) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("diffusion step preserves constants") {
    SolutionFrame f;
    f.t = 0.0;
    f.values.assign(41, 2.5);
    const auto out = diffusion_step(f, 0.04, 0.1, 2.5, 2.5);
    for (double v : out.values) CHECK(v == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(out.t == doctest::Approx(0.04));
}

TEST_CASE("diffusion step obeys the discrete maximum principle at r <= 1") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    const double dx = 0.1, dt = 0.009;  // r = 0.9
    for (int trial = 0; trial < 20; ++trial) {
        SolutionFrame f;
        f.values.resize(31);
        for (double& v : f.values) v = unif(rng);
        const double left = unif(rng), right = unif(rng);
        double lo = std::min(left, right), hi = std::max(left, right);
        for (double v : f.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const auto out = diffusion_step(f, dt, dx, left, right);
        for (double v : out.values) {
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
    }
}

TEST_CASE("diffusion step converges to the analytic gaussian solution") {
    // u0 = exp(-x^2/(4a)) spreads to sqrt(a/(a+t)) exp(-x^2/(4(a+t))).
    const double a = 0.5, t_end = 0.5, l = 12.0;
    std::vector<double> errs;
    for (int nx : {121, 241, 481}) {
        const double dx = 2.0 * l / (nx - 1);
        const double dt = dx * dx;  // refine both; r fixed
        SolutionFrame f;
        f.t = 0.0;
        f.values.resize(nx);
        for (int i = 0; i < nx; ++i) {
            const double x = -l + i * dx;
            f.values[i] = std::exp(-x * x / (4.0 * a));
        }
        const long steps = std::lround(t_end / dt);
        for (long k = 0; k < steps; ++k) {
            const double tm = f.t + 0.5 * dt;
            const double edge = std::sqrt(a / (a + tm)) * std::exp(-l * l / (4.0 * (a + tm)));
            f = diffusion_step(f, dt, dx, edge, edge);
        }
        double err = 0.0;
        for (int i = 0; i < nx; ++i) {
            const double x = -l + i * dx;
            const double exact = std::sqrt(a / (a + f.t)) * std::exp(-x * x / (4.0 * (a + f.t)));
            err = std::max(err, std::abs(f.values[i] - exact));
        }
        errs.push_back(err);
    }
    CHECK(std::log2(errs[0] / errs[1]) > 1.8);
    CHECK(std::log2(errs[1] / errs[2]) > 1.8);
}

TEST_CASE("split step is exact on spatially constant states") {
    const double p = 0.5, c = 0.7;
    const auto tent = make_tent_datum();
    SimConfig cfg;
    cfg.half_width = 5.0;
    cfg.nx = 101;
    cfg.dt = 0.01;
    cfg.t_end = 2.0;
    cfg.output_times = {2.0};

    SolverState st(tent, ProblemParams(p), cfg);
    st.set_field(std::vector<double>(cfg.nx, c));
    st.set_boundary_trace([&](double, double t) { return reaction_exact(c, t, p); });
    for (int k = 0; k < 200; ++k) st.step();

    const double expect = reaction_exact(c, 2.0, p);
    for (double v : st.frame().values) {
        CHECK(std::abs(v - expect) < 1e-12);
    }
}

TEST_CASE("one step from the tent is strictly positive") {
    const auto tent = make_tent_datum();
    SimConfig cfg;
    cfg.half_width = 4.0;
    cfg.nx = 161;
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    cfg.output_times = {1.0};
    SolverState st(tent, ProblemParams(0.5), cfg);
    st.step();
    for (double v : st.frame().values) CHECK(v > 0.0);
    // the reaction half-steps alone already lift zero to u_h(dt)
    CHECK(st.frame().values.front()
          == doctest::Approx(homogeneous_state(0.01, 0.5)).epsilon(1e-12));
}

TEST_CASE("halving dt cuts the splitting error about fourfold") {
    // Measured on a pre-smoothed state; the initial kink otherwise hides
    // the asymptotic order behind Crank-Nicolson startup transients.
    const double p = 0.4;
    const auto tent = make_tent_datum();
    ProblemParams params(p);

    SimConfig prep = small_config(tent, 0.5, 0.003125, 0.025);
    const auto smooth = run(tent, params, prep).frames.back();

    std::vector<std::vector<double>> finals;
    for (double dt : {0.05, 0.025, 0.0125}) {
        SimConfig cfg = prep;
        cfg.dt = dt;
        cfg.t_end = 0.5;
        cfg.output_times = {0.5};
        SolverState st(tent, params, cfg);
        st.set_field(smooth.values);
        st.set_boundary_trace([p](double, double t) { return homogeneous_state(t + 0.5, p); });
        for (long k = 0; k < cfg.total_steps(); ++k) st.step();
        finals.push_back(st.frame().values);
    }
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < finals[0].size(); ++i) {
        e1 = std::max(e1, std::abs(finals[0][i] - finals[1][i]));
        e2 = std::max(e2, std::abs(finals[1][i] - finals[2][i]));
    }
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("run validates its configuration") {
    const auto tent = make_tent_datum();
    ProblemParams params(0.5);

    SimConfig cfg = small_config(tent, 2.0, 0.01, 0.1);
    CHECK_NOTHROW(run(tent, params, cfg));

    SimConfig bad = cfg;
    bad.output_times = {0.333};  // not a multiple of dt
    CHECK_THROWS_AS(run(tent, params, bad), std::invalid_argument);

    bad = cfg;
    bad.half_width = 3.0;  // too small for the tail criterion
    bad.nx = 61;
    CHECK_THROWS_AS(run(tent, params, bad), std::invalid_argument);

    bad = cfg;
    bad.nx = 100;  // even
    CHECK_THROWS_AS(run(tent, params, bad), std::invalid_argument);

    bad = cfg;
    bad.output_times = {1.0, 3.0};  // beyond t_end
    CHECK_THROWS_AS(run(tent, params, bad), std::invalid_argument);
}

TEST_CASE("run keeps the homogeneous bounds, symmetry, and boundary trace") {
    const auto tent = make_tent_datum();
    const double p = 0.5;
    ProblemParams params(p);
    SimConfig cfg = small_config(tent, 2.0, 0.01, 0.05);
    cfg.output_times = {0.5, 1.0, 2.0};

    const RunResult res = run(tent, params, cfg);
    REQUIRE(res.frames.size() == 3);

    const double sup = tent.supnorm();
    for (const auto& frame : res.frames) {
        const double uh = homogeneous_state(frame.t, p);
        const double hi = std::pow(std::pow(sup, 1.0 - p) + (1.0 - p) * frame.t, 1.0 / (1.0 - p));
        const auto& v = frame.values;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(v[i] > uh - 1e-6);
            CHECK(v[i] < hi + 1e-6);
            CHECK(v[i] == doctest::Approx(v[n - 1 - i]).epsilon(1e-12));  // even datum
        }
        // extreme nodes ride the homogeneous trace
        CHECK(std::abs(v.front() - uh) <= res.diagnostics.boundary_influence + 1e-12);
    }

    for (const auto& [t, dev] : res.deviation) CHECK(dev > 0.0);
    CHECK(res.diagnostics.steps == 200);
}

TEST_CASE("subsolution boundary trace brackets the run from below") {
    const auto tent = make_tent_datum();
    const double p = 0.4;
    ProblemParams params(p);
    SimConfig cfg = small_config(tent, 2.0, 0.01, 0.05);
    cfg.output_times = {1.0, 2.0};

    SimConfig sub_cfg = cfg;
    sub_cfg.boundary_mode = BoundaryMode::subsolution_trace;

    const RunResult hom = run(tent, params, cfg);
    const RunResult sub = run(tent, params, sub_cfg);
    KernelEvaluator ev(tent, params);

    for (std::size_t f = 0; f < hom.frames.size(); ++f) {
        const double t = hom.frames[f].t;
        // boundary nodes land exactly on the requested trace
        CHECK(sub.frames[f].values.front()
              == doctest::Approx(ev.subsolution(-cfg.half_width, t)).epsilon(1e-12));
        // the subsolution trace sits above u_h, and the interior solutions
        // of the two modes agree to within the boundary influence
        CHECK(sub.frames[f].values.front() >= homogeneous_state(t, p));
        const std::size_t mid = hom.frames[f].values.size() / 2;
        CHECK(std::abs(sub.frames[f].values[mid] - hom.frames[f].values[mid])
              <= hom.diagnostics.boundary_influence + 1e-12);
    }
}

TEST_CASE("doubling the domain leaves the deviation series unchanged") {
    const auto tent = make_tent_datum();
    ProblemParams params(0.4);
    SimConfig cfg = small_config(tent, 2.0, 0.01, 0.05);
    cfg.output_times = {1.0, 2.0};

    SimConfig wide = cfg;
    wide.half_width = 2.0 * cfg.half_width;
    wide.nx = 2 * cfg.nx - 1;  // same dx

    const RunResult a = run(tent, params, cfg);
    const RunResult b = run(tent, params, wide);
    for (std::size_t i = 0; i < a.deviation.size(); ++i) {
        CHECK(std::abs(a.deviation[i].second - b.deviation[i].second)
              <= a.diagnostics.boundary_influence + 1e-12);
    }
}

TEST_SUITE_END();
