#include "fujita/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fujita {

SlackFn relative_slack(double factor, double p) {
    if (!(factor >= 0.0)) throw std::invalid_argument("relative_slack: factor must be nonnegative");
    return [factor, p](double t) { return factor * homogeneous_state(t, p); };
}

double residual_operator(const SpaceTimeField& psi, double x, double t, double p,
                         StencilSteps steps) {
    const double hx = steps.hx, ht = steps.ht;
    if (!(hx > 0.0) || !(ht > 0.0)) throw std::invalid_argument("residual_operator: steps must be positive");

    const double center = psi(x, t);
    const double dt_term = (psi(x, t + ht) - psi(x, t - ht)) / (2.0 * ht);
    const double dxx_term = (psi(x + hx, t) - 2.0 * center + psi(x - hx, t)) / (hx * hx);
    const double reaction = center > 0.0 ? std::pow(center, p) : 0.0;
    return dt_term - dxx_term - reaction;
}

double subsolution_residual_analytic(const KernelEvaluator& eval, double x, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("subsolution_residual_analytic: t must be positive");
    const double p = eval.params().p;
    const double k = 1.0 / (1.0 + eval.datum().supnorm());
    const double d = eval.heat_convolution(x, t);
    const double dx = eval.heat_convolution_dx(x, t);
    const double bracket = (1.0 - p) * t + k * d;
    return -p / ((1.0 - p) * (1.0 - p)) * k * k * dx * dx
           * std::pow(bracket, (2.0 * p - 1.0) / (1.0 - p));
}

namespace {

std::vector<double> grid_from(const RunResult& result) {
    const auto n = result.frames.front().values.size();
    std::vector<double> grid(n);
    const double l = result.diagnostics.half_width;
    const double dx = result.diagnostics.dx;
    for (std::size_t i = 0; i < n; ++i) grid[i] = -l + static_cast<double>(i) * dx;
    grid[(n - 1) / 2] = 0.0;
    return grid;
}

struct ViolationTracker {
    CheckEntry entry;
    double worst_excess = -std::numeric_limits<double>::infinity();

    explicit ViolationTracker(std::string name, bool advisory = false) {
        entry.name = std::move(name);
        entry.advisory = advisory;
    }

    void observe(double violation, double slack, double x, double t) {
        ++entry.samples;
        const double excess = violation - slack;
        if (excess > worst_excess) {
            worst_excess = excess;
            entry.worst_violation = violation;
            entry.slack_at_worst = slack;
            entry.x = x;
            entry.t = t;
        }
    }

    CheckEntry finish() {
        entry.pass = entry.samples == 0 || worst_excess <= 0.0;
        return entry;
    }
};

}  // namespace

SandwichReport check_sandwich(const RunResult& result, const KernelEvaluator& eval,
                              const SlackFn& slack) {
    if (result.frames.empty()) throw std::invalid_argument("check_sandwich: empty run result");
    const auto grid = grid_from(result);
    const double p = eval.params().p;
    const double sup = eval.datum().supnorm();

    ViolationTracker uh_lower("homogeneous_lower");
    ViolationTracker global_upper("supnorm_upper");
    ViolationTracker envelope_upper("heat_envelope_upper");
    ViolationTracker sub_lower("subsolution_lower");
    ViolationTracker super_upper("supersolution_upper");

    for (const auto& frame : result.frames) {
        const double t = frame.t;
        const double s = slack(t);
        const double uh = homogeneous_state(t, p);
        const double bound = std::pow(std::pow(sup, 1.0 - p) + (1.0 - p) * t, 1.0 / (1.0 - p));
        const bool sandwich = t >= 1.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double x = grid[i];
            const double u = frame.values[i];
            uh_lower.observe(uh - u, s, x, t);
            global_upper.observe(u - bound, s, x, t);
            envelope_upper.observe(u - eval.envelope_upper(x, t), s, x, t);
            if (sandwich) {
                sub_lower.observe(eval.subsolution(x, t) - u, s, x, t);
                super_upper.observe(u - eval.supersolution(x, t), s, x, t);
            }
        }
    }

    SandwichReport report;
    report.entries = {uh_lower.finish(), global_upper.finish(), envelope_upper.finish(),
                      sub_lower.finish(), super_upper.finish()};
    for (const auto& e : report.entries) report.pass = report.pass && e.pass;
    return report;
}

RateBoundsReport check_rate_bounds(const RunResult& result, const KernelEvaluator& eval,
                                   const SlackFn& slack) {
    if (result.frames.empty()) throw std::invalid_argument("check_rate_bounds: empty run result");
    bool any_late = false;
    for (const auto& f : result.frames) any_late = any_late || f.t >= 2.0;
    if (!any_late) throw std::invalid_argument("check_rate_bounds: need output times >= 2");

    const auto grid = grid_from(result);
    const double p = eval.params().p;
    const double rho = rate_exponent(p);

    ViolationTracker lower("rate_lower");
    ViolationTracker upper("rate_upper");
    ViolationTracker early_lower("rate_lower_pre_onset", true);
    ViolationTracker early_upper("rate_upper_pre_onset", true);

    for (const auto& frame : result.frames) {
        const double t = frame.t;
        if (t <= 1.0) continue;
        const bool gating = t >= 2.0;
        const double s = slack(t);
        const double uh = homogeneous_state(t, p);
        const double scale = std::pow((1.0 - p) * t, rho);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double x = grid[i];
            const double dev = frame.values[i] - uh;
            const double lo = eval.c_minus(x, t) * scale;
            const double hi = eval.c_plus(x, t) * scale;
            (gating ? lower : early_lower).observe(lo - dev, s, x, t);
            (gating ? upper : early_upper).observe(dev - hi, s, x, t);
        }
    }

    RateBoundsReport report;
    report.entries = {lower.finish(), upper.finish(), early_lower.finish(), early_upper.finish()};
    for (const auto& e : report.entries) {
        if (!e.advisory) report.pass = report.pass && e.pass;
    }
    return report;
}

RateFit fit_rate(std::span<const std::pair<double, double>> series, double t_lo, double t_hi,
                 double p) {
    if (!(t_lo >= 1.0)) throw std::invalid_argument("fit_rate: window must start at t >= 1");
    if (!(t_lo < t_hi)) throw std::invalid_argument("fit_rate: empty window");

    std::vector<double> lx, ly;
    for (const auto& [t, dev] : series) {
        if (t < t_lo || t > t_hi) continue;
        if (!(dev > 0.0)) {
            throw std::invalid_argument("fit_rate: nonpositive deviation in window (bound violated upstream)");
        }
        lx.push_back(std::log(t));
        ly.push_back(std::log(dev));
    }
    const int n = static_cast<int>(lx.size());
    if (n < 8) throw std::invalid_argument("fit_rate: need at least 8 points in the window");

    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    RateFit fit;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.predicted = rate_exponent(p);
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::asymptotically_stable: return "asymptotically_stable";
        case Regime::liapunov_stable: return "liapunov_stable";
        case Regime::unstable: return "unstable";
    }
    return "unknown";
}

RegimeClassification classify_regime(double p, double band) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("classify_regime: p must lie in (0,1)");
    if (!(band > 0.0) || !(band < 1.0 / 6.0)) {
        throw std::invalid_argument("classify_regime: band must lie in (0, 1/6)");
    }
    Regime regime;
    if (p < transitional_exponent - band) {
        regime = Regime::asymptotically_stable;
    } else if (p > transitional_exponent + band) {
        regime = Regime::unstable;
    } else {
        regime = Regime::liapunov_stable;
    }
    return {regime, p, band};
}

double estimate_discretization_constant(const InitialDatum& datum, const ProblemParams& params,
                                        const SimConfig& base) {
    SimConfig cfg = base;
    cfg.output_times = {base.t_end};

    std::vector<SolutionFrame> finals;
    for (int level = 0; level < 3; ++level) {
        finals.push_back(run(datum, params, cfg).frames.back());
        cfg.nx = 2 * cfg.nx - 1;
        cfg.dt *= 0.5;
    }

    double c_max = 0.0;
    double dx = base.dx(), dt = base.dt;
    for (int level = 0; level < 2; ++level) {
        const auto& coarse = finals[level].values;
        const auto& fine = finals[level + 1].values;
        double err = 0.0;
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            err = std::max(err, std::abs(coarse[i] - fine[2 * i]));
        }
        // Second-order model: |u_h - u_{h/2}| ~ (3/4) C (dx^2 + dt^2).
        c_max = std::max(c_max, err / (0.75 * (dx * dx + dt * dt)));
        dx *= 0.5;
        dt *= 0.5;
    }
    return c_max;
}

}  // namespace fujita
