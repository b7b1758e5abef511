// Command-line front end: solve / verify / rate / kernels / exponents.
//
// Exit codes: 0 success, 2 configuration or domain validation failure,
// 3 solver runtime failure, 4 verification or tolerance failure.

#include "fujita/csv_io.hpp"
#include "fujita/kernels.hpp"
#include "fujita/problem.hpp"
#include "fujita/run_config.hpp"
#include "fujita/solver.hpp"
#include "fujita/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fujita;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitCheckFailed = 4;

// Configurations coarser than this cannot support the slack model the
// verification checks assume.
constexpr double kRefinementFloorDx = 0.1;
constexpr double kRefinementFloorDt = 0.05;

void write_solve_outputs(const RunSpec& spec, const RunResult& result, const fs::path& out) {
    fs::create_directories(out);
    for (const auto& frame : result.frames) {
        CsvWriter csv((out / ("frame_t" + format_compact(frame.t) + ".csv")).string(),
                      {"x", "u"});
        const double dx = result.diagnostics.dx;
        for (std::size_t i = 0; i < frame.values.size(); ++i) {
            csv.row({-result.diagnostics.half_width + static_cast<double>(i) * dx,
                     frame.values[i]});
        }
    }
    {
        CsvWriter csv((out / "deviation.csv").string(), {"t", "sup_deviation", "u_h"});
        for (const auto& [t, dev] : result.deviation) {
            csv.row({t, dev, homogeneous_state(t, spec.params.p)});
        }
    }
    write_key_values((out / "diagnostics.txt").string(),
                     {{"p", format_full(spec.params.p)},
                      {"L", format_full(result.diagnostics.half_width)},
                      {"nx", std::to_string(spec.sim.nx)},
                      {"dx", format_full(result.diagnostics.dx)},
                      {"dt", format_full(result.diagnostics.dt)},
                      {"t_end", format_full(spec.sim.t_end)},
                      {"steps", std::to_string(result.diagnostics.steps)},
                      {"boundary_mode", to_string(spec.sim.boundary_mode)},
                      {"boundary_influence", format_full(result.diagnostics.boundary_influence)}});
}

int cmd_solve(const std::string& config_path, const std::string& out_dir) {
    RunSpec spec = parse_run_config(config_path);
    try {
        RunResult result = run(spec.datum, spec.params, spec.sim);
        write_solve_outputs(spec, result, out_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}

json entry_to_json(const CheckEntry& e, const std::string& lattice) {
    return json{{"check", e.name},
                {"lattice", lattice},
                {"worst_margin", e.worst_violation},
                {"slack", e.slack_at_worst},
                {"at_x", e.x},
                {"at_t", e.t},
                {"samples", e.samples},
                {"advisory", e.advisory},
                {"pass", e.pass}};
}

int cmd_verify(const std::string& config_path, const std::string& out_dir, bool inject_spike) {
    RunSpec spec = parse_run_config(config_path);
    if (spec.sim.dx() > kRefinementFloorDx || spec.sim.dt > kRefinementFloorDt) {
        std::cerr << "config error: grid too coarse for verification (need dx <= "
                  << kRefinementFloorDx << " and dt <= " << kRefinementFloorDt
                  << "; got dx = " << spec.sim.dx() << ", dt = " << spec.sim.dt
                  << "). Refine nx/dt or use the solve command.\n";
        return kExitConfig;
    }
    if (spec.sim.output_times.back() < 2.0) {
        std::cerr << "config error: output_times: verification needs an output time >= 2\n";
        return kExitConfig;
    }

    RunResult result;
    try {
        result = run(spec.datum, spec.params, spec.sim);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitRuntime;
    }

    if (inject_spike) {
        for (auto& frame : result.frames) {
            frame.values[frame.values.size() / 2] *= 1.1;
        }
    }

    const KernelEvaluator eval(spec.datum, spec.params);

    SlackFn slack;
    json slack_info;
    if (spec.calibrate_slack) {
        SimConfig cal = spec.sim;
        cal.t_end = std::max(1L, std::lround(std::min(1.0, spec.sim.t_end) / spec.sim.dt))
                    * spec.sim.dt;
        cal.output_times = {cal.t_end};
        const double c = estimate_discretization_constant(spec.datum, spec.params, cal);
        const double abs_slack =
            4.0 * c * (spec.sim.dx() * spec.sim.dx() + spec.sim.dt * spec.sim.dt);
        slack = [abs_slack](double) { return abs_slack; };
        slack_info = {{"mode", "calibrated"}, {"constant", c}, {"absolute", abs_slack}};
    } else {
        slack = relative_slack(spec.slack_rel, spec.params.p);
        slack_info = {{"mode", "relative_to_uh"}, {"factor", spec.slack_rel}};
    }

    const std::string lattice = "grid(" + std::to_string(spec.sim.nx) + ") x output_times("
                                + std::to_string(spec.sim.output_times.size()) + ")";
    json checks = json::array();
    bool pass = true;

    SandwichReport sandwich = check_sandwich(result, eval, slack);
    for (const auto& e : sandwich.entries) checks.push_back(entry_to_json(e, lattice));
    pass = pass && sandwich.pass;

    RateBoundsReport rates = check_rate_bounds(result, eval, slack);
    for (const auto& e : rates.entries) checks.push_back(entry_to_json(e, lattice));
    pass = pass && rates.pass;

    // Closed-form subsolution residual must be nonpositive.
    {
        double worst = -1e300;
        const double t_hi = std::min(50.0, spec.sim.t_end);
        long samples = 0;
        for (int i = 0; i <= 20; ++i) {
            for (int j = 0; j <= 20; ++j) {
                const double x = -5.0 + 0.5 * i;
                const double t = 0.1 + (t_hi - 0.1) * j / 20.0;
                worst = std::max(worst, subsolution_residual_analytic(eval, x, t));
                ++samples;
            }
        }
        const bool ok = worst <= 0.0;
        checks.push_back(json{{"check", "subsolution_residual_sign"},
                              {"lattice", "21x21 on [-5,5]x[0.1," + format_compact(t_hi) + "]"},
                              {"worst_margin", worst},
                              {"slack", 0.0},
                              {"samples", samples},
                              {"advisory", false},
                              {"pass", ok}});
        pass = pass && ok;
    }

    // Supersolution residual bounded below by the computable stencil error.
    {
        const double h = 5e-3;
        const double t_hi = std::min(50.0, spec.sim.t_end);
        double min_resid = 1e300, eps_fd = 0.0;
        long samples = 0;
        SpaceTimeField usup = [&](double x, double t) { return eval.supersolution(x, t); };
        for (double x = -5.0; x <= 5.0; x += 1.0) {
            for (int j = 0; j <= 8; ++j) {
                const double t = 1.05 + (t_hi - 1.05) * j / 8.0;
                min_resid = std::min(min_resid, residual_operator(usup, x, t, spec.params.p,
                                                                  {h, h}));
                const double p = spec.params.p;
                const double uh_fd =
                    (homogeneous_state(t + h, p) - homogeneous_state(t - h, p)) / (2.0 * h)
                    - std::pow(homogeneous_state(t, p), p);
                const double w_t =
                    (eval.linearized(x, t + h) - eval.linearized(x, t - h)) / (2.0 * h);
                const double w_xx =
                    (eval.linearized(x + h, t) - 2.0 * eval.linearized(x, t)
                     + eval.linearized(x - h, t)) / (h * h);
                const double w_fd = w_t - w_xx - p / ((1.0 - p) * t) * eval.linearized(x, t);
                eps_fd = std::max(eps_fd, std::abs(uh_fd) + std::abs(w_fd));
                ++samples;
            }
        }
        const bool ok = min_resid >= -eps_fd;
        checks.push_back(json{{"check", "supersolution_residual_sign"},
                              {"lattice", "11x9 on [-5,5]x[1.05," + format_compact(t_hi) + "]"},
                              {"worst_margin", -min_resid},
                              {"slack", eps_fd},
                              {"samples", samples},
                              {"advisory", false},
                              {"pass", ok}});
        pass = pass && ok;
    }

    fs::create_directories(out_dir);
    write_solve_outputs(spec, result, out_dir);
    json report{{"p", spec.params.p},
                {"L", spec.sim.half_width},
                {"nx", spec.sim.nx},
                {"dt", spec.sim.dt},
                {"t_end", spec.sim.t_end},
                {"boundary_mode", to_string(spec.sim.boundary_mode)},
                {"slack", slack_info},
                {"spike_injected", inject_spike},
                {"checks", checks},
                {"pass", pass}};
    std::ofstream(fs::path(out_dir) / "report.json") << report.dump(2) << "\n";

    std::cout << (pass ? "verify: all checks passed\n" : "verify: CHECK FAILURES (see report)\n");
    return pass ? 0 : kExitCheckFailed;
}

int cmd_rate(const std::string& config_path, const std::string& out_dir, int workers) {
    SweepSpec sweep = parse_sweep_config(config_path);
    const double t_lo = sweep.fit_window_lo > 0.0 ? sweep.fit_window_lo : sweep.base.sim.t_end / 10.0;
    const double t_hi = sweep.fit_window_hi > 0.0 ? sweep.fit_window_hi : sweep.base.sim.t_end;

    struct Row {
        double p;
        RateFit fit;
        Regime regime;
        std::string error;
    };
    std::vector<Row> rows(sweep.p_values.size());

    auto run_one = [&](std::size_t idx) {
        const double p = sweep.p_values[idx];
        Row row;
        row.p = p;
        try {
            RunSpec spec = sweep.base;
            spec.params = ProblemParams(p);
            RunResult result = run(spec.datum, spec.params, spec.sim);
            write_solve_outputs(spec, result, fs::path(out_dir) / ("p_" + format_compact(p)));
            row.fit = fit_rate(result.deviation, t_lo, t_hi, p);
            row.regime = classify_regime(p).regime;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows[idx] = std::move(row);
    };

    fs::create_directories(out_dir);
    const int pool = std::max(1, workers);
    std::vector<std::future<void>> pending;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(pending.size()) >= pool) {
            pending.front().get();
            pending.erase(pending.begin());
        }
        pending.push_back(std::async(std::launch::async, run_one, i));
    }
    for (auto& f : pending) f.get();

    bool pass = true;
    CsvWriter csv((fs::path(out_dir) / "rate_table.csv").string(),
                  {"p", "predicted_slope", "fitted_slope", "r2", "regime"});
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            std::cerr << "p = " << format_compact(row.p) << ": " << row.error << "\n";
            pass = false;
            continue;
        }
        csv.raw_row({format_full(row.p), format_full(row.fit.predicted),
                     format_full(row.fit.slope), format_full(row.fit.r_squared),
                     to_string(row.regime)});
        if (std::abs(row.fit.slope - row.fit.predicted) > 0.05) pass = false;
        std::cout << "p = " << format_compact(row.p) << ": slope " << row.fit.slope
                  << " (predicted " << row.fit.predicted << "), "
                  << to_string(row.regime) << "\n";
    }
    return pass ? 0 : kExitCheckFailed;
}

int cmd_kernels(const std::string& config_path, double p_flag, const std::string& quantity,
                double xmin, double xmax, int nx, const std::string& times_text,
                const std::string& out_dir) {
    InitialDatum datum = make_tent_datum();
    double p = p_flag;
    if (!config_path.empty()) {
        RunSpec spec = parse_run_config(config_path);
        datum = spec.datum;
        if (!(p > 0.0)) p = spec.params.p;
    }
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("p: required (give --p or a config with p)");
    }
    if (nx < 1 || !(xmin <= xmax)) throw std::invalid_argument("grid: need xmin <= xmax and nx >= 1");

    std::vector<double> times;
    {
        std::istringstream in(times_text);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) continue;
            try {
                std::size_t used = 0;
                times.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw std::invalid_argument("times: not a number: '" + item + "'");
            }
        }
        if (times.empty()) throw std::invalid_argument("times: at least one time is required");
    }

    KernelEvaluator eval(datum, ProblemParams(p));
    using Fn = std::function<double(double, double)>;
    const std::map<std::string, std::pair<Fn, std::string>> table = {
        {"D", {[&](double x, double t) { return eval.heat_convolution(x, t); }, "t >= 0"}},
        {"Dx", {[&](double x, double t) { return eval.heat_convolution_dx(x, t); }, "t > 0"}},
        {"Delta", {[&](double x, double) { return eval.delta(x); }, "any"}},
        {"E", {[&](double x, double) { return eval.excess(x); }, "any"}},
        {"W", {[&](double x, double t) { return eval.linearized(x, t); }, "t >= 1"}},
        {"usub", {[&](double x, double t) { return eval.subsolution(x, t); }, "t >= 0"}},
        {"usup", {[&](double x, double t) { return eval.supersolution(x, t); }, "t >= 1"}},
        {"ubarplus", {[&](double x, double t) { return eval.envelope_upper(x, t); }, "t >= 0"}},
        {"cminus", {[&](double x, double t) { return eval.c_minus(x, t); }, "t > 0"}},
        {"cplus", {[&](double x, double t) { return eval.c_plus(x, t); }, "t > 1"}},
        {"tail", {[&](double x, double t) { return eval.tail_bound(x, t); }, "|x| >= 1, t > 0"}},
        {"uh", {[&](double, double t) { return homogeneous_state(t, p); }, "t >= 0"}},
    };
    auto it = table.find(quantity);
    if (it == table.end()) {
        std::string known;
        for (const auto& [k, v] : table) known += (known.empty() ? "" : ", ") + k;
        throw std::invalid_argument("quantity: unknown '" + quantity + "' (known: " + known + ")");
    }

    fs::create_directories(out_dir);
    CsvWriter csv((fs::path(out_dir) / ("kernels_" + quantity + ".csv")).string(),
                  {"x", "t", "value"});
    const double dx = nx > 1 ? (xmax - xmin) / (nx - 1) : 0.0;
    for (double t : times) {
        for (int i = 0; i < nx; ++i) {
            const double x = xmin + i * dx;
            csv.row({x, t, it->second.first(x, t)});
        }
    }
    return 0;
}

int cmd_exponents(int nmax, const std::string& out_dir) {
    if (nmax < 1) throw std::invalid_argument("nmax: must be positive");
    std::unique_ptr<CsvWriter> csv;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        csv = std::make_unique<CsvWriter>((fs::path(out_dir) / "exponents.csv").string(),
                                          std::vector<std::string>{"N", "p_minus", "p_plus",
                                                                   "product"});
    }
    std::printf("%4s %22s %22s %22s\n", "N", "p_minus", "p_plus", "product");
    for (int n = 1; n <= nmax; ++n) {
        const auto [lo, hi] = critical_exponents(n);
        std::printf("%4d %22s %22s %22s\n", n, format_full(lo).c_str(), format_full(hi).c_str(),
                    format_full(lo * hi).c_str());
        if (csv) csv->raw_row({std::to_string(n), format_full(lo), format_full(hi),
                               format_full(lo * hi)});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for the sublinear Fujita problem"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    int workers = 1;
    bool inject_spike = false;

    auto* solve = app.add_subcommand("solve", "Integrate the PDE and export frames/deviation");
    solve->add_option("--config", config_path, "run configuration file")->required();
    solve->add_option("--out", out_dir, "output directory");

    auto* verify = app.add_subcommand("verify", "Run the solver plus the verification suite");
    verify->add_option("--config", config_path, "run configuration file")->required();
    verify->add_option("--out", out_dir, "output directory");
    verify->add_flag("--inject-spike", inject_spike, "corrupt frames to exercise the failure path");

    auto* rate = app.add_subcommand("rate", "Sweep exponents and fit deviation rates");
    rate->add_option("--config", config_path, "sweep configuration file")->required();
    rate->add_option("--out", out_dir, "output directory");
    rate->add_option("--workers", workers, "concurrent runs");

    std::string quantity = "D", times_text = "1";
    double xmin = -5.0, xmax = 5.0, p_flag = 0.0;
    int grid_n = 101;
    auto* kernels = app.add_subcommand("kernels", "Tabulate closed-form quantities on a lattice");
    kernels->add_option("--config", config_path, "optional run config supplying p and the datum");
    kernels->add_option("--p", p_flag, "exponent (overrides config)");
    kernels->add_option("--quantity", quantity, "D Dx Delta E W usub usup ubarplus cminus cplus tail uh");
    kernels->add_option("--xmin", xmin, "grid left edge");
    kernels->add_option("--xmax", xmax, "grid right edge");
    kernels->add_option("--nx", grid_n, "grid points");
    kernels->add_option("--times", times_text, "comma-separated times");
    kernels->add_option("--out", out_dir, "output directory");

    int nmax = 10;
    std::string exp_out;
    auto* exponents = app.add_subcommand("exponents", "Print the critical-exponent table");
    exponents->add_option("--nmax", nmax, "largest dimension");
    exponents->add_option("--out", exp_out, "also write exponents.csv here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(config_path, out_dir);
        if (verify->parsed()) return cmd_verify(config_path, out_dir, inject_spike);
        if (rate->parsed()) return cmd_rate(config_path, out_dir, workers);
        if (kernels->parsed()) {
            return cmd_kernels(config_path, p_flag, quantity, xmin, xmax, grid_n, times_text,
                               out_dir);
        }
        if (exponents->parsed()) return cmd_exponents(nmax, exp_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
