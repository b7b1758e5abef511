#include "fujita/run_config.hpp"

#include "fujita/solver.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fujita {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

class KeyValueFile {
public:
    explicit KeyValueFile(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("config line is not key = value: '" + line + "'");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw std::invalid_argument("config line has empty key");
            if (!entries_.emplace(key, value).second) {
                throw std::invalid_argument(key + ": duplicate key");
            }
        }
    }

    std::optional<std::string> take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        consumed_.insert(key);
        return it->second;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : entries_) {
            if (!consumed_.count(key)) {
                throw std::invalid_argument(key + ": unknown configuration key");
            }
        }
    }

private:
    std::map<std::string, std::string> entries_;
    std::set<std::string> consumed_;
};

double parse_number(const std::string& key, const std::string& text) {
    // Accept plain decimals and simple fractions like 1/3.
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const double num = parse_number(key, trim(text.substr(0, slash)));
        const double den = parse_number(key, trim(text.substr(slash + 1)));
        if (den == 0.0) throw std::invalid_argument(key + ": division by zero");
        return num / den;
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw std::invalid_argument(key + ": not a number: '" + text + "'");
    }
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw std::invalid_argument(key + ": empty list element");
        out.push_back(parse_number(key, item));
    }
    if (out.empty()) throw std::invalid_argument(key + ": empty list");
    return out;
}

InitialDatum parse_datum(KeyValueFile& kv) {
    const auto preset = kv.take("datum");
    const auto knots = kv.take("datum_knots");
    const auto values = kv.take("datum_values");
    if (knots.has_value() != values.has_value()) {
        throw std::invalid_argument("datum_knots/datum_values: both keys are required for inline data");
    }
    if (knots) {
        if (preset) throw std::invalid_argument("datum: give either a preset or inline knots, not both");
        try {
            return InitialDatum(parse_list("datum_knots", *knots), parse_list("datum_values", *values));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string("datum_knots/datum_values: ") + e.what());
        }
    }
    const std::string name = preset.value_or("tent");
    if (name == "tent") return make_tent_datum();
    throw std::invalid_argument("datum: unknown preset '" + name + "'");
}

RunSpec build_run_spec(KeyValueFile& kv, std::optional<double> p_override) {
    InitialDatum datum = parse_datum(kv);

    double p;
    if (p_override) {
        p = *p_override;
    } else {
        const auto p_text = kv.take("p");
        if (!p_text) throw std::invalid_argument("p: missing");
        p = parse_number("p", *p_text);
    }
    ProblemParams params = [&] {
        try {
            return ProblemParams(p);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string("p: ") + e.what());
        }
    }();

    SimConfig sim;
    const auto t_end = kv.take("t_end");
    if (!t_end) throw std::invalid_argument("t_end: missing");
    sim.t_end = parse_number("t_end", *t_end);
    if (!(sim.t_end > 0.0)) throw std::invalid_argument("t_end: must be positive");

    const auto dt = kv.take("dt");
    if (!dt) throw std::invalid_argument("dt: missing");
    sim.dt = parse_number("dt", *dt);

    if (const auto v = kv.take("domain_tol")) sim.domain_tol = parse_number("domain_tol", *v);

    const auto l_text = kv.take("L");
    if (!l_text || *l_text == "auto") {
        sim.half_width = choose_domain(datum, sim.t_end, sim.domain_tol);
    } else {
        sim.half_width = parse_number("L", *l_text);
    }

    const auto nx_text = kv.take("nx");
    const auto dx_text = kv.take("dx");
    if (nx_text && dx_text) {
        throw std::invalid_argument("nx/dx: give one grid control, not both");
    }
    if (nx_text) {
        const double nx = parse_number("nx", *nx_text);
        if (nx != std::floor(nx)) throw std::invalid_argument("nx: must be an integer");
        sim.nx = static_cast<int>(nx);
    } else if (dx_text) {
        const double dx = parse_number("dx", *dx_text);
        if (!(dx > 0.0)) throw std::invalid_argument("dx: must be positive");
        sim.nx = 2 * static_cast<int>(std::ceil(sim.half_width / dx)) + 1;
    } else {
        throw std::invalid_argument("nx: missing (give nx or dx)");
    }

    if (const auto v = kv.take("output_times")) {
        sim.output_times = parse_list("output_times", *v);
    } else {
        sim.output_times = {sim.t_end};
    }

    if (const auto v = kv.take("boundary_mode")) {
        if (*v == "homogeneous_state") {
            sim.boundary_mode = BoundaryMode::homogeneous_state;
        } else if (*v == "subsolution_trace") {
            sim.boundary_mode = BoundaryMode::subsolution_trace;
        } else {
            throw std::invalid_argument("boundary_mode: unknown mode '" + *v + "'");
        }
    }

    RunSpec spec{std::move(datum), params, std::move(sim)};
    if (const auto v = kv.take("slack_rel")) {
        if (*v == "calibrate") {
            spec.calibrate_slack = true;
        } else {
            spec.slack_rel = parse_number("slack_rel", *v);
            if (!(spec.slack_rel > 0.0)) throw std::invalid_argument("slack_rel: must be positive");
        }
    }

    try {
        spec.sim.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(e.what());
    }
    return spec;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

RunSpec parse_run_config_text(const std::string& text) {
    KeyValueFile kv(text);
    RunSpec spec = build_run_spec(kv, std::nullopt);
    kv.reject_unknown();
    return spec;
}

RunSpec parse_run_config(const std::string& path) { return parse_run_config_text(slurp(path)); }

SweepSpec parse_sweep_config_text(const std::string& text) {
    KeyValueFile kv(text);

    const auto p_values = kv.take("p_values");
    if (!p_values) throw std::invalid_argument("p_values: missing");
    std::vector<double> ps = parse_list("p_values", *p_values);
    std::set<double> seen;
    for (double p : ps) {
        if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("p_values: each value must lie in (0,1)");
        if (!seen.insert(p).second) throw std::invalid_argument("p_values: values must be distinct");
    }

    double window_lo = 0.0, window_hi = 0.0;
    if (const auto v = kv.take("fit_window")) {
        const auto lohi = parse_list("fit_window", *v);
        if (lohi.size() != 2 || !(lohi[0] < lohi[1])) {
            throw std::invalid_argument("fit_window: expected lo,hi with lo < hi");
        }
        window_lo = lohi[0];
        window_hi = lohi[1];
    }

    RunSpec base = build_run_spec(kv, ps.front());
    kv.reject_unknown();
    return SweepSpec{std::move(ps), std::move(base), window_lo, window_hi};
}

SweepSpec parse_sweep_config(const std::string& path) { return parse_sweep_config_text(slurp(path)); }

}  // namespace fujita
