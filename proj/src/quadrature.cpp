#include "fujita/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fujita {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw std::invalid_argument("max_subdivisions must be positive");
    }
    if (!(infinite_cutoff_sigma >= 8.0)) {
        throw std::invalid_argument("infinite_cutoff_sigma must be at least 8");
    }
}

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;

    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * (f1 + f2);
        }
    }
    kronrod *= h;
    gauss *= h;
    return {kronrod, std::abs(kronrod - gauss)};
}

struct Panel {
    double a, b, value, error;
};

}  // namespace

double integrate_adaptive(const Integrand& f, double a, double b,
                          const QuadratureConfig& cfg,
                          std::span<const double> breakpoints) {
    cfg.validate();
    if (a == b) return 0.0;
    const double sign = (a < b) ? 1.0 : -1.0;
    if (a > b) std::swap(a, b);

    std::vector<double> edges = {a, b};
    for (double s : breakpoints) {
        if (s > a && s < b) edges.push_back(s);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // Seed with at least eight panels so isolated features inside a wide
    // interval cannot slip between the nodes of a single rule application.
    const double max_seed = (b - a) / 8.0;
    std::vector<double> seeded;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        seeded.push_back(edges[i]);
        const double w = edges[i + 1] - edges[i];
        const auto extra = static_cast<std::size_t>(std::ceil(w / max_seed)) - 1;
        for (std::size_t k = 1; k <= extra; ++k) {
            seeded.push_back(edges[i] + w * static_cast<double>(k) / static_cast<double>(extra + 1));
        }
    }
    seeded.push_back(edges.back());
    edges = std::move(seeded);

    std::vector<Panel> panels;
    panels.reserve(static_cast<std::size_t>(cfg.max_subdivisions));
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto [v, e] = gk15(f, edges[i], edges[i + 1]);
        panels.push_back({edges[i], edges[i + 1], v, e});
    }

    for (int pass = 0; pass < cfg.max_subdivisions; ++pass) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
            return sign * total;
        }
        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        auto [v1, e1] = gk15(f, p.a, mid);
        auto [v2, e2] = gk15(f, mid, p.b);
        panels[worst] = {p.a, mid, v1, e1};
        panels.push_back({mid, p.b, v2, e2});
    }
    throw std::runtime_error("integrate_adaptive: failed to converge within max_subdivisions");
}

double integrate_composite(const Integrand& f, double a, double b, double max_panel) {
    if (!(max_panel > 0.0)) throw std::invalid_argument("max_panel must be positive");
    if (a == b) return 0.0;
    const double sign = (a < b) ? 1.0 : -1.0;
    if (a > b) std::swap(a, b);

    const auto n = static_cast<std::size_t>(std::ceil((b - a) / max_panel));
    const double h = (b - a) / static_cast<double>(n);

    // Kahan summation; panel values can span many orders of magnitude.
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pa = a + static_cast<double>(i) * h;
        const double pb = (i + 1 == n) ? b : pa + h;
        const double y = gk15(f, pa, pb).value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sign * sum;
}

}  // namespace fujita
