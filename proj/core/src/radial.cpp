#include "pks/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pks {

double sphere_surface_area(int d) {
    if (d < 3) throw std::invalid_argument("sphere_surface_area: d must be >= 3");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

void ModelParams::validate() const {
    if (d < 3) throw std::invalid_argument("ModelParams: d must be >= 3");
    if (total_mass < 0.0) throw std::invalid_argument("ModelParams: total_mass must be nonnegative");
    if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("ModelParams: mu must be in (0,1]");
}

static RadialGrid finish_grid(int d, double r_max, std::vector<double> faces) {
    RadialGrid g;
    g.d = d;
    g.r_max = r_max;
    g.n_cells = static_cast<int>(faces.size()) - 1;
    g.faces = std::move(faces);
    const double sig = g.sigma();
    g.centers.resize(g.n_cells);
    g.shell_vols.resize(g.n_cells);
    for (int j = 0; j < g.n_cells; ++j) {
        g.centers[j] = 0.5 * (g.faces[j] + g.faces[j + 1]);
        g.shell_vols[j] = sig / d * (std::pow(g.faces[j + 1], d) - std::pow(g.faces[j], d));
        if (g.shell_vols[j] <= 0.0) throw std::invalid_argument("RadialGrid: nonpositive shell volume");
    }
    return g;
}

RadialGrid RadialGrid::uniform(int d, double r_max, int n_cells) {
    if (d < 3) throw std::invalid_argument("RadialGrid: d must be >= 3");
    if (r_max <= 0.0 || n_cells < 1) throw std::invalid_argument("RadialGrid: bad extent");
    std::vector<double> faces(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i) faces[i] = r_max * i / n_cells;
    faces.back() = r_max;
    return finish_grid(d, r_max, std::move(faces));
}

RadialGrid RadialGrid::graded(int d, double r_max, int n_cells, double grading) {
    if (grading < 1.0) throw std::invalid_argument("RadialGrid: grading must be >= 1");
    if (grading == 1.0 || n_cells == 1) return uniform(d, r_max, n_cells);
    if (r_max <= 0.0 || n_cells < 1) throw std::invalid_argument("RadialGrid: bad extent");
    // Cell widths grow geometrically from the origin by the factor q, with
    // q^{n-1} = grading.
    const double q = std::pow(grading, 1.0 / (n_cells - 1));
    const double w0 = r_max * (q - 1.0) / (std::pow(q, n_cells) - 1.0);
    std::vector<double> faces(n_cells + 1);
    faces[0] = 0.0;
    double w = w0;
    for (int i = 1; i <= n_cells; ++i) {
        faces[i] = faces[i - 1] + w;
        w *= q;
    }
    faces.back() = r_max;
    return finish_grid(d, r_max, std::move(faces));
}

double RadialGrid::ball_volume() const {
    return sigma() / d * std::pow(r_max, d);
}

double RadialGrid::min_spacing() const {
    double h = r_max;
    for (int i = 0; i < n_cells; ++i) h = std::min(h, faces[i + 1] - faces[i]);
    return h;
}

CoefficientSpec CoefficientSpec::constant(double v) {
    CoefficientSpec s;
    s.kind = CoeffKind::Constant;
    s.value = v;
    return s;
}

CoefficientSpec CoefficientSpec::from_table(std::vector<std::pair<double, double>> t) {
    if (t.empty()) throw std::invalid_argument("CoefficientSpec: empty table");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i].first <= t[i - 1].first)
            throw std::invalid_argument("CoefficientSpec: table radii must be strictly increasing");
    CoefficientSpec s;
    s.kind = CoeffKind::Table;
    s.table = std::move(t);
    return s;
}

CoefficientSpec CoefficientSpec::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("CoefficientSpec: empty polynomial");
    CoefficientSpec s;
    s.kind = CoeffKind::Polynomial;
    s.poly = std::move(coeffs);
    return s;
}

double CoefficientSpec::eval(double r) const {
    switch (kind) {
    case CoeffKind::Constant:
        return value;
    case CoeffKind::Table: {
        // Clamped, not extrapolated, outside the table range.
        if (r <= table.front().first) return table.front().second;
        if (r >= table.back().first) return table.back().second;
        auto it = std::upper_bound(table.begin(), table.end(), r,
                                   [](double x, const auto& p) { return x < p.first; });
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double t = (r - lo.first) / (hi.first - lo.first);
        return lo.second + t * (hi.second - lo.second);
    }
    case CoeffKind::Polynomial: {
        double acc = 0.0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * r + *it;
        return acc;
    }
    }
    return 0.0;
}

bool CoefficientSpec::is_zero() const {
    switch (kind) {
    case CoeffKind::Constant:
        return value == 0.0;
    case CoeffKind::Table:
        return std::all_of(table.begin(), table.end(), [](const auto& p) { return p.second == 0.0; });
    case CoeffKind::Polynomial:
        return std::all_of(poly.begin(), poly.end(), [](double c) { return c == 0.0; });
    }
    return false;
}

double Coefficients::a_min(const RadialGrid& g) const {
    double mn = a.eval(0.0);
    for (double r : g.faces) mn = std::min(mn, a.eval(r));
    for (double r : g.centers) mn = std::min(mn, a.eval(r));
    return mn;
}

bool Coefficients::gamma_is_zero(const RadialGrid& g) const {
    if (gamma.is_zero()) return true;
    for (double r : g.centers)
        if (gamma.eval(r) != 0.0) return false;
    return true;
}

void Coefficients::validate(const RadialGrid& g) const {
    if (a_min(g) <= 0.0) throw std::invalid_argument("Coefficients: a must be strictly positive");
    for (double r : g.centers)
        if (gamma.eval(r) < 0.0) throw std::invalid_argument("Coefficients: gamma must be nonnegative");
    if (monotone_near_origin) {
        double prev = a.eval(0.0);
        for (double r : g.faces) {
            if (r > delta0) break;
            const double v = a.eval(r);
            if (v < prev - 1e-12 * std::abs(prev))
                throw std::invalid_argument("Coefficients: a not nondecreasing on [0, delta0]");
            prev = v;
        }
    }
}

void MassFunction::validate() const {
    if (values.empty()) throw std::invalid_argument("MassFunction: empty");
    if (values.front() != 0.0) throw std::invalid_argument("MassFunction: M(0) must be 0");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1])
            throw std::invalid_argument("MassFunction: must be nondecreasing");
}

double MassFunction::at(double r, const RadialGrid& g) const {
    if (r <= 0.0) return 0.0;
    if (r >= g.r_max) return values.back();
    auto it = std::upper_bound(g.faces.begin(), g.faces.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - g.faces.begin());
    const double r0 = g.faces[i - 1], r1 = g.faces[i];
    const double t = (r - r0) / (r1 - r0);
    return values[i - 1] + t * (values[i] - values[i - 1]);
}

double RadialDensity::peak() const {
    double p = 0.0;
    for (double v : values) p = std::max(p, v);
    return p;
}

void RadialDensity::validate() const {
    for (double v : values)
        if (v < 0.0) throw std::invalid_argument("RadialDensity: negative entry");
}

MassFunction mass_from_density(const RadialDensity& u, const RadialGrid& g) {
    if (static_cast<int>(u.values.size()) != g.n_cells)
        throw std::invalid_argument("mass_from_density: size mismatch");
    u.validate();
    MassFunction M;
    M.values.resize(g.n_cells + 1);
    M.values[0] = 0.0;
    for (int j = 0; j < g.n_cells; ++j)
        M.values[j + 1] = M.values[j] + u.values[j] * g.shell_vols[j];
    return M;
}

RadialDensity density_from_mass(const MassFunction& M, const RadialGrid& g) {
    if (static_cast<int>(M.values.size()) != g.n_cells + 1)
        throw std::invalid_argument("density_from_mass: size mismatch");
    M.validate();
    RadialDensity u;
    u.values.resize(g.n_cells);
    for (int j = 0; j < g.n_cells; ++j)
        u.values[j] = (M.values[j + 1] - M.values[j]) / g.shell_vols[j];
    return u;
}

} // namespace pks
