#include "pks/chemo.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "pks/profile.hpp"

namespace pks {

ChemoField solve_gamma_zero(const MassFunction& M, const Coefficients& coeffs,
                            const RadialGrid& g, double source_mass_scale) {
    if (!coeffs.gamma_is_zero(g))
        throw std::invalid_argument(
            "solve_gamma_zero: gamma is not identically zero; use solve_gamma_positive");
    M.validate();
    const int n = g.n_cells;
    const double sig = g.sigma();
    const double s = source_mass_scale;

    ChemoField f;
    f.source_mass_scale = s;
    f.dc_dr.assign(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        const double r = g.faces[i];
        f.dc_dr[i] = -s * M.values[i] / (sig * std::pow(r, g.d - 1) * coeffs.a.eval(r));
    }

    // Far-field closure: a constant beyond r_max gives the Newtonian decay
    // c(r_max) = s M_tot c_d / (a(r_max) r_max^{d-2}).
    const double c_far = s * M.total() * compute_cd(g.d) /
                         (coeffs.a.eval(g.r_max) * std::pow(g.r_max, g.d - 2));
    std::vector<double> c_face(n + 1);
    c_face[n] = c_far;
    for (int i = n - 1; i >= 0; --i) {
        const double dr = g.faces[i + 1] - g.faces[i];
        c_face[i] = c_face[i + 1] - 0.5 * (f.dc_dr[i] + f.dc_dr[i + 1]) * dr;
    }
    f.c.resize(n);
    for (int j = 0; j < n; ++j) f.c[j] = 0.5 * (c_face[j] + c_face[j + 1]);
    return f;
}

ChemoField solve_gamma_positive(const RadialDensity& u, const Coefficients& coeffs,
                                const RadialGrid& g, double source_mass_scale) {
    u.validate();
    const int n = g.n_cells;
    const double sig = g.sigma();
    const double s = source_mass_scale;

    // Conservative flux balance per cell with face conductances
    // A_i = sigma r_i^{d-1} a(r_i); Neumann at r=0, Dirichlet 0 at r_max.
    std::vector<double> A(n + 1);
    for (int i = 0; i <= n; ++i)
        A[i] = sig * std::pow(g.faces[i], g.d - 1) * coeffs.a.eval(g.faces[i]);

    std::vector<double> low(n, 0.0), diag(n, 0.0), up(n, 0.0), rhs(n, 0.0);
    const double h_out = g.r_max - g.centers[n - 1];
    for (int j = 0; j < n; ++j) {
        const double gam = coeffs.gamma.eval(g.centers[j]);
        if (gam < 0.0) throw std::invalid_argument("solve_gamma_positive: gamma must be nonnegative");
        diag[j] = gam * g.shell_vols[j];
        rhs[j] = s * u.values[j] * g.shell_vols[j];
        if (j > 0) {
            const double h = g.centers[j] - g.centers[j - 1];
            low[j] = -A[j] / h;
            diag[j] += A[j] / h;
        }
        if (j < n - 1) {
            const double h = g.centers[j + 1] - g.centers[j];
            up[j] = -A[j + 1] / h;
            diag[j] += A[j + 1] / h;
        } else {
            diag[j] += A[n] / h_out;
        }
    }

    // Thomas algorithm; the system is an irreducible M-matrix for a > 0,
    // gamma >= 0 with the Dirichlet closure.
    std::vector<double> cp(n, 0.0), dp(n, 0.0);
    double denom = diag[0];
    assert(denom != 0.0);
    cp[0] = up[0] / denom;
    dp[0] = rhs[0] / denom;
    for (int j = 1; j < n; ++j) {
        denom = diag[j] - low[j] * cp[j - 1];
        assert(denom != 0.0);
        cp[j] = up[j] / denom;
        dp[j] = (rhs[j] - low[j] * dp[j - 1]) / denom;
    }
    ChemoField f;
    f.source_mass_scale = s;
    f.c.assign(n, 0.0);
    f.c[n - 1] = dp[n - 1];
    for (int j = n - 2; j >= 0; --j) f.c[j] = dp[j] - cp[j] * f.c[j + 1];

    f.dc_dr.assign(n + 1, 0.0);
    for (int i = 1; i < n; ++i)
        f.dc_dr[i] = (f.c[i] - f.c[i - 1]) / (g.centers[i] - g.centers[i - 1]);
    f.dc_dr[n] = -f.c[n - 1] / h_out;
    return f;
}

double potential_energy(const MassFunction& M, const Coefficients& coeffs,
                        const RadialGrid& g, double source_mass_scale) {
    const int n = g.n_cells;
    const double sig = g.sigma();
    const double s = source_mass_scale;
    if (coeffs.gamma_is_zero(g)) {
        double integral = 0.0;
        double prev = 0.0; // integrand vanishes like r^{d+1} at the origin
        for (int i = 1; i <= n; ++i) {
            const double r = g.faces[i];
            const double cur = M.values[i] * M.values[i] /
                               (sig * std::pow(r, g.d - 1) * coeffs.a.eval(r));
            integral += 0.5 * (prev + cur) * (g.faces[i] - g.faces[i - 1]);
            prev = cur;
        }
        const double c_far = s * M.total() * compute_cd(g.d) /
                             (coeffs.a.eval(g.r_max) * std::pow(g.r_max, g.d - 2));
        return 0.5 * s * integral + 0.5 * c_far * M.total();
    }
    const RadialDensity u = density_from_mass(M, g);
    const ChemoField f = solve_gamma_positive(u, coeffs, g, s);
    return potential_energy_direct(u, f, g);
}

double potential_energy_direct(const RadialDensity& u, const ChemoField& field,
                               const RadialGrid& g) {
    double pe = 0.0;
    for (int j = 0; j < g.n_cells; ++j)
        pe += u.values[j] * field.c[j] * g.shell_vols[j];
    return 0.5 * pe;
}

} // namespace pks
