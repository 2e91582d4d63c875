#include "pks/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace pks {

FreeEnergy free_energy(const MassFunction& M, const ModelParams& p,
                       const Coefficients& coeffs, const RadialGrid& g) {
    p.validate();
    const double m = p.m();
    const RadialDensity u = density_from_mass(M, g);
    FreeEnergy f;
    for (int j = 0; j < g.n_cells; ++j)
        f.entropy += std::pow(u.values[j], m) * g.shell_vols[j];
    f.entropy /= (m - 1.0);
    f.potential = potential_energy(M, coeffs, g);
    f.total = f.entropy - f.potential;
    return f;
}

double hls_ratio(const RadialDensity& u, const RadialGrid& g, const SharpConstants& k) {
    const MassFunction M = mass_from_density(u, g);
    const double mtot = M.total();
    if (mtot <= 0.0) throw std::domain_error("hls_ratio: zero density");
    const double m = 2.0 - 2.0 / g.d;
    const double sig = g.sigma();

    double integral = 0.0;
    double prev = 0.0;
    for (int i = 1; i <= g.n_cells; ++i) {
        const double r = g.faces[i];
        const double cur = M.values[i] * M.values[i] / (sig * std::pow(r, g.d - 1));
        integral += 0.5 * (prev + cur) * (g.faces[i] - g.faces[i - 1]);
        prev = cur;
    }
    // Tail r > r_max where M is constant: int = M_tot^2 c_d / r_max^{d-2}.
    integral += mtot * mtot * k.c_d / std::pow(g.r_max, g.d - 2);
    const double D = integral / k.c_d;

    double lm_m = 0.0;
    for (int j = 0; j < g.n_cells; ++j)
        lm_m += std::pow(u.values[j], m) * g.shell_vols[j];
    return D / (std::pow(mtot, 2.0 - m) * lm_m);
}

ConcentrationReading concentration_monitor(const MassFunction& M, const Coefficients& coeffs,
                                           const SharpConstants& k, double r_probe,
                                           const RadialGrid& g) {
    if (r_probe <= 0.0 || r_probe > g.r_max)
        throw std::invalid_argument("concentration_monitor: r_probe outside grid");
    ConcentrationReading c;
    c.local_mass = M.at(r_probe, g);
    c.threshold = std::pow(coeffs.a.eval(0.0), 0.5 * g.d) * k.M_c_star;
    c.flag = c.local_mass >= 0.9 * c.threshold;
    return c;
}

namespace {

// int_0^1 (delta + r)^{-beta} r^{d-1} dr in closed form via
// r^{d-1} = ((delta + r) - delta)^{d-1} and termwise power integrals.
double ball_integral(double delta, double beta, int d) {
    double total = 0.0;
    double binom = 1.0;
    for (int kk = 0; kk <= d - 1; ++kk) {
        if (kk > 0) binom = binom * (d - kk) / kk;
        const double sign_delta = std::pow(-delta, d - 1 - kk);
        const double e = kk - beta + 1.0;
        double term;
        if (std::abs(e) < 1e-12) {
            term = std::log((1.0 + delta) / delta);
        } else {
            term = (std::pow(1.0 + delta, e) - std::pow(delta, e)) / e;
        }
        total += binom * sign_delta * term;
    }
    return total;
}

} // namespace

HolderNorms reverse_holder_family(double delta, double alpha, int d) {
    if (d < 3) throw std::domain_error("reverse_holder_family: d must be >= 3");
    const double m = 2.0 - 2.0 / d;
    const double lo = d / m, hi = 0.5 * (d + 2);
    if (!(alpha > lo && alpha < hi))
        throw std::domain_error("reverse_holder_family: alpha outside (d/m, (d+2)/2)");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::domain_error("reverse_holder_family: delta must be in (0,1]");
    const double sig = sphere_surface_area(d);
    const double p_mid = 2.0 * d / (d + 2.0);
    HolderNorms n;
    n.l1 = sig * ball_integral(delta, alpha, d);
    n.l_2d_over_d_plus_2 = std::pow(sig * ball_integral(delta, alpha * p_mid, d), 1.0 / p_mid);
    n.lm = std::pow(sig * ball_integral(delta, alpha * m, d), 1.0 / m);
    return n;
}

} // namespace pks
