#include "pks/barrier.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace pks {

Barrier Barrier::make(const StationaryProfile& normalized, double R0,
                      double a_at_R0, double mu) {
    if (std::abs(normalized.support_radius - 1.0) > 1e-12)
        throw std::invalid_argument("Barrier: profile must be normalized to unit support");
    if (R0 <= 0.0) throw std::invalid_argument("Barrier: R0 must be positive");
    if (a_at_R0 <= 0.0) throw std::invalid_argument("Barrier: a(R0) must be positive");
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("Barrier: mu must be in (0,1)");
    Barrier b;
    b.d = normalized.d;
    b.R0 = R0;
    b.a_at_R0 = a_at_R0;
    b.mu = mu;
    b.M_c = std::pow(a_at_R0, 0.5 * b.d) * normalized.total_mass;
    b.profile = normalized;
    return b;
}

double Barrier::collapse_time() const {
    if (mu >= 1.0) throw std::domain_error("Barrier: no collapse for mu >= 1");
    const double sig = sphere_surface_area(d);
    return std::pow(R0, d) * sig /
           (d * a_at_R0 * M_c * (std::pow(mu, -2.0 / d) - 1.0));
}

double Barrier::radius_at(double t) const {
    if (t < 0.0 || t > collapse_time())
        throw std::domain_error("Barrier: t outside [0, T_star]");
    const double sig = sphere_surface_area(d);
    const double arg = std::pow(R0, d) -
                       d * M_c * (std::pow(mu, -2.0 / d) - 1.0) * t / (a_at_R0 * sig);
    return std::pow(std::max(arg, 0.0), 1.0 / d);
}

double Barrier::blow_up_time_bound() const {
    return std::pow(mu, 2.0 / d - 1.0) * collapse_time();
}

double Barrier::mass_at(double t, double r) const {
    const double R = radius_at(t);
    const double scale = std::pow(a_at_R0, 0.5 * d);
    const double Mbar = scale * profile.mass_at(r / R);
    // Elliptic lower bound for the rescaled extremal's mass function.
    assert(r <= 0.0 || r > R ||
           Mbar >= M_c * std::pow(r / R, d) * (1.0 - 1e-9) - 1e-12 * M_c);
    return Mbar;
}

double Barrier::density_at(double t, double r) const {
    const double R = radius_at(t);
    return std::pow(a_at_R0, 0.5 * d) / std::pow(R, d) * profile.value_at(r / R);
}

OrderingCheck check_initial_ordering(const MassFunction& u0_mass, const Barrier& b,
                                     const RadialGrid& g) {
    if (g.r_max < b.R0)
        throw std::invalid_argument("check_initial_ordering: grid does not cover R0");
    OrderingCheck res;
    res.ok = true;
    bool first = true;
    for (int i = 0; i <= g.n_cells; ++i) {
        const double r = g.faces[i];
        if (r > b.R0) break;
        const double margin = b.mu * u0_mass.values[i] - b.mass_at(0.0, r);
        if (first || margin < res.worst_margin) {
            res.worst_margin = margin;
            res.worst_radius = r;
            first = false;
        }
    }
    res.ok = res.worst_margin >= -1e-12 * b.M_c;
    return res;
}

double comparison_gap(const MassFunction& M, const Barrier& b, double t,
                      const RadialGrid& g) {
    if (t >= b.collapse_time())
        throw std::domain_error("comparison_gap: t >= T_star");
    const double R = b.radius_at(t);
    double gap = M.total(); // upper bound; shrunk below
    for (int i = 1; i <= g.n_cells; ++i) {
        const double r = g.faces[i];
        if (r > R) break;
        gap = std::min(gap, M.values[i] - b.mass_at(t, r));
    }
    return gap;
}

} // namespace pks
