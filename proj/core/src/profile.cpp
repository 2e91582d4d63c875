#include "pks/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pks/radial.hpp"

namespace pks {

double compute_cd(int d) {
    if (d < 3) throw std::invalid_argument("compute_cd: d must be >= 3");
    return std::tgamma(0.5 * d + 1.0) /
           (d * (d - 2) * std::pow(std::numbers::pi, 0.5 * d));
}

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

} // namespace

double StationaryProfile::value_at(double r) const {
    if (r >= support_radius) return 0.0;
    return interp(radii, values, r);
}

double StationaryProfile::mass_at(double r) const {
    if (r >= support_radius) return total_mass;
    if (r <= 0.0) return 0.0;
    return interp(radii, mass, r);
}

StationaryProfile shoot_profile(int d, double center_height, double step, double r_bound) {
    if (d < 3) throw std::invalid_argument("shoot_profile: d must be >= 3");
    if (center_height <= 0.0) throw std::invalid_argument("shoot_profile: center_height must be positive");
    if (step <= 0.0) throw std::invalid_argument("shoot_profile: step must be positive");

    const double m = 2.0 - 2.0 / d;
    const double sig = sphere_surface_area(d);

    // First-order system obtained from Delta V^m = div(V grad N*V) by one
    // radial integration: (V^m)' = -V M_V / (sigma r^{d-1}), i.e.
    //   V'  = -V^{2-m} M_V / (m sigma r^{d-1}),   M_V' = sigma r^{d-1} V.
    // At r=0 the drift ratio M_V/(sigma r^{d-1}) has the removable limit
    // V(0) r / d; both derivatives vanish there.
    auto rhs = [&](double r, double V, double M, double& dV, double& dM) {
        if (r <= 0.0 || V <= 0.0) {
            dV = 0.0;
            dM = 0.0;
            return;
        }
        const double area = sig * std::pow(r, d - 1);
        dV = -std::pow(V, 2.0 - m) * M / (m * area);
        dM = area * V;
    };

    StationaryProfile p;
    p.d = d;
    p.radii.push_back(0.0);
    p.values.push_back(center_height);
    p.mass.push_back(0.0);

    double r = 0.0, V = center_height, M = 0.0;
    double k1v, k1m, k2v, k2m, k3v, k3m, k4v, k4m;
    while (r < r_bound) {
        rhs(r, V, M, k1v, k1m);
        rhs(r + 0.5 * step, V + 0.5 * step * k1v, M + 0.5 * step * k1m, k2v, k2m);
        rhs(r + 0.5 * step, V + 0.5 * step * k2v, M + 0.5 * step * k2m, k3v, k3m);
        rhs(r + step, V + step * k3v, M + step * k3m, k4v, k4m);
        const double Vn = V + step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        const double Mn = M + step / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
        if (Vn <= 0.0) {
            const double frac = V / (V - Vn);
            p.support_radius = r + frac * step;
            p.total_mass = M + frac * (Mn - M);
            p.radii.push_back(p.support_radius);
            p.values.push_back(0.0);
            p.mass.push_back(p.total_mass);
            if (p.radii.size() < 1000)
                throw std::runtime_error("shoot_profile: step too coarse (fewer than 1e3 steps to touchdown)");
            return p;
        }
        r += step;
        V = Vn;
        M = Mn;
        p.radii.push_back(r);
        p.values.push_back(V);
        p.mass.push_back(M);
    }
    throw std::runtime_error("shoot_profile: V failed to reach 0 before r_bound (bad step size?)");
}

StationaryProfile normalize_unit_support(const StationaryProfile& p) {
    if (p.support_radius <= 0.0) throw std::domain_error("normalize_unit_support: zero support radius");
    const double lam = p.support_radius;
    const double scale = std::pow(lam, p.d);
    StationaryProfile q;
    q.d = p.d;
    q.support_radius = 1.0;
    q.total_mass = p.total_mass;
    q.radii.reserve(p.radii.size());
    q.values.reserve(p.values.size());
    q.mass = p.mass;
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
        q.radii.push_back(p.radii[i] / lam);
        q.values.push_back(scale * p.values[i]);
    }
    q.radii.back() = 1.0;
    return q;
}

SharpConstants sharp_constants(const StationaryProfile& p) {
    if (std::abs(p.support_radius - 1.0) > 1e-12)
        throw std::invalid_argument("sharp_constants: profile must be normalized to unit support");
    SharpConstants k;
    k.d = p.d;
    k.c_d = compute_cd(p.d);
    k.M_c_star = p.total_mass;
    const double m = 2.0 - 2.0 / p.d;
    k.C_star = 2.0 / ((m - 1.0) * k.c_d * std::pow(k.M_c_star, 2.0 / p.d));
    return k;
}

double critical_mass(double a_min, const SharpConstants& k) {
    if (a_min <= 0.0) throw std::invalid_argument("critical_mass: a_min must be positive");
    return std::pow(a_min, 0.5 * k.d) * k.M_c_star;
}

} // namespace pks
