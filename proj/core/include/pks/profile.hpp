#ifndef PKS_PROFILE_HPP
#define PKS_PROFILE_HPP

#include <vector>

// Stationary profile of the scale-invariant problem, computed by radial ODE
// shooting, and the sharp constants derived from it.

namespace pks {

struct StationaryProfile {
    int d = 3;
    std::vector<double> radii;  // integration nodes, radii[0] = 0
    std::vector<double> values; // V(r), nonincreasing, 0 at touchdown
    std::vector<double> mass;   // cumulative mass M_V(r)
    double support_radius = 0.0;
    double total_mass = 0.0;

    // Linear interpolation; zero / total mass outside the support.
    double value_at(double r) const;
    double mass_at(double r) const;
};

struct SharpConstants {
    int d = 3;
    double c_d = 0.0;
    double C_star = 0.0;
    double M_c_star = 0.0;
};

// Normalization factor in the Newtonian potential:
// Gamma(d/2+1) / (d (d-2) pi^{d/2}), equal to 1/((d-2) sigma).
double compute_cd(int d);

// Integrates (V, M_V) outward from V(0)=center_height until V touches zero.
// The touchdown radius and mass are located by linear interpolation on the
// last step. Throws if V fails to reach zero before r_bound.
StationaryProfile shoot_profile(int d, double center_height, double step,
                                double r_bound = 1e4);

// L1 rescaling to support radius 1; mass-preserving.
StationaryProfile normalize_unit_support(const StationaryProfile& p);

// Requires a profile normalized to unit support.
SharpConstants sharp_constants(const StationaryProfile& p);

// (2 a_min / ((m-1) C_star c_d))^{d/2} = a_min^{d/2} M_c_star.
double critical_mass(double a_min, const SharpConstants& k);

} // namespace pks

#endif
