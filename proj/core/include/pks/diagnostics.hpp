#ifndef PKS_DIAGNOSTICS_HPP
#define PKS_DIAGNOSTICS_HPP

#include <optional>

#include "pks/chemo.hpp"
#include "pks/profile.hpp"
#include "pks/radial.hpp"

// Every scalar the theory quantifies: free energy, HLS ratio, the
// concentration monitor and the reverse-Hoelder norm family.

namespace pks {

struct DiagnosticsRow {
    double t = 0.0;
    double peak_density = 0.0;
    double entropy = 0.0;
    double potential_energy = 0.0;
    double free_energy = 0.0; // entropy - potential_energy, by construction
    double total_mass = 0.0;
    std::optional<double> comparison_gap;
    double local_mass_origin = 0.0;
};

struct FreeEnergy {
    double entropy = 0.0;
    double potential = 0.0;
    double total = 0.0; // entropy - potential
};

// F(u) = 1/(m-1) int u^m - 1/2 int u c.
FreeEnergy free_energy(const MassFunction& M, const ModelParams& p,
                       const Coefficients& coeffs, const RadialGrid& g);

// D(f) / (||f||_1^{2-m} ||f||_m^m), where the interaction integral D(f) is
// computed through the 1D mass-function identity
//   D(f) = (1/c_d) int_0^inf M^2/(sigma r^{d-1}) dr
// (tail beyond r_max added analytically). Always <= C_star up to quadrature.
double hls_ratio(const RadialDensity& u, const RadialGrid& g, const SharpConstants& k);

struct ConcentrationReading {
    double local_mass = 0.0;
    double threshold = 0.0; // a(0)^{d/2} M_c_star
    bool flag = false;      // local_mass >= 0.9 * threshold (early warning)
};

ConcentrationReading concentration_monitor(const MassFunction& M, const Coefficients& coeffs,
                                           const SharpConstants& k, double r_probe,
                                           const RadialGrid& g);

struct HolderNorms {
    double l1 = 0.0;
    double l_2d_over_d_plus_2 = 0.0;
    double lm = 0.0;
};

// Norms of f_delta = (delta + |x|)^{-alpha} 1_{B(0,1)}, evaluated in closed
// form (binomial expansion of r^{d-1} around delta + r).
// Requires alpha strictly inside (d/m, (d+2)/2).
HolderNorms reverse_holder_family(double delta, double alpha, int d);

} // namespace pks

#endif
