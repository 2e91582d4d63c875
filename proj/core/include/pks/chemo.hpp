#ifndef PKS_CHEMO_HPP
#define PKS_CHEMO_HPP

#include "pks/radial.hpp"

// Radial chemo-attractant solvers: -div(a grad c) + gamma c = s * u, with
// s the mass scale applied to the source (mu^{-1} for the rescaled system).

namespace pks {

struct ChemoField {
    std::vector<double> c;     // cell centers
    std::vector<double> dc_dr; // faces; dc_dr[0] = 0
    double source_mass_scale = 1.0;
};

// gamma == 0: the flux identity gives dc/dr directly from the mass function,
//   dc/dr(r) = -s M(r) / (sigma r^{d-1} a(r)),
// and c is recovered by inward trapezoid integration from the far-field
// closure c(r_max) = s M_tot c_d / (a(r_max) r_max^{d-2}).
ChemoField solve_gamma_zero(const MassFunction& M, const Coefficients& coeffs,
                            const RadialGrid& g, double source_mass_scale = 1.0);

// Two-point BVP on cell centers with Neumann c'(0)=0 and Dirichlet
// c(r_max)=0, solved by the Thomas algorithm. Also valid for gamma == 0 when
// explicitly requested.
ChemoField solve_gamma_positive(const RadialDensity& u, const Coefficients& coeffs,
                                const RadialGrid& g, double source_mass_scale = 1.0);

// Interaction energy (1/2) int u c >= 0. For gamma == 0 uses the closed form
//   (s/2) int_0^{r_max} M^2/(sigma r^{d-1} a) dr + (1/2) c(r_max) M_tot,
// where the boundary term carries the truncated far-field tail; for
// gamma > 0 solves the BVP and sums (1/2) u c dV directly.
double potential_energy(const MassFunction& M, const Coefficients& coeffs,
                        const RadialGrid& g, double source_mass_scale = 1.0);

// Direct quadrature route (1/2) sum u_j c_j vol_j for a precomputed field.
double potential_energy_direct(const RadialDensity& u, const ChemoField& field,
                               const RadialGrid& g);

} // namespace pks

#endif
