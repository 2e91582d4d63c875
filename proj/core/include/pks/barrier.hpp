#ifndef PKS_BARRIER_HPP
#define PKS_BARRIER_HPP

#include "pks/profile.hpp"
#include "pks/radial.hpp"

// The collapsing subsolution of the blow-up argument: a rescaled extremal
// a(R0)^{d/2} R(t)^{-d} V(x/R(t)) whose radius law has a closed form. The
// barrier is never time-stepped; every evaluation rescales the stored
// normalized profile.

namespace pks {

struct Barrier {
    int d = 3;
    double R0 = 0.0;
    double a_at_R0 = 1.0;
    double mu = 0.0;                  // M_c / M_0, in (0,1)
    double M_c = 0.0;                 // barrier total mass, a(R0)^{d/2} M_c_star
    StationaryProfile profile;        // normalized to unit support

    static Barrier make(const StationaryProfile& normalized, double R0,
                        double a_at_R0, double mu);

    // Closed form R(t) = (R0^d - d M_c (mu^{-2/d}-1) t / (a(R0) sigma))^{1/d}.
    double radius_at(double t) const;
    // T_star = R0^d sigma / (d a(R0) M_c (mu^{-2/d}-1)).
    double collapse_time() const;
    // mu^{2/d-1} T_star, the blow-up bound in the original time variable.
    double blow_up_time_bound() const;

    // bar M(t,r) = a(R0)^{d/2} M_V(r/R(t)); exact self-similarity.
    double mass_at(double t, double r) const;
    double density_at(double t, double r) const;
};

struct OrderingCheck {
    bool ok = false;
    double worst_margin = 0.0; // min over r of mu*M(0,r) - bar M(0,r)
    double worst_radius = 0.0;
};

// Initial-ordering condition: bar M(0,r) <= (M_c/M_0) M(0,r) on [0, R0],
// evaluated at every face radius. u0_mass is the mass function of the
// ORIGINAL (unrescaled) initial data.
OrderingCheck check_initial_ordering(const MassFunction& u0_mass, const Barrier& b,
                                     const RadialGrid& g);

// min over faces in [0, R(t)] of M(t,r) - bar M(t,r), for the mu-rescaled
// evolution being monitored. Throws for t >= T_star.
double comparison_gap(const MassFunction& M, const Barrier& b, double t,
                      const RadialGrid& g);

} // namespace pks

#endif
