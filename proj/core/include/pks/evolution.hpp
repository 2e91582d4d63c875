#ifndef PKS_EVOLUTION_HPP
#define PKS_EVOLUTION_HPP

#include <string>
#include <vector>

#include "pks/barrier.hpp"
#include "pks/diagnostics.hpp"
#include "pks/radial.hpp"

// Explicit conservative time integration of the radial mass-function PDE
//   dM/dt = sigma r^{d-1} d/dr (dM/dr / (sigma r^{d-1}))^m
//           + (mu^{-2/d}/a(r)) (M / (sigma r^{d-1})) dM/dr,
// with pinned boundaries M(0)=0, M(r_max)=total (exact conservation) and a
// monotonicity-preserving update. mu=1 recovers the original system; mu<1
// integrates the mass-rescaled system used for barrier comparison.

namespace pks {

struct SimulationState {
    double t = 0.0;
    MassFunction M;
    double dt_last = 0.0;
    long step_count = 0;
};

enum class OutcomeKind { Completed, BlowUp, ComparisonViolated, NumericalFailure };

struct Outcome {
    OutcomeKind kind = OutcomeKind::Completed;
    double t_final = 0.0;      // original (unrescaled) time
    double peak_density = 0.0; // original-frame density
    double violating_radius = 0.0;
    std::string detail;
};

struct StepControls {
    double cfl = 0.4;
    double dt_cap = 1e30; // upper bound on dt (e.g. remaining time)
    bool drift_enabled = true;
};

struct RunControls {
    double t_end = 1.0; // in the internal (possibly rescaled) time frame
    double cfl = 0.4;
    double dt_min = 1e-12;
    double u_blowup = 0.0;       // absolute density threshold; 0 = 1e6 x initial peak
    double diag_interval = 0.0;  // diagnostics cadence; 0 = t_end/200
    double r_probe = 0.0;        // radius for the local-mass column; 0 = r_max/10
    bool drift_enabled = true;
    double comparison_tol_coeff = 10.0; // eps_grid = coeff * min_dr * peak_density
    double peak_stop_factor = 0.0;      // >0: classify as BlowUp once peak >= factor * initial peak
    long max_steps = 2'000'000'000L;
};

// Supersolution with fixed radius used by the critical-mass scenario.
struct FixedSupersolution {
    double R = 0.0;
    double a_bar = 1.0;
    StationaryProfile profile; // normalized

    double mass_at(double r) const;
};

struct Monitors {
    const Barrier* barrier = nullptr;            // collapsing subsolution: M >= bar M
    const FixedSupersolution* super_sol = nullptr; // fixed supersolution: M <= bar M
};

struct Trajectory {
    std::vector<DiagnosticsRow> rows;
};

// Barenblatt self-similar solution of the pure porous-medium equation in
// pressure form B(x,t) = t^{-lambda} (C - k |x|^2 / t^{2 mu_exp})_+ with
// density u = ((m-1) B / m)^{1/(m-1)}; the drift-off validation vector.
struct BarenblattFixture {
    double C = 1.0;
    int d = 3;

    double m() const { return 2.0 - 2.0 / d; }
    // For m = 2 - 2/d the mass-conserving self-similar exponents are
    // alpha = 1 (density decay) and beta = 1/d (spreading); in pressure form
    // B = t^{-lambda}(C - k |x|^2 t^{-2 mu_exp})_+ this gives
    // lambda = (d-2)/d, mu_exp = 1/d, k = 1/(2d).
    double lambda() const { return d * (m() - 1.0) / (d * (m() - 1.0) + 2.0); }
    double mu_exp() const { return 1.0 / d; }
    double k() const { return 1.0 / (2.0 * d); }
    double support_radius(double t) const;
    double density(double r, double t) const;
};

SimulationState step(const SimulationState& s, const ModelParams& p,
                     const Coefficients& coeffs, const RadialGrid& g,
                     const StepControls& ctl = {});

std::pair<Trajectory, Outcome> run(const MassFunction& initial, const ModelParams& p,
                                   const Coefficients& coeffs, const RadialGrid& g,
                                   const RunControls& ctl, const Monitors& monitors = {});

MassFunction barenblatt_mass(double t, const BarenblattFixture& fixture, const RadialGrid& g);

} // namespace pks

#endif
