#include "pks/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pks/chemo.hpp"

namespace pks {

double FixedSupersolution::mass_at(double r) const {
    return std::pow(a_bar, 0.5 * profile.d) * profile.mass_at(r / R);
}

double BarenblattFixture::support_radius(double t) const {
    return std::sqrt(C / k()) * std::pow(t, mu_exp());
}

double BarenblattFixture::density(double r, double t) const {
    if (t <= 0.0) throw std::domain_error("BarenblattFixture: t must be positive");
    const double pressure =
        std::pow(t, -lambda()) * std::max(0.0, C - k() * r * r / std::pow(t, 2.0 * mu_exp()));
    const double mm = m();
    return std::pow((mm - 1.0) * pressure / mm, 1.0 / (mm - 1.0));
}

MassFunction barenblatt_mass(double t, const BarenblattFixture& fixture, const RadialGrid& g) {
    if (t <= 0.0) throw std::domain_error("barenblatt_mass: t must be positive");
    const double sig = g.sigma();
    MassFunction M;
    M.values.assign(g.n_cells + 1, 0.0);
    // Composite Simpson per shell keeps the fixture's quadrature error well
    // below the evolution error it validates.
    for (int j = 0; j < g.n_cells; ++j) {
        const double r0 = g.faces[j], r1 = g.faces[j + 1];
        const double h = (r1 - r0) / 4.0;
        double integral = 0.0;
        double w[5] = {1.0, 4.0, 2.0, 4.0, 1.0};
        for (int q = 0; q < 5; ++q) {
            const double r = r0 + q * h;
            integral += w[q] * sig * std::pow(r, g.d - 1) * fixture.density(r, t);
        }
        integral *= h / 3.0;
        M.values[j + 1] = M.values[j] + integral;
    }
    return M;
}

namespace {

class Stepper {
public:
    Stepper(const ModelParams& p, const Coefficients& coeffs, const RadialGrid& g)
        : p_(p), coeffs_(coeffs), g_(g), n_(g.n_cells), m_(p.m()) {
        p.validate();
        coeffs.validate(g);
        const double sig = g.sigma();
        area_.resize(n_ + 1);
        drift_coef_.resize(n_ + 1, 0.0);
        for (int i = 0; i <= n_; ++i) {
            area_[i] = sig * std::pow(g.faces[i], g.d - 1);
            if (i > 0)
                drift_coef_[i] = std::pow(p.mu, -2.0 / g.d) /
                                 (area_[i] * coeffs.a.eval(g.faces[i]));
        }
        inv_dc_.resize(n_ + 1, 0.0);
        face_w_.resize(n_ + 1, 0.0);
        for (int i = 1; i < n_; ++i) {
            inv_dc_[i] = 1.0 / (g.centers[i] - g.centers[i - 1]);
            face_w_[i] = (g.faces[i] - g.centers[i - 1]) * inv_dc_[i];
        }
        dr_min_ = g.min_spacing();
        gamma_zero_ = coeffs.gamma_is_zero(g);
        drift_time_scale_ = std::pow(p.mu, 1.0 - 2.0 / g.d);
        u_.resize(n_);
        um_.resize(n_);
        vel_.resize(n_ + 1, 0.0);
        rate_.resize(n_ + 1, 0.0);
    }

    // Pressure p = m/(m-1) u^{m-1}; the flux is written as u_face*(p' + v) so
    // that states with discretely constant p + potential are exact steady
    // states (well-balanced). With the naive (u^m)' + v*u_upwind form the
    // first-order advection bias tilts the critical-mass balance by O(dr).
    double pressure(double u) const {
        if (u <= 0.0) return 0.0;
        const double um1 = g_.d == 3 ? std::cbrt(u) : std::pow(u, m_ - 1.0);
        return m_ / (m_ - 1.0) * um1;
    }

    // Advances one step in place; returns the stability-limited dt (before
    // the cap), writing the actually used dt into s.dt_last.
    double advance(SimulationState& s, const StepControls& ctl) {
        const double total = s.M.values.back();
        double max_u = 0.0;
        for (int j = 0; j < n_; ++j) {
            u_[j] = (s.M.values[j + 1] - s.M.values[j]) / g_.shell_vols[j];
            if (u_[j] < 0.0) u_[j] = 0.0;
            um_[j] = pressure(u_[j]);
            max_u = std::max(max_u, u_[j]);
        }
        last_max_u_ = max_u;

        double vmax = 0.0;
        if (ctl.drift_enabled) {
            if (gamma_zero_) {
                for (int i = 1; i < n_; ++i) {
                    vel_[i] = drift_coef_[i] * s.M.values[i];
                    vmax = std::max(vmax, vel_[i]);
                }
            } else {
                RadialDensity rho;
                rho.values = u_;
                const ChemoField f =
                    solve_gamma_positive(rho, coeffs_, g_, 1.0 / p_.mu);
                for (int i = 1; i < n_; ++i) {
                    vel_[i] = -drift_time_scale_ * f.dc_dr[i];
                    vmax = std::max(vmax, std::abs(vel_[i]));
                }
            }
        } else {
            std::fill(vel_.begin(), vel_.end(), 0.0);
        }

        // Total transport speed at each face: pressure gradient plus drift.
        // The carried density is interpolated linearly to the face (second
        // order); the monotone repair below clamps any front overshoot.
        double smax = 0.0;
        for (int i = 1; i < n_; ++i) {
            const double speed = (um_[i] - um_[i - 1]) * inv_dc_[i] + vel_[i];
            const double uf = (1.0 - face_w_[i]) * u_[i - 1] + face_w_[i] * u_[i];
            rate_[i] = area_[i] * speed * uf;
            if (uf > 0.0) smax = std::max(smax, std::abs(speed));
        }

        double dt_stab = std::numeric_limits<double>::infinity();
        if (max_u > 0.0) {
            const double diff = g_.d == 3 ? std::cbrt(max_u) : std::pow(max_u, m_ - 1.0);
            dt_stab = dr_min_ * dr_min_ / (2.0 * m_ * g_.d * diff);
        }
        if (smax > 0.0) dt_stab = std::min(dt_stab, dr_min_ / smax);
        if (vmax > 0.0) dt_stab = std::min(dt_stab, dr_min_ / vmax);
        dt_stab *= ctl.cfl;
        const double dt = std::min(dt_stab, ctl.dt_cap);

        for (int i = 1; i < n_; ++i) s.M.values[i] += dt * rate_[i];
        s.M.values[0] = 0.0;
        s.M.values[n_] = total;

        // Monotone repair: flux-limited in effect, clamps the rare free
        // boundary overshoot without touching the pinned endpoints.
        for (int i = n_ - 1; i >= 1; --i)
            s.M.values[i] = std::min(s.M.values[i], s.M.values[i + 1]);
        for (int i = 1; i < n_; ++i)
            s.M.values[i] = std::max(s.M.values[i], s.M.values[i - 1]);

        s.t += dt;
        s.dt_last = dt;
        ++s.step_count;
        return dt_stab;
    }

    // Peak of the state seen at the start of the most recent advance().
    double last_max_u() const { return last_max_u_; }

    double peak_density(const SimulationState& s) const {
        double p = 0.0;
        for (int j = 0; j < n_; ++j)
            p = std::max(p, (s.M.values[j + 1] - s.M.values[j]) / g_.shell_vols[j]);
        return p;
    }

private:
    const ModelParams& p_;
    const Coefficients& coeffs_;
    const RadialGrid& g_;
    int n_;
    double m_;
    double dr_min_ = 0.0;
    double last_max_u_ = 0.0;
    double drift_time_scale_ = 1.0;
    bool gamma_zero_ = true;
    std::vector<double> area_, drift_coef_, inv_dc_, face_w_, u_, um_, vel_, rate_;
};

} // namespace

SimulationState step(const SimulationState& s, const ModelParams& p,
                     const Coefficients& coeffs, const RadialGrid& g,
                     const StepControls& ctl) {
    if (static_cast<int>(s.M.values.size()) != g.n_cells + 1)
        throw std::invalid_argument("step: state size mismatch");
    Stepper stepper(p, coeffs, g);
    SimulationState out = s;
    stepper.advance(out, ctl);
    return out;
}

namespace {

DiagnosticsRow make_row(const SimulationState& s, const ModelParams& p,
                        const Coefficients& coeffs, const RadialGrid& g,
                        double r_probe, double time_factor) {
    // Diagnostics are reported in the original (unrescaled) frame:
    // u = rho/mu, t_orig = mu^{1-2/d} t.
    DiagnosticsRow row;
    row.t = time_factor * s.t;
    MassFunction M_orig;
    M_orig.values.resize(s.M.values.size());
    for (std::size_t i = 0; i < s.M.values.size(); ++i)
        M_orig.values[i] = s.M.values[i] / p.mu;
    ModelParams orig = p;
    orig.mu = 1.0;
    orig.total_mass = M_orig.total();
    const FreeEnergy fe = free_energy(M_orig, orig, coeffs, g);
    row.entropy = fe.entropy;
    row.potential_energy = fe.potential;
    row.free_energy = fe.total;
    row.total_mass = M_orig.total();
    const RadialDensity u = density_from_mass(M_orig, g);
    row.peak_density = u.peak();
    row.local_mass_origin = M_orig.at(r_probe, g);
    return row;
}

} // namespace

std::pair<Trajectory, Outcome> run(const MassFunction& initial, const ModelParams& p,
                                   const Coefficients& coeffs, const RadialGrid& g,
                                   const RunControls& ctl, const Monitors& monitors) {
    initial.validate();
    p.validate();
    Stepper stepper(p, coeffs, g);

    SimulationState s;
    s.M = initial;

    const double time_factor = std::pow(p.mu, 1.0 - 2.0 / g.d);
    const double r_probe = ctl.r_probe > 0.0 ? ctl.r_probe : g.r_max / 10.0;
    const double diag_dt = ctl.diag_interval > 0.0 ? ctl.diag_interval : ctl.t_end / 200.0;
    const double peak0 = stepper.peak_density(s);
    const double u_blowup = ctl.u_blowup > 0.0 ? ctl.u_blowup : 1e6 * std::max(peak0, 1.0);
    const double dr_min = g.min_spacing();

    Trajectory traj;
    Outcome out;

    auto sample = [&](const SimulationState& st) -> bool {
        DiagnosticsRow row = make_row(st, p, coeffs, g, r_probe, time_factor);
        if (monitors.barrier) {
            const Barrier& b = *monitors.barrier;
            const double t_star = b.collapse_time();
            if (st.t < t_star) {
                const double R = b.radius_at(st.t);
                double gap = std::numeric_limits<double>::infinity();
                double gap_r = 0.0;
                for (int i = 1; i <= g.n_cells; ++i) {
                    const double r = g.faces[i];
                    if (r > R) break;
                    const double gi = st.M.values[i] - b.mass_at(st.t, r);
                    if (gi < gap) {
                        gap = gi;
                        gap_r = r;
                    }
                }
                if (std::isfinite(gap)) {
                    row.comparison_gap = gap;
                    const double eps = ctl.comparison_tol_coeff * dr_min *
                                       std::max(stepper.peak_density(st), 1.0);
                    if (gap < -eps) {
                        out.kind = OutcomeKind::ComparisonViolated;
                        out.violating_radius = gap_r;
                        out.detail = "mass comparison violated against collapsing barrier";
                        traj.rows.push_back(row);
                        return false;
                    }
                }
            }
        } else if (monitors.super_sol) {
            const FixedSupersolution& sup = *monitors.super_sol;
            double gap = std::numeric_limits<double>::infinity();
            double gap_r = 0.0;
            for (int i = 1; i <= g.n_cells; ++i) {
                const double r = g.faces[i];
                if (r > sup.R) break;
                const double gi = sup.mass_at(r) - st.M.values[i];
                if (gi < gap) {
                    gap = gi;
                    gap_r = r;
                }
            }
            if (std::isfinite(gap)) {
                row.comparison_gap = gap;
                const double eps = ctl.comparison_tol_coeff * dr_min *
                                   std::max(stepper.peak_density(st), 1.0);
                if (gap < -eps) {
                    out.kind = OutcomeKind::ComparisonViolated;
                    out.violating_radius = gap_r;
                    out.detail = "mass exceeded fixed supersolution";
                    traj.rows.push_back(row);
                    return false;
                }
            }
        }
        traj.rows.push_back(row);
        return true;
    };

    if (!sample(s)) {
        out.t_final = 0.0;
        out.peak_density = peak0 / p.mu;
        return {std::move(traj), out};
    }

    double next_sample = diag_dt;
    StepControls sctl;
    sctl.cfl = ctl.cfl;
    sctl.drift_enabled = ctl.drift_enabled;

    while (s.t < ctl.t_end) {
        sctl.dt_cap = std::min(ctl.t_end - s.t, next_sample - s.t);
        if (sctl.dt_cap <= 0.0) sctl.dt_cap = ctl.t_end - s.t;
        const double dt_stab = stepper.advance(s, sctl);

        // One-step-lagged peak; cheap and sufficient for thresholding.
        const double peak = stepper.last_max_u();
        if (!std::isfinite(peak) || !std::isfinite(s.M.values[g.n_cells / 2])) {
            out.kind = OutcomeKind::NumericalFailure;
            out.detail = "non-finite state";
            break;
        }
        if (ctl.peak_stop_factor > 0.0 && peak >= ctl.peak_stop_factor * std::max(peak0, 1e-300)) {
            out.kind = OutcomeKind::BlowUp;
            out.detail = "peak density exceeded classification factor";
            sample(s);
            break;
        }
        if (peak >= u_blowup && dt_stab <= ctl.dt_min) {
            out.kind = OutcomeKind::BlowUp;
            out.detail = "blow-up threshold tripped (t_final is a lower-resolution proxy for T+)";
            sample(s);
            break;
        }
        if (dt_stab < ctl.dt_min && peak < u_blowup) {
            out.kind = OutcomeKind::NumericalFailure;
            out.detail = "time step underflow without blow-up threshold";
            break;
        }
        if (s.step_count >= ctl.max_steps) {
            out.kind = OutcomeKind::NumericalFailure;
            out.detail = "step budget exhausted";
            break;
        }
        if (s.t >= next_sample - 1e-15 * std::max(1.0, s.t)) {
            if (!sample(s)) break;
            while (next_sample <= s.t + 1e-15 * std::max(1.0, s.t)) next_sample += diag_dt;
        }
        if (out.kind != OutcomeKind::Completed) break;
    }

    if (out.kind == OutcomeKind::Completed && s.t >= ctl.t_end) {
        if (traj.rows.empty() || traj.rows.back().t < time_factor * s.t) sample(s);
    }
    out.t_final = time_factor * s.t;
    out.peak_density = stepper.peak_density(s) / p.mu;
    return {std::move(traj), out};
}

} // namespace pks
