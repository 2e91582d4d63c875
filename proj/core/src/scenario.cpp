#include "pks/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <stdexcept>

namespace pks {

namespace {

// One shooting run per (d, step) is enough for a whole process.
const StationaryProfile& cached_profile(int d, double step) {
    static int cached_d = 0;
    static double cached_step = 0.0;
    static StationaryProfile cached;
    if (cached_d != d || cached_step != step) {
        cached = normalize_unit_support(shoot_profile(d, 1.0, step));
        cached_d = d;
        cached_step = step;
    }
    return cached;
}

// Adds a constant-density shell of the given mass on [r_c - w/2, r_c + w/2]
// to a face-sampled mass function.
void add_shell(MassFunction& M, const RadialGrid& g, double mass, double r_c, double w) {
    const double r0 = r_c - 0.5 * w;
    const double r1 = r_c + 0.5 * w;
    if (r0 < 0.0 || r1 > g.r_max)
        throw std::invalid_argument("initial shell must lie inside [0, r_max]");
    const double sig_d = g.sigma() / g.d;
    const double vol = sig_d * (std::pow(r1, g.d) - std::pow(r0, g.d));
    for (int i = 0; i <= g.n_cells; ++i) {
        const double r = std::min(std::max(g.faces[i], r0), r1);
        M.values[i] += mass * sig_d * (std::pow(r, g.d) - std::pow(r0, g.d)) / vol;
    }
}

MassFunction scaled_density_mass(const ScenarioConfig& cfg, const RadialGrid& g,
                                 const std::vector<double>& density) {
    RadialDensity u;
    u.values = density;
    MassFunction M = mass_from_density(u, g);
    const double total = M.total();
    if (!(total > 0.0))
        throw std::invalid_argument("initial data has zero mass before scaling");
    const double s = cfg.total_mass / total;
    for (double& v : M.values) v *= s;
    return M;
}

} // namespace

MassFunction build_initial_mass(const ScenarioConfig& cfg, const RadialGrid& g,
                                const StationaryProfile& normalized) {
    switch (cfg.kind) {
    case InitialKind::GaussianBump: {
        std::vector<double> u(g.n_cells);
        for (int j = 0; j < g.n_cells; ++j) {
            const double x = g.centers[j] / cfg.width;
            u[j] = std::exp(-x * x);
        }
        return scaled_density_mass(cfg, g, u);
    }
    case InitialKind::Annulus: {
        std::vector<double> u(g.n_cells, 0.0);
        for (int j = 0; j < g.n_cells; ++j)
            if (g.centers[j] >= cfg.r_inner && g.centers[j] <= cfg.r_outer) u[j] = 1.0;
        return scaled_density_mass(cfg, g, u);
    }
    case InitialKind::Table: {
        std::vector<double> u(g.n_cells, 0.0);
        const auto& t = cfg.table;
        for (int j = 0; j < g.n_cells; ++j) {
            const double r = g.centers[j];
            if (r <= t.front().first) { u[j] = t.front().second; continue; }
            if (r >= t.back().first) { u[j] = t.back().second; continue; }
            for (std::size_t k = 1; k < t.size(); ++k) {
                if (r <= t[k].first) {
                    const double w = (r - t[k - 1].first) / (t[k].first - t[k - 1].first);
                    u[j] = (1.0 - w) * t[k - 1].second + w * t[k].second;
                    break;
                }
            }
        }
        return scaled_density_mass(cfg, g, u);
    }
    case InitialKind::BarrierScaled: {
        // Core mass matches the barrier's initial mass function exactly at the
        // faces (scaled by M0/M_c), making the ordering check structural.
        if (!(cfg.M0 > 0.0 && cfg.M0 <= cfg.total_mass))
            throw std::invalid_argument("barrier_scaled: need 0 < M0 <= total_mass");
        const double a_R0 = cfg.a.eval(cfg.R0);
        const double scale =
            std::pow(a_R0, 0.5 * cfg.d); // barrier mass scale a(R0)^{d/2}
        const double M_c_b = scale * normalized.total_mass;
        MassFunction M;
        M.values.assign(g.n_cells + 1, 0.0);
        for (int i = 0; i <= g.n_cells; ++i)
            M.values[i] = (cfg.M0 / M_c_b) * scale * normalized.mass_at(g.faces[i] / cfg.R0);
        const double surplus = cfg.total_mass - cfg.M0;
        if (surplus > 0.0) {
            const double r_c =
                cfg.shell_radius > 0.0 ? cfg.shell_radius : 0.5 * (cfg.R0 + g.r_max);
            add_shell(M, g, surplus, r_c, cfg.shell_width);
        }
        return M;
    }
    case InitialKind::SpikePlusShell: {
        MassFunction M;
        M.values.assign(g.n_cells + 1, 0.0);
        for (int i = 0; i <= g.n_cells; ++i)
            M.values[i] = cfg.spike_mass *
                          normalized.mass_at(g.faces[i] / cfg.spike_radius) /
                          normalized.total_mass;
        const double surplus = cfg.total_mass - cfg.spike_mass;
        if (surplus > 0.0) {
            const double r_c = cfg.shell_radius > 0.0 ? cfg.shell_radius : 0.8 * g.r_max;
            add_shell(M, g, surplus, r_c, cfg.shell_width);
        }
        return M;
    }
    }
    throw std::logic_error("build_initial_mass: unreachable");
}

int ScenarioResult::exit_code() const {
    if (refused) return 4;
    switch (outcome.kind) {
    case OutcomeKind::Completed: return 0;
    case OutcomeKind::BlowUp: return 2;
    case OutcomeKind::ComparisonViolated: return 3;
    case OutcomeKind::NumericalFailure: return 5;
    }
    return 5;
}

std::string csv_header() {
    return "t,peak_density,entropy,potential_energy,free_energy,total_mass,"
           "comparison_gap,local_mass_origin";
}

namespace {

void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

void write_csv(const Trajectory& traj, const std::string& path) {
    std::string out = csv_header();
    out += '\n';
    for (const DiagnosticsRow& row : traj.rows) {
        append_g17(out, row.t); out += ',';
        append_g17(out, row.peak_density); out += ',';
        append_g17(out, row.entropy); out += ',';
        append_g17(out, row.potential_energy); out += ',';
        append_g17(out, row.free_energy); out += ',';
        append_g17(out, row.total_mass); out += ',';
        if (row.comparison_gap) append_g17(out, *row.comparison_gap);
        out += ',';
        append_g17(out, row.local_mass_origin);
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
    f << out;
    if (!f) throw std::runtime_error("failed writing output file '" + path + "'");
}

namespace {

struct RunPieces {
    Trajectory traj;
    Outcome outcome;
    OrderingCheck ordering;
    bool ordering_checked = false;
    bool refused = false;
    double mu = 1.0;
    double blow_up_time_bound = 0.0;
};

RunPieces run_core(const ScenarioConfig& cfg, bool force, double peak_stop_factor) {
    RunPieces out;
    const RadialGrid g = cfg.make_grid();
    const Coefficients coeffs = cfg.make_coefficients();
    coeffs.validate(g);
    const StationaryProfile& prof = cached_profile(cfg.d, cfg.profile_step);

    const MassFunction M_u = build_initial_mass(cfg, g, prof);

    Barrier barrier;
    FixedSupersolution super_sol;
    Monitors monitors;
    double mu = cfg.mu > 0.0 ? cfg.mu : 1.0;

    if (cfg.monitor == MonitorMode::Collapsing) {
        const double a_R0 = cfg.a.eval(cfg.R0);
        const double M_c_b = std::pow(a_R0, 0.5 * cfg.d) * prof.total_mass;
        mu = M_c_b / cfg.M0;
        if (!(mu > 0.0 && mu < 1.0))
            throw std::invalid_argument(
                "collapsing barrier requires M0 above the barrier mass (mu in (0,1))");
        barrier = Barrier::make(prof, cfg.R0, a_R0, mu);
        out.ordering = check_initial_ordering(M_u, barrier, g);
        out.ordering_checked = true;
        out.blow_up_time_bound = barrier.blow_up_time_bound();
        if (!out.ordering.ok && !force) {
            out.refused = true;
            out.mu = mu;
            return out;
        }
        monitors.barrier = &barrier;
    } else if (cfg.monitor == MonitorMode::Fixed) {
        super_sol.R = cfg.fixed_R;
        super_sol.a_bar = coeffs.a_min(g);
        super_sol.profile = prof;
        monitors.super_sol = &super_sol;
    }
    out.mu = mu;

    ModelParams p;
    p.d = cfg.d;
    p.mu = mu;
    p.total_mass = mu * M_u.total();

    MassFunction M0 = M_u;
    for (double& v : M0.values) v *= mu;

    const double time_factor = std::pow(mu, 1.0 - 2.0 / cfg.d);

    RunControls ctl;
    ctl.t_end = cfg.t_end / time_factor; // config horizon is in original time
    ctl.cfl = cfg.cfl;
    ctl.dt_min = cfg.dt_min;
    ctl.u_blowup = cfg.u_blowup > 0.0 ? mu * cfg.u_blowup : 0.0;
    ctl.diag_interval = cfg.cadence > 0.0 ? cfg.cadence / time_factor : 0.0;
    ctl.r_probe = cfg.r_probe;
    ctl.drift_enabled = cfg.drift;
    ctl.peak_stop_factor = peak_stop_factor;

    auto [traj, outcome] = run(M0, p, coeffs, g, ctl, monitors);
    out.traj = std::move(traj);
    out.outcome = outcome;
    return out;
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, bool force,
                            const std::string& output_dir) {
    RunPieces pieces = run_core(cfg, force, 0.0);
    ScenarioResult res;
    res.outcome = pieces.outcome;
    res.trajectory = std::move(pieces.traj);
    res.ordering = pieces.ordering;
    res.ordering_checked = pieces.ordering_checked;
    res.refused = pieces.refused;
    res.mu = pieces.mu;
    res.blow_up_time_bound = pieces.blow_up_time_bound;
    if (res.refused) return res;

    std::filesystem::path path = cfg.output_path;
    if (!output_dir.empty()) path = std::filesystem::path(output_dir) / path.filename();
    res.csv_path = path.string();
    write_csv(res.trajectory, res.csv_path);
    return res;
}

BracketResult bracket_critical_mass(const ScenarioConfig& cfg, double lo, double hi,
                                    int iters) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("bracket: need 0 < lo < hi");
    if (iters < 1) throw std::invalid_argument("bracket: iters must be >= 1");
    if (cfg.monitor != MonitorMode::None)
        throw std::invalid_argument("bracket: scenario must not carry a barrier monitor");

    // The mass-scaled family must dominate the collapsing barrier at the
    // supercritical end so that blow-up above the threshold is guaranteed by
    // comparison. The rescaled stationary spike (spike_plus_shell with the
    // whole mass in the spike) has exactly the barrier's shape; a generic bump
    // is less concentrated at the origin than the extremal and its empirical
    // threshold is family-dependent.
    if (cfg.kind != InitialKind::SpikePlusShell)
        throw std::invalid_argument(
            "bracket: the mass-scaled family must be spike_plus_shell");
    if (!(cfg.spike_radius > 0.0))
        throw std::invalid_argument("bracket: spike_radius must be positive");

    // The shooting cache is not thread-safe; warm it before the concurrent
    // endpoint classification.
    const StationaryProfile& prof = cached_profile(cfg.d, cfg.profile_step);

    const RadialGrid g0 = cfg.make_grid();
    const Coefficients coeffs0 = cfg.make_coefficients();
    const double M_crit = std::pow(coeffs0.a_min(g0), 0.5 * cfg.d) * prof.total_mass;

    // Classification horizon: 20 barrier collapse times at mu estimated from
    // the current bracket, converted to original time; R0 is the spike radius.
    // Bounded below by the configured t_end. The estimate is capped at 0.97:
    // an 8-iteration bisection cannot distinguish masses closer than ~0.5% to
    // the threshold anyway, and T* diverges as mu -> 1, so an uncapped
    // estimate would make late bounded probes arbitrarily expensive while the
    // capped horizon already exceeds T*(mu) for every mass more than ~0.2%
    // above critical.
    auto horizon = [&](double cur_lo, double cur_hi) -> double {
        const double mu_est = std::min(cur_lo / cur_hi, 0.97);
        const double R0 = cfg.spike_radius;
        const double sig = sphere_surface_area(cfg.d);
        const double a_R0 = cfg.a.eval(R0);
        const double t_star = std::pow(R0, cfg.d) * sig /
                              (cfg.d * a_R0 * M_crit * (std::pow(mu_est, -2.0 / cfg.d) - 1.0));
        return std::max(cfg.t_end, 20.0 * std::pow(mu_est, 2.0 / cfg.d - 1.0) * t_star);
    };

    auto classify = [&cfg, &horizon](double mass, double cur_lo, double cur_hi) -> bool {
        ScenarioConfig c = cfg;
        c.total_mass = mass;
        c.spike_mass = mass; // whole mass in the spike: pure rescaled extremal
        c.t_end = horizon(cur_lo, cur_hi);
        RunPieces p = run_core(c, false, 10.0);
        if (p.outcome.kind == OutcomeKind::BlowUp) return true;
        if (p.outcome.kind == OutcomeKind::Completed) return false;
        throw std::runtime_error("bracket: classification run failed: " + p.outcome.detail);
    };

    auto lo_fut = std::async(std::launch::async, classify, lo, lo, hi);
    auto hi_fut = std::async(std::launch::async, classify, hi, lo, hi);
    const bool lo_blew = lo_fut.get();
    const bool hi_blew = hi_fut.get();
    if (lo_blew) throw std::invalid_argument("bracket: lo endpoint already blows up");
    if (!hi_blew) throw std::invalid_argument("bracket: hi endpoint stays global");

    BracketResult res;
    res.steps.push_back({lo, hi, lo, false});
    res.steps.push_back({lo, hi, hi, true});
    for (int it = 0; it < iters; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool blew = classify(mid, lo, hi);
        if (blew) hi = mid;
        else lo = mid;
        res.steps.push_back({lo, hi, mid, blew});
    }
    res.lo = lo;
    res.hi = hi;
    return res;
}

ScenarioConfig preset(const std::string& name) {
    ScenarioConfig c;
    c.d = 3;
    if (name == "subcritical") {
        // Mass at 0.9x critical for a = 1; global existence regime.
        c.total_mass = 182.60568681907852;
        c.a = CoefficientSpec::constant(1.0);
        c.r_max = 8.0;
        c.n_cells = 256;
        c.t_end = 0.5;
        c.kind = InitialKind::GaussianBump;
        c.width = 0.5;
        c.output_path = "subcritical.csv";
    } else if (name == "critical_radial") {
        // Total mass exactly at the constant-a critical value; stays bounded.
        c.total_mass = 202.8952075766428;
        c.a = CoefficientSpec::constant(1.0);
        c.r_max = 8.0;
        c.n_cells = 256;
        c.t_end = 0.5;
        c.kind = InitialKind::GaussianBump;
        c.width = 0.6;
        c.output_path = "critical_radial.csv";
    } else if (name == "supercritical_blowup") {
        // Inhomogeneous a, monotone near the origin; barrier-dominated data.
        c.total_mass = 430.0;
        c.a = CoefficientSpec::from_table({{0.0, 1.0}, {1.0, 2.0}, {8.0, 2.0}});
        c.monotone_near_origin = true;
        c.delta0 = 1.0;
        c.r_max = 8.0;
        c.n_cells = 512;
        c.grading = 64.0;
        c.t_end = 1.0;
        // The pair (u_blowup, dt_min) is ordered so the density threshold
        // trips first and the step collapse confirms it once the barrier has
        // shrunk well inside the concentration probe radius.
        c.dt_min = 1e-10;
        c.u_blowup = 1e8;
        c.cadence = 1e-5;
        c.r_probe = 0.02; // 0.05 R0, the concentration probe
        c.kind = InitialKind::BarrierScaled;
        c.has_barrier = true;
        c.monitor = MonitorMode::Collapsing;
        c.R0 = 0.4;
        c.M0 = 400.0;
        c.shell_radius = 4.0;
        c.shell_width = 0.5;
        c.output_path = "supercritical_blowup.csv";
    } else if (name == "positive_energy_blowup") {
        // Free energy strictly positive at t=0, yet the mass comparison still
        // forces finite-time blow-up: a tight supercritical spike plus a far,
        // thin shell holding most of the entropy.
        c.total_mass = 560.04;
        c.a = CoefficientSpec::constant(1.0);
        c.r_max = 12.0;
        c.n_cells = 384;
        c.grading = 32.0;
        c.t_end = 1.0;
        c.dt_min = 3e-9;
        c.u_blowup = 2e6;
        c.cadence = 2e-4;
        c.kind = InitialKind::SpikePlusShell;
        c.spike_radius = 0.3;
        c.spike_mass = 213.04; // 1.05 x the critical mass
        // Thin shell at moderate radius: holds most of the entropy, keeping
        // the initial free energy strictly positive despite the spike.
        c.shell_radius = 3.0;
        c.shell_width = 0.03;
        c.output_path = "positive_energy_blowup.csv";
    } else if (name == "barenblatt_validation") {
        // Pure porous-medium run (drift off) against the self-similar solution.
        c.total_mass = 1.0;
        c.drift = false;
        c.r_max = 4.0;
        c.n_cells = 1024;
        c.t_end = 1.0;
        c.kind = InitialKind::GaussianBump;
        c.width = 0.3;
        c.output_path = "barenblatt_validation.csv";
    } else if (name == "critical_supersolution") {
        // Exactly critical mass under a fixed stationary supersolution. The
        // compact domain keeps the spike well resolved: at coarser spacing the
        // discrete critical balance tilts enough that the exactly-critical
        // run concentrates spuriously.
        c.total_mass = 202.8952075766428;
        c.a = CoefficientSpec::constant(1.0);
        c.r_max = 2.0;
        c.n_cells = 256;
        c.t_end = 0.5;
        c.kind = InitialKind::SpikePlusShell;
        c.spike_radius = 1.0;
        c.spike_mass = 202.8952075766428;
        c.has_barrier = true;
        c.monitor = MonitorMode::Fixed;
        c.fixed_R = 1.0;
        c.output_path = "critical_supersolution.csv";
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return c;
}

std::vector<std::string> preset_names() {
    return {"subcritical",          "critical_radial",       "supercritical_blowup",
            "positive_energy_blowup", "barenblatt_validation", "critical_supersolution"};
}

} // namespace pks
