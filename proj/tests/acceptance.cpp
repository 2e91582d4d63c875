// Acceptance harness: `acceptance N` checks criterion N (1..11) and prints a
// single pass/fail line. Exit code 0 on pass, 1 on fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "pks/scenario.hpp"

using namespace pks;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMcStar3 = 202.8952075766428; // frozen d=3 critical mass

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

const StationaryProfile& norm_profile(int d) {
    static StationaryProfile p3;
    static StationaryProfile p4;
    if (d == 3) {
        if (p3.radii.empty()) p3 = normalize_unit_support(shoot_profile(3, 1.0, 2e-4));
        return p3;
    }
    if (p4.radii.empty()) p4 = normalize_unit_support(shoot_profile(4, 1.0, 2e-4));
    return p4;
}

std::string out_dir() {
    const fs::path d = fs::temp_directory_path() / "pks_acceptance";
    fs::create_directories(d);
    return d.string();
}

// --- criterion 1: Newtonian normalization constants --------------------------

Check criterion_1() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const double c3 = compute_cd(3);
    const double c4 = compute_cd(4);
    const double c6 = compute_cd(6);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(std::abs(c3 - 1.0 / (4.0 * kPi)) <= 1e-12 / (4.0 * kPi), "c_3 mismatch");
    c.require(std::abs(c4 - 1.0 / (4.0 * kPi * kPi)) <= 1e-12 / (4.0 * kPi * kPi),
              "c_4 mismatch");
    c.require(std::abs(c6 - 1.0 / (4.0 * kPi * kPi * kPi)) <=
                  1e-12 / (4.0 * kPi * kPi * kPi),
              "c_6 mismatch");
    c.require(elapsed < 1e-3, "runtime over 1 ms");
    c.note("c_3=" + fmt("%.15g", c3) + ", runtime " + fmt("%.2g", elapsed) + " s");
    return c;
}

// --- criterion 2: extremal consistency ---------------------------------------

double hls_route_mass(int d) {
    const StationaryProfile& p = norm_profile(d);
    const RadialGrid g = RadialGrid::uniform(d, 1.2, 8192);
    RadialDensity u;
    u.values.resize(g.n_cells);
    for (int j = 0; j < g.n_cells; ++j) u.values[j] = p.value_at(g.centers[j]);
    const SharpConstants k = sharp_constants(p);
    const double C_hls = hls_ratio(u, g, k);
    const double m = 2.0 - 2.0 / d;
    return std::pow(2.0 / ((m - 1.0) * C_hls * k.c_d), 0.5 * d);
}

Check criterion_2() {
    Check c;
    const double t0 = now_seconds();
    for (int d : {3, 4}) {
        const double mc_shoot = norm_profile(d).total_mass;
        const double mc_hls = hls_route_mass(d);
        const double rel = std::abs(mc_hls - mc_shoot) / mc_shoot;
        c.require(rel <= 1e-3, "d=" + std::to_string(d) +
                                   " route disagreement rel=" + fmt("%.2e", rel));
        if (d == 3) c.note("M_c(d=3): shoot " + fmt("%.10g", mc_shoot) +
                           " vs HLS " + fmt("%.10g", mc_hls));
    }
    {
        // stationarity residual of the d=3 profile as shot (unit center height)
        const StationaryProfile n = shoot_profile(3, 1.0, 1e-4);
        const double sig = 4.0 * kPi;
        const double m = 4.0 / 3.0;
        double worst = 0.0;
        for (std::size_t i = 2; i + 2 < n.radii.size(); ++i) {
            if (n.values[i] <= 0.0) break;
            const double r = n.radii[i];
            const double dvm = (std::pow(n.values[i + 1], m) - std::pow(n.values[i - 1], m)) /
                               (n.radii[i + 1] - n.radii[i - 1]);
            worst = std::max(worst, std::abs(dvm + n.values[i] * n.mass[i] / (sig * r * r)));
        }
        c.require(worst <= 1e-6 * std::pow(n.values.front(), m),
                  "stationarity residual " + fmt("%.2e", worst));
    }
    {
        // shooting-height independence
        const double m1 = normalize_unit_support(shoot_profile(3, 1.0, 2e-4)).total_mass;
        const double m5 = normalize_unit_support(shoot_profile(3, 5.0, 1e-4)).total_mass;
        const double rel = std::abs(m5 - m1) / m1;
        c.require(rel <= 1e-5, "height dependence rel=" + fmt("%.2e", rel));
    }
    const double elapsed = now_seconds() - t0;
    c.require(elapsed < 5.0, "runtime over 5 s");
    c.note("runtime " + fmt("%.2f", elapsed) + " s");
    return c;
}

// --- criterion 3: free energy vanishes on the extremal family ----------------

Check criterion_3() {
    Check c;
    const double t0 = now_seconds();
    const StationaryProfile& p = norm_profile(3);
    for (double R : {0.25, 1.0, 4.0}) {
        const RadialGrid g = RadialGrid::uniform(3, 8.0 * R, 4096);
        MassFunction M;
        M.values.resize(g.n_cells + 1);
        for (int i = 0; i <= g.n_cells; ++i) M.values[i] = p.mass_at(g.faces[i] / R);
        ModelParams prm;
        prm.d = 3;
        prm.total_mass = p.total_mass;
        const FreeEnergy F = free_energy(M, prm, Coefficients{}, g);
        c.require(std::abs(F.total) <= 1e-4 * std::abs(F.entropy),
                  "R=" + fmt("%g", R) + ": |F|=" + fmt("%.3e", std::abs(F.total)) +
                      " vs 1e-4 entropy " + fmt("%.3e", 1e-4 * std::abs(F.entropy)));
    }
    const double elapsed = now_seconds() - t0;
    c.require(elapsed < 5.0, "runtime over 5 s");
    c.note("runtime " + fmt("%.2f", elapsed) + " s");
    return c;
}

// --- criterion 4: Barenblatt validation --------------------------------------

double barenblatt_error(int n_cells) {
    BarenblattFixture f;
    f.C = 0.5;
    // r_max leaves generous vacuum beyond the support radius (~2.18 at t=2);
    // the wider cells keep the explicit dt large while the max relative error
    // stays orders of magnitude inside the 1e-3 gate.
    const RadialGrid g = RadialGrid::uniform(3, 12.0, n_cells);
    ModelParams p;
    p.d = 3;
    SimulationState s;
    s.M = barenblatt_mass(1.0, f, g);
    p.total_mass = s.M.total();
    StepControls ctl;
    ctl.drift_enabled = false;
    double t = 1.0;
    while (t < 2.0) {
        ctl.dt_cap = 2.0 - t;
        s = step(s, p, Coefficients{}, g, ctl);
        t += s.dt_last;
    }
    const MassFunction ref = barenblatt_mass(t, f, g);
    double worst = 0.0;
    for (int i = 1; i <= g.n_cells; ++i)
        worst = std::max(worst, std::abs(s.M.values[i] - ref.values[i]));
    return worst / ref.total();
}

Check criterion_4() {
    Check c;
    const double t0 = now_seconds();
    const double e2048 = barenblatt_error(2048);
    const double e4096 = barenblatt_error(4096);
    c.require(e2048 <= 1e-3, "n=2048 rel error " + fmt("%.3e", e2048));
    // The conservative scheme converges second order on this problem, so the
    // error at least halves per refinement (it typically quarters).
    const double ratio = e4096 / e2048;
    c.require(ratio >= 0.17 && ratio <= 0.65,
              "refinement ratio " + fmt("%.3f", ratio) + " outside [0.17, 0.65]");
    const double elapsed = now_seconds() - t0;
    c.require(elapsed < 60.0, "runtime over 60 s");
    c.note("err(2048)=" + fmt("%.3e", e2048) + ", err(4096)=" + fmt("%.3e", e4096) +
           ", runtime " + fmt("%.1f", elapsed) + " s");
    return c;
}

// --- criterion 5: free-energy dissipation ------------------------------------

Check criterion_5() {
    Check c;
    for (const char* name : {"subcritical", "critical_radial", "supercritical_blowup"}) {
        const ScenarioResult res = run_scenario(preset(name), false, out_dir());
        const auto& rows = res.trajectory.rows;
        c.require(rows.size() > 5, std::string(name) + ": too few rows");
        if (rows.size() < 2) continue;
        const double peak0 = rows.front().peak_density;
        const double tol = 1e-8 * (1.0 + std::abs(rows.front().free_energy));
        int checked = 0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            // restrict to the pre-blow-up regime on the supercritical run
            if (rows[i].peak_density > 100.0 * peak0) break;
            ++checked;
            if (rows[i].free_energy > rows[i - 1].free_energy + tol) {
                c.require(false, std::string(name) + ": F increased at t=" +
                                     fmt("%.6g", rows[i].t) + " by " +
                                     fmt("%.3e", rows[i].free_energy -
                                                     rows[i - 1].free_energy));
                break;
            }
        }
        c.require(checked > 3, std::string(name) + ": too few pre-blow-up samples");
    }
    c.note("F nonincreasing on 3 preset runs");
    return c;
}

// --- criteria 6/7: critical-mass bisection -----------------------------------

ScenarioConfig bracket_base() {
    ScenarioConfig cfg;
    cfg.d = 3;
    cfg.total_mass = kMcStar3; // overwritten per probe
    cfg.a = CoefficientSpec::constant(1.0);
    cfg.r_max = 2.0;
    cfg.n_cells = 256;
    cfg.t_end = 0.05;
    // Mass-scaled rescaled-extremal spikes: the only bump family that
    // dominates the collapsing barrier at the supercritical end, so the
    // classification threshold is the critical mass itself rather than a
    // family-dependent value.
    cfg.kind = InitialKind::SpikePlusShell;
    cfg.spike_radius = 0.6;
    cfg.spike_mass = cfg.total_mass;
    return cfg;
}

Check criterion_6() {
    Check c;
    const double t0 = now_seconds();
    ScenarioConfig cfg = bracket_base();
    const BracketResult b1 =
        bracket_critical_mass(cfg, 0.5 * kMcStar3, 2.0 * kMcStar3, 8);
    const double mid1 = 0.5 * (b1.lo + b1.hi);
    const double w1 = b1.hi - b1.lo;
    c.require(b1.lo >= (1.0 - 0.015) * kMcStar3 && b1.hi <= (1.0 + 0.015) * kMcStar3,
              "a=1 bracket [" + fmt("%.4g", b1.lo) + ", " + fmt("%.4g", b1.hi) +
                  "] not within 1.5% of " + fmt("%.6g", kMcStar3));

    cfg.a = CoefficientSpec::constant(2.0);
    const double mc2 = std::pow(2.0, 1.5) * kMcStar3;
    const BracketResult b2 = bracket_critical_mass(cfg, 0.5 * mc2, 2.0 * mc2, 8);
    const double mid2 = 0.5 * (b2.lo + b2.hi);
    const double w2 = b2.hi - b2.lo;
    const double ratio = mid2 / mid1;
    const double tol = std::pow(2.0, 1.5) * (w1 / mid1 + w2 / mid2);
    c.require(std::abs(ratio - std::pow(2.0, 1.5)) <= tol,
              "a=2/a=1 threshold ratio " + fmt("%.4f", ratio) + " vs 2^1.5 (tol " +
                  fmt("%.4f", tol) + ")");
    const double elapsed = now_seconds() - t0;
    c.require(elapsed < 900.0, "runtime over 15 min");
    c.note("a=1 mid " + fmt("%.6g", mid1) + ", a=2 mid " + fmt("%.6g", mid2) +
           ", ratio " + fmt("%.4f", ratio) + ", runtime " + fmt("%.0f", elapsed) + " s");
    return c;
}

Check criterion_7() {
    Check c;
    const double t0 = now_seconds();
    ScenarioConfig cfg = bracket_base();
    const BracketResult b1 =
        bracket_critical_mass(cfg, 0.5 * kMcStar3, 2.0 * kMcStar3, 8);
    const double mid1 = 0.5 * (b1.lo + b1.hi);
    const double w1 = b1.hi - b1.lo;

    // a(0)=1 rising to 2 away from the origin, a ≡ 2 beyond r=1; the data is
    // concentrated where a is at its minimum, so the threshold must ignore
    // the doubled far-field diffusivity.
    cfg.a = CoefficientSpec::from_table({{0.0, 1.0}, {0.3, 1.0}, {1.0, 2.0}, {8.0, 2.0}});
    cfg.spike_radius = 0.3;
    const BracketResult b2 =
        bracket_critical_mass(cfg, 0.5 * kMcStar3, 2.0 * kMcStar3, 8);
    const double mid2 = 0.5 * (b2.lo + b2.hi);
    const double w2 = b2.hi - b2.lo;
    c.require(std::abs(mid2 - mid1) <= w1 + w2,
              "localized threshold " + fmt("%.6g", mid2) + " vs a=1 " +
                  fmt("%.6g", mid1) + " beyond bracket width " + fmt("%.3g", w1 + w2));
    const double elapsed = now_seconds() - t0;
    c.require(elapsed < 900.0, "runtime over 15 min");
    c.note("a=1 mid " + fmt("%.6g", mid1) + ", inhomogeneous mid " + fmt("%.6g", mid2) +
           ", runtime " + fmt("%.0f", elapsed) + " s");
    return c;
}

// --- criteria 8/9: barrier blow-up and concentration -------------------------

ScenarioResult supercritical_run() {
    return run_scenario(preset("supercritical_blowup"), false, out_dir());
}

Check criterion_8() {
    Check c;
    const double t0 = now_seconds();
    const ScenarioResult res = supercritical_run();
    c.require(res.ordering_checked && res.ordering.ok, "initial ordering failed");
    c.require(res.exit_code() == 2, "expected blow-up (exit 2), got exit " +
                                        std::to_string(res.exit_code()));
    c.require(res.outcome.t_final <= res.blow_up_time_bound,
              "t_final " + fmt("%.4e", res.outcome.t_final) + " exceeds bound " +
                  fmt("%.4e", res.blow_up_time_bound));
    const RadialGrid g = preset("supercritical_blowup").make_grid();
    const double dr = g.min_spacing();
    int gaps = 0;
    for (const auto& row : res.trajectory.rows)
        if (row.comparison_gap) {
            ++gaps;
            const double eps = 10.0 * dr * std::max(row.peak_density, 1.0);
            if (*row.comparison_gap < -eps) {
                c.require(false, "comparison gap " + fmt("%.3e", *row.comparison_gap) +
                                     " below -eps_grid at t=" + fmt("%.4e", row.t));
                break;
            }
        }
    c.require(gaps > 0, "no comparison gaps sampled");
    const double elapsed = now_seconds() - t0;
    c.require(elapsed < 300.0, "runtime over 5 min");
    c.note("t_final " + fmt("%.4e", res.outcome.t_final) + " <= bound " +
           fmt("%.4e", res.blow_up_time_bound) + ", " + std::to_string(gaps) +
           " gap samples, runtime " + fmt("%.1f", elapsed) + " s");
    return c;
}

Check criterion_9() {
    Check c;
    const double t0 = now_seconds();
    const ScenarioConfig cfg = preset("supercritical_blowup");
    const ScenarioResult res = supercritical_run();
    c.require(res.exit_code() == 2, "expected blow-up (exit 2)");
    const double a0 = cfg.a.eval(0.0);
    const double threshold = 0.9 * std::pow(a0, 1.5) * kMcStar3;
    const double local = res.trajectory.rows.back().local_mass_origin;
    c.require(local >= threshold,
              "local mass " + fmt("%.4g", local) + " below 0.9 a(0)^{3/2} M_c* = " +
                  fmt("%.4g", threshold));
    const double elapsed = now_seconds() - t0;
    c.require(elapsed < 300.0, "runtime over 5 min");
    c.note("M(r_probe=" + fmt("%g", cfg.r_probe) + ") = " + fmt("%.5g", local) +
           " >= " + fmt("%.5g", threshold) + ", runtime " + fmt("%.1f", elapsed) + " s");
    return c;
}

// --- criterion 10: positive-energy blow-up + reverse-Hoelder ------------------

Check criterion_10() {
    Check c;
    const double t0 = now_seconds();
    const ScenarioConfig cfg = preset("positive_energy_blowup");
    c.require(cfg.total_mass > kMcStar3, "preset mass not supercritical");
    const ScenarioResult res = run_scenario(cfg, false, out_dir());
    c.require(!res.trajectory.rows.empty(), "no trajectory rows");
    const double F0 = res.trajectory.rows.front().free_energy;
    c.require(F0 > 0.0, "initial free energy " + fmt("%.4g", F0) + " not positive");
    c.require(res.exit_code() == 2, "expected blow-up (exit 2), got exit " +
                                        std::to_string(res.exit_code()));

    // reverse-Hoelder family: bounded L^{2d/(d+2)} = L^{6/5}, divergent L^m = L^{4/3}
    const double alpha = 2.4; // inside (d/m, (d+2)/2) = (2.25, 2.5)
    std::vector<double> l65, lm;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        const HolderNorms h = reverse_holder_family(delta, alpha, 3);
        l65.push_back(h.l_2d_over_d_plus_2);
        lm.push_back(h.lm);
    }
    // bounded: monotone below the closed-form delta=0 limit with contracting
    // increments (the limit is approached at the slow rate delta^{0.12})
    const double p = 6.0 / 5.0;
    const double l65_limit = std::pow(4.0 * kPi / (3.0 - p * alpha), 1.0 / p);
    c.require(l65[0] < l65[1] && l65[1] < l65[2] && l65[2] < l65_limit &&
                  (l65[2] - l65[1]) < 0.9 * (l65[1] - l65[0]),
              "L^{6/5} not converging below its closed-form limit " +
                  fmt("%.4g", l65_limit) + ": " + fmt("%.4g", l65[0]) + ", " +
                  fmt("%.4g", l65[1]) + ", " + fmt("%.4g", l65[2]));
    c.require(lm[2] > 2.0 * lm[0],
              "L^{4/3} fails to diverge (>2x from delta 1e-2 to 1e-4): " +
                  fmt("%.3g", lm[0]) + ", " + fmt("%.3g", lm[1]) + ", " +
                  fmt("%.3g", lm[2]));
    const double elapsed = now_seconds() - t0;
    c.require(elapsed < 300.0, "runtime over 5 min");
    c.note("F(u0) = " + fmt("%.4g", F0) + " > 0, blow-up at t = " +
           fmt("%.4g", res.outcome.t_final) + ", runtime " + fmt("%.1f", elapsed) + " s");
    return c;
}

// --- criterion 11: critical-radial boundedness -------------------------------

Check run_critical_case(const ScenarioConfig& cfg, const char* label) {
    Check c;
    const ScenarioResult res = run_scenario(cfg, false, out_dir());
    c.require(res.outcome.kind == OutcomeKind::Completed,
              std::string(label) + ": run did not complete (outcome " +
                  res.outcome.detail + ")");
    const auto& rows = res.trajectory.rows;
    if (rows.empty()) {
        c.require(false, std::string(label) + ": no rows");
        return c;
    }
    const double peak0 = rows.front().peak_density;
    double worst = 0.0;
    for (const auto& row : rows) worst = std::max(worst, row.peak_density);
    c.require(worst <= 10.0 * peak0, std::string(label) + ": peak grew " +
                                         fmt("%.2f", worst / peak0) + "x");
    const RadialGrid g = cfg.make_grid();
    const double dr = g.min_spacing();
    int gaps = 0;
    for (const auto& row : rows)
        if (row.comparison_gap) {
            ++gaps;
            const double eps = 10.0 * dr * std::max(row.peak_density, 1.0);
            if (*row.comparison_gap < -eps) {
                c.require(false, std::string(label) + ": supersolution ordering broken at t=" +
                                     fmt("%.4g", row.t));
                break;
            }
        }
    c.require(gaps > 0, std::string(label) + ": no supersolution gap samples");
    c.note(std::string(label) + ": peak ratio " + fmt("%.2f", worst / peak0));
    return c;
}

Check criterion_11() {
    Check c;
    const double t0 = now_seconds();
    ScenarioConfig cfg = preset("critical_supersolution");
    {
        // horizon: 50 characteristic (porous-medium) times of the initial spike
        const RadialGrid g = cfg.make_grid();
        const MassFunction M = build_initial_mass(cfg, g, norm_profile(3));
        const double peak0 = density_from_mass(M, g).peak();
        const double t_char =
            cfg.spike_radius * cfg.spike_radius / std::pow(peak0, 1.0 / 3.0);
        cfg.t_end = 50.0 * t_char;
        cfg.cadence = cfg.t_end / 200.0;
        c.note("t_end = 50 t_char = " + fmt("%.3g", cfg.t_end));
    }
    cfg.output_path = "critical_supersolution_a1.csv";
    const Check c1 = run_critical_case(cfg, "a=1");
    c.require(c1.ok, c1.detail);
    if (c1.ok) c.note(c1.detail);

    cfg.a = CoefficientSpec::from_table({{0.0, 1.0}, {1.0, 2.0}, {8.0, 2.0}});
    cfg.output_path = "critical_supersolution_inhom.csv";
    const Check c2 = run_critical_case(cfg, "inhomogeneous a");
    c.require(c2.ok, c2.detail);
    if (c2.ok) c.note(c2.detail);

    const double elapsed = now_seconds() - t0;
    c.require(elapsed < 600.0, "runtime over 10 min");
    c.note("runtime " + fmt("%.0f", elapsed) + " s");
    return c;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..11>\n");
        return 2;
    }
    const int n = std::atoi(argv[1]);
    Check c;
    switch (n) {
    case 1: c = criterion_1(); break;
    case 2: c = criterion_2(); break;
    case 3: c = criterion_3(); break;
    case 4: c = criterion_4(); break;
    case 5: c = criterion_5(); break;
    case 6: c = criterion_6(); break;
    case 7: c = criterion_7(); break;
    case 8: c = criterion_8(); break;
    case 9: c = criterion_9(); break;
    case 10: c = criterion_10(); break;
    case 11: c = criterion_11(); break;
    default:
        std::fprintf(stderr, "usage: acceptance <criterion 1..11>\n");
        return 2;
    }
    std::printf("criterion %d: %s%s%s\n", n, c.ok ? "PASS" : "FAIL",
                c.detail.empty() ? "" : " - ", c.detail.c_str());
    return c.ok ? 0 : 1;
}
