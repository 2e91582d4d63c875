#ifndef PKS_SCENARIO_HPP
#define PKS_SCENARIO_HPP

#include <string>
#include <vector>

#include "pks/config.hpp"
#include "pks/evolution.hpp"

// End-to-end scenario harness: presets, initial-data construction, the CSV
// trajectory writer and the critical-mass bisection driver.

namespace pks {

// Known presets: subcritical, critical_radial, supercritical_blowup,
// positive_energy_blowup, barenblatt_validation, critical_supersolution.
// Throws std::invalid_argument for unknown names.
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Initial mass function of the ORIGINAL (unrescaled) data on the grid faces.
// Needs the normalized stationary profile for barrier_scaled/spike_plus_shell.
MassFunction build_initial_mass(const ScenarioConfig& cfg, const RadialGrid& g,
                                const StationaryProfile& normalized);

struct ScenarioResult {
    Outcome outcome;
    Trajectory trajectory;
    OrderingCheck ordering;     // meaningful only when a collapsing barrier is set
    bool ordering_checked = false;
    bool refused = false;       // ordering failed and force was not set
    double mu = 1.0;
    double blow_up_time_bound = 0.0; // 0 when no collapsing barrier
    std::string csv_path;

    int exit_code() const;
};

// Runs a scenario to completion and writes the trajectory CSV. If a
// collapsing barrier is configured and the initial ordering fails, the run is
// refused (exit code 4) unless force is set. output_dir overrides the
// directory of cfg.output_path ("" = as configured).
ScenarioResult run_scenario(const ScenarioConfig& cfg, bool force = false,
                            const std::string& output_dir = "");

// Exact CSV schema shared by every emitter.
std::string csv_header();
void write_csv(const Trajectory& traj, const std::string& path);

struct BracketStep {
    double lo = 0.0;
    double hi = 0.0;
    double probe = 0.0;     // mass classified this step
    bool blew_up = false;
};

struct BracketResult {
    double lo = 0.0;            // largest mass observed global
    double hi = 0.0;            // smallest mass observed blow-up
    std::vector<BracketStep> steps;
};

// Bisects the critical mass of the family obtained from cfg by scaling
// initial total mass; lo must classify as global and hi as blow-up (endpoints
// verified concurrently, then midpoints sequentially). Deterministic.
BracketResult bracket_critical_mass(const ScenarioConfig& cfg, double lo, double hi,
                                    int iters);

} // namespace pks

#endif
