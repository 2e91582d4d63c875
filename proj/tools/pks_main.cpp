#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "pks/config.hpp"
#include "pks/diagnostics.hpp"
#include "pks/profile.hpp"
#include "pks/scenario.hpp"

namespace {

// 0 ok, 2 blow-up, 3 comparison violated, 4 config error, 5 numerical failure.

int cmd_profile(int d, double height, double step) {
    const pks::StationaryProfile raw = pks::shoot_profile(d, height, step);
    const pks::StationaryProfile norm = pks::normalize_unit_support(raw);
    const pks::SharpConstants k = pks::sharp_constants(norm);
    std::printf("d              = %d\n", d);
    std::printf("center_height  = %.17g\n", height);
    std::printf("support_radius = %.17g\n", raw.support_radius);
    std::printf("total_mass     = %.17g\n", raw.total_mass);
    std::printf("c_d            = %.17g\n", k.c_d);
    std::printf("M_c_star       = %.17g\n", k.M_c_star);
    std::printf("C_star         = %.17g\n", k.C_star);
    return 0;
}

pks::ScenarioConfig load_config(const std::string& file, const std::string& preset_name) {
    pks::ScenarioConfig cfg;
    if (!preset_name.empty()) cfg = pks::preset(preset_name);
    if (!file.empty()) {
        pks::ParseResult parsed = pks::parse_config_file(file);
        if (!parsed.ok()) {
            for (const pks::ConfigError& e : parsed.errors)
                std::fprintf(stderr, "%s:%d: %s\n", file.c_str(), e.line, e.message.c_str());
            throw std::invalid_argument("invalid configuration");
        }
        cfg = *parsed.config;
    }
    return cfg;
}

std::string output_dir_from_env() {
    const char* dir = std::getenv("PKS_OUTPUT_DIR");
    return dir ? std::string(dir) : std::string();
}

int cmd_simulate(const std::string& file, const std::string& preset_name, bool force) {
    const pks::ScenarioConfig cfg = load_config(file, preset_name);
    const pks::ScenarioResult res = pks::run_scenario(cfg, force, output_dir_from_env());
    if (res.ordering_checked) {
        std::printf("initial ordering: %s (worst margin %.6g at r = %.6g)\n",
                    res.ordering.ok ? "ok" : "VIOLATED", res.ordering.worst_margin,
                    res.ordering.worst_radius);
        if (res.refused) {
            std::fprintf(stderr,
                         "refusing to run: initial data does not dominate the barrier "
                         "(use --force to override)\n");
            return 4;
        }
        std::printf("mu = %.17g, blow_up_time_bound = %.17g\n", res.mu,
                    res.blow_up_time_bound);
    }
    const char* kind = "completed";
    switch (res.outcome.kind) {
    case pks::OutcomeKind::Completed: kind = "completed"; break;
    case pks::OutcomeKind::BlowUp: kind = "blow-up"; break;
    case pks::OutcomeKind::ComparisonViolated: kind = "comparison-violated"; break;
    case pks::OutcomeKind::NumericalFailure: kind = "numerical-failure"; break;
    }
    std::printf("outcome = %s at t = %.17g (peak %.17g)\n", kind, res.outcome.t_final,
                res.outcome.peak_density);
    if (!res.outcome.detail.empty()) std::printf("detail: %s\n", res.outcome.detail.c_str());
    std::printf("trajectory: %s (%zu rows)\n", res.csv_path.c_str(),
                res.trajectory.rows.size());
    return res.exit_code();
}

int cmd_bracket(const std::string& file, double lo, double hi, int iters) {
    pks::ParseResult parsed = pks::parse_config_file(file);
    if (!parsed.ok()) {
        for (const pks::ConfigError& e : parsed.errors)
            std::fprintf(stderr, "%s:%d: %s\n", file.c_str(), e.line, e.message.c_str());
        return 4;
    }
    const pks::BracketResult res = pks::bracket_critical_mass(*parsed.config, lo, hi, iters);
    for (const pks::BracketStep& s : res.steps)
        std::printf("probe %.17g -> %s   bracket [%.17g, %.17g]\n", s.probe,
                    s.blew_up ? "blow-up" : "global", s.lo, s.hi);
    std::printf("critical mass in [%.17g, %.17g] (width %.6g)\n", res.lo, res.hi,
                res.hi - res.lo);
    return 0;
}

int cmd_validate(const std::string& file) {
    pks::ParseResult parsed = pks::parse_config_file(file);
    if (!parsed.ok()) {
        for (const pks::ConfigError& e : parsed.errors)
            std::fprintf(stderr, "%s:%d: %s\n", file.c_str(), e.line, e.message.c_str());
        return 4;
    }
    std::printf("%s: ok\n", file.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radially symmetric aggregation-diffusion laboratory"};
    app.require_subcommand(1);

    int d = 3;
    double height = 1.0;
    double step = 2e-4;
    auto* profile = app.add_subcommand("profile", "Shoot the stationary profile");
    profile->add_option("--dim", d, "Spatial dimension (>= 3)")->required();
    profile->add_option("--height", height, "Center height V(0)");
    profile->add_option("--step", step, "RK4 step size");

    std::string config_file, preset_name;
    bool force = false;
    auto* simulate = app.add_subcommand("simulate", "Run a scenario");
    simulate->add_option("--config", config_file, "Configuration file");
    simulate->add_option("--preset", preset_name, "Preset name");
    simulate->add_flag("--force", force, "Run even if the initial ordering fails");

    std::string bracket_file;
    double lo = 0.0, hi = 0.0;
    int iters = 10;
    auto* bracket = app.add_subcommand("bracket", "Bisect the critical mass");
    bracket->add_option("--config", bracket_file, "Configuration file")->required();
    bracket->add_option("--lo", lo, "Mass known to stay global")->required();
    bracket->add_option("--hi", hi, "Mass known to blow up")->required();
    bracket->add_option("--iters", iters, "Bisection iterations");

    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "Check a configuration file");
    validate->add_option("--config", validate_file, "Configuration file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(profile)) return cmd_profile(d, height, step);
        if (app.got_subcommand(simulate)) {
            if (config_file.empty() && preset_name.empty()) {
                std::fprintf(stderr, "simulate: need --config or --preset\n");
                return 4;
            }
            return cmd_simulate(config_file, preset_name, force);
        }
        if (app.got_subcommand(bracket)) return cmd_bracket(bracket_file, lo, hi, iters);
        if (app.got_subcommand(validate)) return cmd_validate(validate_file);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    }
    return 0;
}
