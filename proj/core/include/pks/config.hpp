#ifndef PKS_CONFIG_HPP
#define PKS_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "pks/radial.hpp"

// Line-oriented scenario configuration: `section.key = value`, `#` comments.
// Parsing collects every error (with line numbers), not just the first.

namespace pks {

enum class InitialKind { BarrierScaled, GaussianBump, Annulus, SpikePlusShell, Table };
enum class MonitorMode { None, Collapsing, Fixed };

struct ScenarioConfig {
    // model
    int d = 3;
    double total_mass = 0.0;
    double mu = 0.0; // explicit rescaling ratio; 0 = derive from barrier (or 1)

    // coefficients
    CoefficientSpec a = CoefficientSpec::constant(1.0);
    CoefficientSpec gamma = CoefficientSpec::constant(0.0);
    bool monotone_near_origin = false;
    double delta0 = 0.0;

    // grid
    double r_max = 8.0;
    int n_cells = 256;
    double grading = 1.0;

    // time
    double t_end = 1.0;
    double cfl = 0.4;
    double dt_min = 1e-12;
    double u_blowup = 0.0; // 0 = 1e6 x initial peak
    bool drift = true;     // false = pure porous-medium diffusion (validation runs)

    // initial data
    InitialKind kind = InitialKind::GaussianBump;
    double width = 0.5;        // gaussian_bump
    double r_inner = 0.0;      // annulus
    double r_outer = 1.0;      // annulus
    double spike_radius = 0.2; // spike_plus_shell
    double spike_mass = 0.0;   // spike_plus_shell
    double shell_radius = 0.0; // barrier_scaled / spike_plus_shell surplus shell
    double shell_width = 0.1;
    std::vector<std::pair<double, double>> table; // table kind

    // barrier (optional)
    bool has_barrier = false;
    MonitorMode monitor = MonitorMode::None;
    double R0 = 0.0;
    double M0 = 0.0;
    double fixed_R = 0.0; // fixed supersolution radius

    // output
    std::string output_path = "trajectory.csv";
    double cadence = 0.0; // diagnostics interval; 0 = t_end/200
    double r_probe = 0.0; // 0 = r_max/10

    // shooting resolution for the profile underlying barriers/constants
    double profile_step = 2e-4;

    RadialGrid make_grid() const;
    Coefficients make_coefficients() const;
};

struct ConfigError {
    int line = 0;
    std::string message;
};

struct ParseResult {
    std::optional<ScenarioConfig> config;
    std::vector<ConfigError> errors;

    bool ok() const { return config.has_value() && errors.empty(); }
};

ParseResult parse_config(const std::string& text);
ParseResult parse_config_file(const std::string& path);

// Parses a coefficient spec string: a bare number, "constant:V",
// "table:r0:v0,r1:v1,...", or "poly:c0,c1,...".
std::optional<CoefficientSpec> parse_coefficient(const std::string& text,
                                                 std::string* error = nullptr);

} // namespace pks

#endif
