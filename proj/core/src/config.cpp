#include "pks/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pks {

RadialGrid ScenarioConfig::make_grid() const {
    if (grading > 1.0) return RadialGrid::graded(d, r_max, n_cells, grading);
    return RadialGrid::uniform(d, r_max, n_cells);
}

Coefficients ScenarioConfig::make_coefficients() const {
    Coefficients c;
    c.a = a;
    c.gamma = gamma;
    c.monotone_near_origin = monotone_near_origin;
    c.delta0 = delta0;
    return c;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_int(const std::string& s, int& out) {
    try {
        std::size_t pos = 0;
        out = std::stoi(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_bool(const std::string& s, bool& out) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") { out = true; return true; }
    if (s == "false" || s == "0" || s == "no" || s == "off") { out = false; return true; }
    return false;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    return parts;
}

} // namespace

std::optional<CoefficientSpec> parse_coefficient(const std::string& text, std::string* error) {
    const std::string t = trim(text);
    auto fail = [&](const std::string& msg) -> std::optional<CoefficientSpec> {
        if (error) *error = msg;
        return std::nullopt;
    };
    double v = 0.0;
    if (parse_double(t, v)) return CoefficientSpec::constant(v);

    const std::size_t colon = t.find(':');
    if (colon == std::string::npos)
        return fail("expected a number or constant:/table:/poly: spec, got '" + t + "'");
    const std::string head = trim(t.substr(0, colon));
    const std::string body = trim(t.substr(colon + 1));
    if (head == "constant") {
        if (!parse_double(body, v)) return fail("constant: expects a number, got '" + body + "'");
        return CoefficientSpec::constant(v);
    }
    if (head == "poly") {
        std::vector<double> coeffs;
        for (const std::string& part : split(body, ',')) {
            if (!parse_double(trim(part), v))
                return fail("poly: bad coefficient '" + trim(part) + "'");
            coeffs.push_back(v);
        }
        if (coeffs.empty()) return fail("poly: needs at least one coefficient");
        return CoefficientSpec::polynomial(std::move(coeffs));
    }
    if (head == "table") {
        std::vector<std::pair<double, double>> table;
        for (const std::string& part : split(body, ',')) {
            const std::vector<std::string> rv = split(trim(part), ':');
            double r = 0.0, val = 0.0;
            if (rv.size() != 2 || !parse_double(trim(rv[0]), r) || !parse_double(trim(rv[1]), val))
                return fail("table: entries must be r:value, got '" + trim(part) + "'");
            table.emplace_back(r, val);
        }
        if (table.size() < 2) return fail("table: needs at least two entries");
        for (std::size_t i = 1; i < table.size(); ++i)
            if (table[i].first <= table[i - 1].first)
                return fail("table: radii must be strictly increasing");
        return CoefficientSpec::from_table(std::move(table));
    }
    return fail("unknown coefficient kind '" + head + "'");
}

namespace {

struct RawEntry {
    int line = 0;
    std::string value;
};

const std::set<std::string> kKnownKeys = {
    "model.d", "model.total_mass", "model.mu",
    "coefficients.a", "coefficients.gamma",
    "coefficients.monotone_near_origin", "coefficients.delta0",
    "grid.r_max", "grid.n_cells", "grid.grading",
    "time.t_end", "time.cfl", "time.dt_min", "time.u_blowup", "time.drift",
    "initial.kind", "initial.width", "initial.r_inner", "initial.r_outer",
    "initial.spike_radius", "initial.spike_mass",
    "initial.shell_radius", "initial.shell_width", "initial.table",
    "barrier.R0", "barrier.M0", "barrier.monitor", "barrier.fixed_R",
    "output.path", "output.cadence", "output.r_probe",
    "profile.step",
};

} // namespace

ParseResult parse_config(const std::string& text) {
    ParseResult res;
    std::vector<ConfigError>& errors = res.errors;
    std::map<std::string, RawEntry> entries;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back({lineno, "expected 'section.key = value', got '" + line + "'"});
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.find('.') == std::string::npos) {
            errors.push_back({lineno, "key '" + key + "' has no section prefix"});
            continue;
        }
        if (!kKnownKeys.count(key)) {
            errors.push_back({lineno, "unknown key '" + key + "'"});
            continue;
        }
        if (value.empty()) {
            errors.push_back({lineno, "empty value for '" + key + "'"});
            continue;
        }
        if (entries.count(key))
            errors.push_back({lineno, "duplicate key '" + key + "' (first set on line " +
                                          std::to_string(entries[key].line) + ")"});
        else
            entries[key] = {lineno, value};
    }

    ScenarioConfig cfg;

    auto take = [&](const std::string& key) -> const RawEntry* {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto get_double = [&](const std::string& key, double& target) {
        if (const RawEntry* e = take(key)) {
            double v = 0.0;
            if (parse_double(e->value, v)) target = v;
            else errors.push_back({e->line, key + ": not a number: '" + e->value + "'"});
        }
    };
    auto get_int = [&](const std::string& key, int& target) {
        if (const RawEntry* e = take(key)) {
            int v = 0;
            if (parse_int(e->value, v)) target = v;
            else errors.push_back({e->line, key + ": not an integer: '" + e->value + "'"});
        }
    };
    auto get_bool = [&](const std::string& key, bool& target) {
        if (const RawEntry* e = take(key)) {
            bool v = false;
            if (parse_bool(e->value, v)) target = v;
            else errors.push_back({e->line, key + ": not a boolean: '" + e->value + "'"});
        }
    };
    auto get_coeff = [&](const std::string& key, CoefficientSpec& target) {
        if (const RawEntry* e = take(key)) {
            std::string err;
            if (auto spec = parse_coefficient(e->value, &err)) target = *spec;
            else errors.push_back({e->line, key + ": " + err});
        }
    };

    get_int("model.d", cfg.d);
    get_double("model.total_mass", cfg.total_mass);
    get_double("model.mu", cfg.mu);

    get_coeff("coefficients.a", cfg.a);
    get_coeff("coefficients.gamma", cfg.gamma);
    get_bool("coefficients.monotone_near_origin", cfg.monotone_near_origin);
    get_double("coefficients.delta0", cfg.delta0);

    get_double("grid.r_max", cfg.r_max);
    get_int("grid.n_cells", cfg.n_cells);
    get_double("grid.grading", cfg.grading);

    get_double("time.t_end", cfg.t_end);
    get_double("time.cfl", cfg.cfl);
    get_double("time.dt_min", cfg.dt_min);
    get_double("time.u_blowup", cfg.u_blowup);
    get_bool("time.drift", cfg.drift);

    if (const RawEntry* e = take("initial.kind")) {
        const std::string& k = e->value;
        if (k == "barrier_scaled") cfg.kind = InitialKind::BarrierScaled;
        else if (k == "gaussian_bump") cfg.kind = InitialKind::GaussianBump;
        else if (k == "annulus") cfg.kind = InitialKind::Annulus;
        else if (k == "spike_plus_shell") cfg.kind = InitialKind::SpikePlusShell;
        else if (k == "table") cfg.kind = InitialKind::Table;
        else errors.push_back({e->line, "initial.kind: unknown kind '" + k + "'"});
    }
    get_double("initial.width", cfg.width);
    get_double("initial.r_inner", cfg.r_inner);
    get_double("initial.r_outer", cfg.r_outer);
    get_double("initial.spike_radius", cfg.spike_radius);
    get_double("initial.spike_mass", cfg.spike_mass);
    get_double("initial.shell_radius", cfg.shell_radius);
    get_double("initial.shell_width", cfg.shell_width);
    if (const RawEntry* e = take("initial.table")) {
        for (const std::string& part : split(e->value, ',')) {
            const std::vector<std::string> rv = split(trim(part), ':');
            double r = 0.0, v = 0.0;
            if (rv.size() != 2 || !parse_double(trim(rv[0]), r) || !parse_double(trim(rv[1]), v)) {
                errors.push_back({e->line, "initial.table: entries must be r:value"});
                cfg.table.clear();
                break;
            }
            cfg.table.emplace_back(r, v);
        }
    }

    cfg.has_barrier = entries.count("barrier.R0") || entries.count("barrier.M0") ||
                      entries.count("barrier.monitor") || entries.count("barrier.fixed_R");
    get_double("barrier.R0", cfg.R0);
    get_double("barrier.M0", cfg.M0);
    get_double("barrier.fixed_R", cfg.fixed_R);
    if (const RawEntry* e = take("barrier.monitor")) {
        if (e->value == "none") cfg.monitor = MonitorMode::None;
        else if (e->value == "collapsing") cfg.monitor = MonitorMode::Collapsing;
        else if (e->value == "fixed") cfg.monitor = MonitorMode::Fixed;
        else errors.push_back({e->line, "barrier.monitor: expected none|collapsing|fixed"});
    } else if (cfg.has_barrier) {
        cfg.monitor = MonitorMode::Collapsing;
    }

    if (const RawEntry* e = take("output.path")) cfg.output_path = e->value;
    get_double("output.cadence", cfg.cadence);
    get_double("output.r_probe", cfg.r_probe);
    get_double("profile.step", cfg.profile_step);

    // Semantic validation; every violation is reported at the defining line
    // (or line 0 if the key was absent).
    auto line_of = [&](const std::string& key) {
        auto it = entries.find(key);
        return it == entries.end() ? 0 : it->second.line;
    };
    if (cfg.d < 3)
        errors.push_back({line_of("model.d"), "d must be >= 3"});
    if (!(cfg.total_mass > 0.0))
        errors.push_back({line_of("model.total_mass"), "model.total_mass must be positive"});
    if (cfg.mu != 0.0 && !(cfg.mu > 0.0 && cfg.mu <= 1.0))
        errors.push_back({line_of("model.mu"), "model.mu must lie in (0, 1]"});
    if (!(cfg.r_max > 0.0))
        errors.push_back({line_of("grid.r_max"), "grid.r_max must be positive"});
    if (cfg.n_cells < 8)
        errors.push_back({line_of("grid.n_cells"), "grid.n_cells must be at least 8"});
    if (!(cfg.grading >= 1.0))
        errors.push_back({line_of("grid.grading"), "grid.grading must be >= 1"});
    if (!(cfg.t_end > 0.0))
        errors.push_back({line_of("time.t_end"), "time.t_end must be positive"});
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0))
        errors.push_back({line_of("time.cfl"), "time.cfl must lie in (0, 1]"});
    if (!(cfg.dt_min > 0.0))
        errors.push_back({line_of("time.dt_min"), "time.dt_min must be positive"});
    if (cfg.u_blowup < 0.0)
        errors.push_back({line_of("time.u_blowup"), "time.u_blowup must be nonnegative"});
    if (!(cfg.profile_step > 0.0))
        errors.push_back({line_of("profile.step"), "profile.step must be positive"});
    if (cfg.kind == InitialKind::GaussianBump && !(cfg.width > 0.0))
        errors.push_back({line_of("initial.width"), "initial.width must be positive"});
    if (cfg.kind == InitialKind::Annulus &&
        !(cfg.r_inner >= 0.0 && cfg.r_outer > cfg.r_inner))
        errors.push_back({line_of("initial.r_outer"),
                          "annulus needs 0 <= r_inner < r_outer"});
    if (cfg.kind == InitialKind::Table && cfg.table.size() < 2)
        errors.push_back({line_of("initial.table"),
                          "initial.kind = table requires initial.table with >= 2 entries"});
    if (cfg.kind == InitialKind::SpikePlusShell) {
        if (!(cfg.spike_radius > 0.0))
            errors.push_back({line_of("initial.spike_radius"),
                              "initial.spike_radius must be positive"});
        if (!(cfg.spike_mass > 0.0 && cfg.spike_mass <= cfg.total_mass))
            errors.push_back({line_of("initial.spike_mass"),
                              "initial.spike_mass must lie in (0, total_mass]"});
    }
    if (cfg.kind == InitialKind::BarrierScaled && !cfg.has_barrier)
        errors.push_back({line_of("initial.kind"),
                          "initial.kind = barrier_scaled requires a barrier section"});
    if (cfg.has_barrier && cfg.monitor == MonitorMode::Collapsing) {
        if (!(cfg.R0 > 0.0))
            errors.push_back({line_of("barrier.R0"), "barrier.R0 must be positive"});
        if (!(cfg.M0 > 0.0))
            errors.push_back({line_of("barrier.M0"), "barrier.M0 must be positive"});
        if (cfg.R0 > cfg.r_max)
            errors.push_back({line_of("barrier.R0"), "barrier.R0 must not exceed grid.r_max"});
    }
    if (cfg.monitor == MonitorMode::Fixed && !(cfg.fixed_R > 0.0))
        errors.push_back({line_of("barrier.fixed_R"),
                          "barrier.monitor = fixed requires barrier.fixed_R > 0"});
    if (cfg.cadence < 0.0)
        errors.push_back({line_of("output.cadence"), "output.cadence must be nonnegative"});
    if (cfg.r_probe < 0.0 || cfg.r_probe > cfg.r_max)
        errors.push_back({line_of("output.r_probe"), "output.r_probe must lie in [0, r_max]"});

    std::sort(errors.begin(), errors.end(),
              [](const ConfigError& x, const ConfigError& y) { return x.line < y.line; });
    if (errors.empty()) res.config = std::move(cfg);
    return res;
}

ParseResult parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult res;
        res.errors.push_back({0, "cannot open config file '" + path + "'"});
        return res;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace pks
