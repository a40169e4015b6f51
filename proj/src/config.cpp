#include "fols/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fols {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), "parse_config: cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_string(buf.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                fail(origin + ":" + std::to_string(lineno) + ": malformed section header: " + t);
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                fail(origin + ":" + std::to_string(lineno) + ": empty section name");
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            fail(origin + ":" + std::to_string(lineno) + ": expected 'key = value', got: " + t);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            fail(origin + ":" + std::to_string(lineno) + ": empty key");
        if (section.empty())
            fail(origin + ":" + std::to_string(lineno) + ": key outside any [section]");
        auto& sec = cfg.sections_[section];
        auto it = sec.find(key);
        if (it != sec.end())
            fail(origin + ":" + std::to_string(lineno) + ": duplicate key '" + section + "." + key +
                 "' (first defined at line " + std::to_string(it->second.line) + ")");
        sec.emplace(key, ConfigEntry{value, lineno, false});
    }
    return cfg;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end() || !s->second.count(key))
        fail(origin_ + ": missing required key '" + section + "." + key + "'");
    const ConfigEntry& e = s->second.at(key);
    e.consumed = true;
    return e.value;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
    std::string v = get_string(section, key);
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        fail(origin_ + ": key '" + section + "." + key + "' is not a number: " + v);
    }
    if (pos != v.size())
        fail(origin_ + ": trailing junk in number for '" + section + "." + key + "': " + v);
    return out;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int ConfigFile::get_int(const std::string& section, const std::string& key) const {
    double v = get_double(section, key);
    int out = static_cast<int>(std::lround(v));
    if (std::abs(v - out) > 1e-9)
        fail(origin_ + ": key '" + section + "." + key + "' must be an integer");
    return out;
}

int ConfigFile::get_int(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> ConfigFile::get_double_list(const std::string& section,
                                                const std::string& key) const {
    std::string v = get_string(section, key);
    std::vector<double> out;
    std::istringstream is(v);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            fail(origin_ + ": bad list entry for '" + section + "." + key + "': " + tok);
        }
    }
    return out;
}

void ConfigFile::validate_consumed() const {
    for (const auto& [sec, entries] : sections_)
        for (const auto& [key, e] : entries)
            if (!e.consumed)
                fail(origin_ + ":" + std::to_string(e.line) + ": unknown key '" + sec + "." + key +
                     "'");
}

std::map<std::string, std::string> ConfigFile::echo() const {
    std::map<std::string, std::string> out;
    for (const auto& [sec, entries] : sections_)
        for (const auto& [key, e] : entries) out[sec + "." + key] = e.value;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

double bump01(double q) {
    if (q >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - q * q));
}

TimeCoeff parse_time_coeff(const std::string& text, const std::string& what) {
    // "const:<c>" (or a bare number) | "sin:<mean>:<amplitude>:<period>"
    std::vector<std::string> parts;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ':')) parts.push_back(tok);
    try {
        if (parts.size() == 1) return TimeCoeff::constant(std::stod(parts[0]));
        if (parts.size() == 2 && parts[0] == "const") return TimeCoeff::constant(std::stod(parts[1]));
        if (parts.size() == 4 && parts[0] == "sin")
            return TimeCoeff::sinusoid(std::stod(parts[1]), std::stod(parts[2]), std::stod(parts[3]));
    } catch (const std::exception&) {
    }
    fail(what + ": expected '<c>', 'const:<c>' or 'sin:<mean>:<amp>:<period>', got: " + text);
}

} // namespace

ScalarField build_initial(const InitialSpec& spec, const PolarGrid& g) {
    ScalarField u(g);
    switch (spec.kind) {
        case InitialSpec::Kind::Zero:
            break;
        case InitialSpec::Kind::RingBump: {
            for (int i = 0; i < g.n_r; ++i) {
                double v = spec.amp * bump01((g.radius(i) - spec.center_r) / spec.width);
                for (int j = 0; j < g.n_theta; ++j) u.at(i, j) = v;
            }
            if (u.center) u.center = spec.amp * bump01(spec.center_r / spec.width);
            break;
        }
        case InitialSpec::Kind::Bump:
        case InitialSpec::Kind::TwoBump: {
            double cx = spec.center_r * std::cos(spec.center_theta);
            double cy = spec.center_r * std::sin(spec.center_theta);
            bool two = spec.kind == InitialSpec::Kind::TwoBump;
            for (int i = 0; i < g.n_r; ++i) {
                double r = g.radius(i);
                for (int j = 0; j < g.n_theta; ++j) {
                    double x = r * std::cos(g.angle(j));
                    double y = r * std::sin(g.angle(j));
                    double v = spec.amp * bump01(std::hypot(x - cx, y - cy) / spec.width);
                    if (two)
                        v += spec.amp2 * bump01(std::hypot(x + cx, y - cy) / spec.width);
                    u.at(i, j) = v;
                }
            }
            if (u.center) {
                double v = spec.amp * bump01(std::hypot(cx, cy) / spec.width);
                if (two) v += spec.amp2 * bump01(std::hypot(cx, cy) / spec.width);
                u.center = v;
            }
            break;
        }
    }
    return u;
}

namespace {

RunConfig read_run_config(const ConfigFile& cfg) {
    RunConfig out;

    // [grid]
    std::string kind = cfg.get_string("grid", "kind");
    GridKind gk;
    if (kind == "disk")
        gk = GridKind::Disk;
    else if (kind == "annulus")
        gk = GridKind::Annulus;
    else
        fail(cfg.origin() + ": grid.kind must be 'disk' or 'annulus', got: " + kind);
    int n_theta = cfg.get_int("grid", "n_theta");
    if (n_theta % 2 != 0) fail(cfg.origin() + ": n_theta must be even");
    out.grid = build_grid(gk, cfg.get_double("grid", "r_inner", 0.0),
                          cfg.get_double("grid", "r_outer"), cfg.get_int("grid", "n_r"), n_theta);

    // [nonlinearity]
    std::string variant = cfg.get_string("nonlinearity", "variant");
    if (variant == "henon") {
        out.nonlinearity = make_henon(
            parse_time_coeff(cfg.get_string("nonlinearity", "a"), "nonlinearity.a"),
            parse_time_coeff(cfg.get_string("nonlinearity", "b"), "nonlinearity.b"),
            cfg.get_double("nonlinearity", "alpha"), cfg.get_double("nonlinearity", "beta"),
            cfg.get_double("nonlinearity", "p"));
    } else if (variant == "translation") {
        out.nonlinearity = make_translation(
            parse_time_coeff(cfg.get_string("nonlinearity", "a"), "nonlinearity.a"),
            parse_time_coeff(cfg.get_string("nonlinearity", "b"), "nonlinearity.b"),
            cfg.get_double("nonlinearity", "p"));
    } else if (variant == "potential") {
        out.nonlinearity = make_potential(cfg.get_double("nonlinearity", "v0", 0.0),
                                          cfg.get_double("nonlinearity", "v2"),
                                          cfg.get_double("nonlinearity", "core_amp", 0.0));
    } else if (variant == "example1") {
        Example1Params p;
        p.p_odd = cfg.get_int("nonlinearity", "p", 3);
        p.lambda = cfg.get_double("nonlinearity", "lambda");
        p.lambda_out = cfg.get_double("nonlinearity", "lambda_out");
        p.m_star = cfg.get_double("nonlinearity", "m_star");
        p.r_star = cfg.get_double("nonlinearity", "r_star");
        p.band_lo = cfg.get_double("nonlinearity", "band_lo");
        p.band_hi = cfg.get_double("nonlinearity", "band_hi");
        out.nonlinearity = build_example1(p);
    } else {
        fail(cfg.origin() + ": unknown nonlinearity.variant '" + variant +
             "' (example2 runs are driven by the example2 command, not configs)");
    }

    // [initial]
    std::string ik = cfg.get_string("initial", "kind", "zero");
    if (ik == "zero")
        out.initial.kind = InitialSpec::Kind::Zero;
    else if (ik == "ring")
        out.initial.kind = InitialSpec::Kind::RingBump;
    else if (ik == "bump")
        out.initial.kind = InitialSpec::Kind::Bump;
    else if (ik == "two_bump")
        out.initial.kind = InitialSpec::Kind::TwoBump;
    else
        fail(cfg.origin() + ": unknown initial.kind '" + ik + "'");
    if (out.initial.kind != InitialSpec::Kind::Zero) {
        out.initial.amp = cfg.get_double("initial", "amp");
        out.initial.amp2 = cfg.get_double("initial", "amp2", 0.0);
        out.initial.center_r = cfg.get_double("initial", "center_r");
        out.initial.center_theta = cfg.get_double("initial", "center_theta", 0.0);
        out.initial.width = cfg.get_double("initial", "width");
        require(out.initial.width > 0.0, "initial.width must be positive");
        if (out.initial.kind == InitialSpec::Kind::TwoBump)
            require(std::abs(out.initial.amp2) <= std::abs(out.initial.amp),
                    "initial.amp2 must not exceed initial.amp (reflection inequality)");
    }

    // [solver]
    out.solver.dt = cfg.get_double("solver", "dt");
    require(out.solver.dt > 0.0, "solver.dt must be positive");
    out.solver.t_end = cfg.get_double("solver", "t_end");
    require(out.solver.t_end > 0.0, "solver.t_end must be positive");
    std::string scheme = cfg.get_string("solver", "scheme", "imex");
    if (scheme == "imex")
        out.solver.scheme = Scheme::IMEX;
    else if (scheme == "explicit")
        out.solver.scheme = Scheme::FullyExplicit;
    else
        fail(cfg.origin() + ": solver.scheme must be 'imex' or 'explicit'");
    out.solver.linear_solve_tol = cfg.get_double("solver", "linear_solve_tol", 1e-10);
    out.solver.m1 = cfg.get_double("solver", "m1");
    require(out.solver.m1 > 0.0, "solver.m1 must be positive");
    out.solver.snapshot_stride = cfg.get_int("solver", "snapshot_stride", 0);
    if (cfg.has("solver", "snapshot_times"))
        out.solver.snapshot_times = cfg.get_double_list("solver", "snapshot_times");

    // [diagnostics]
    out.report_tols.deficit_tol_factor = cfg.get_double("diagnostics", "deficit_tol_factor", 10.0);
    out.report_tols.deficit_tol_abs = cfg.get_double("diagnostics", "deficit_tol_abs", -1.0);
    out.omega_tols.cluster_tol = cfg.get_double("diagnostics", "cluster_tol", 1e-3 * out.solver.m1);
    out.omega_tols.zero_tol = cfg.get_double("diagnostics", "zero_tol", 1e-6 * out.solver.m1);
    out.verdict_tols.fs_tol = cfg.get_double("diagnostics", "fs_tol", 1e-3 * out.solver.m1);
    out.verdict_tols.radial_tol = cfg.get_double("diagnostics", "radial_tol", 1e-3 * out.solver.m1);
    out.omega_t_min = cfg.get_double("diagnostics", "omega_t_min", 0.5 * out.solver.t_end);
    out.omega_stride = cfg.get_int("diagnostics", "omega_stride", 1);
    if (cfg.has("diagnostics", "expect"))
        out.expect = verdict_from_name(cfg.get_string("diagnostics", "expect"));

    cfg.validate_consumed();
    out.meta = cfg.echo();
    // derived values echoed alongside the raw keys
    out.meta["derived.dr"] = fmt_full(out.grid.dr);
    out.meta["derived.dtheta"] = fmt_full(out.grid.dtheta);
    out.meta["derived.omega_t_min"] = fmt_full(out.omega_t_min);
    return out;
}

} // namespace

RunConfig parse_config(const std::string& path) {
    return read_run_config(ConfigFile::parse_file(path));
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    return read_run_config(ConfigFile::parse_string(text, origin));
}

} // namespace fols
