#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fols/grid.hpp"
#include "fols/nonlin.hpp"
#include "fols/omega.hpp"
#include "fols/solver.hpp"

namespace fols {

/// One parsed "key = value" entry with its provenance.
struct ConfigEntry {
    std::string value;
    int line = 0;
    mutable bool consumed = false;
};

/// Line-oriented configuration: "[section]" headers, "key = value" lines,
/// '#' comments. Duplicate keys and unknown keys are hard errors (the latter
/// is enforced by validate_consumed after the typed readers ran).
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;

    /// Errors out on any entry that no reader consumed (unknown key).
    void validate_consumed() const;

    /// Every parsed entry as "section.key = value" lines, for the meta echo.
    std::map<std::string, std::string> echo() const;

    const std::string& origin() const { return origin_; }

private:
    std::string origin_;
    std::map<std::string, std::map<std::string, ConfigEntry>> sections_;
};

/// Initial-data catalog.
struct InitialSpec {
    enum class Kind { Zero, RingBump, TwoBump, Bump } kind = Kind::Zero;
    double amp = 0.0;      // primary amplitude
    double amp2 = 0.0;     // mirrored-bump amplitude (TwoBump)
    double center_r = 0.0; // bump center radius
    double center_theta = 0.0;
    double width = 1.0;
};

/// Samples the initial condition on the grid. TwoBump places a bump of
/// amplitude amp at (center_r, center_theta) plus its mirror image across the
/// vertical axis with amplitude amp2 <= amp, so the initial reflection
/// inequality about the horizontal axis direction holds with strictness.
ScalarField build_initial(const InitialSpec& spec, const PolarGrid& g);

struct RunConfig {
    PolarGrid grid;
    NonlinearitySpec nonlinearity;
    InitialSpec initial;
    SolverConfig solver;
    ReportTols report_tols;
    OmegaTols omega_tols;
    VerdictTols verdict_tols;
    double omega_t_min = 0.0; // default: t_end / 2
    int omega_stride = 1;
    std::optional<Verdict> expect;
    std::map<std::string, std::string> meta; // full echo of consumed values
};

/// Parses and validates a full run configuration; all block invariants are
/// checked here, before any compute starts.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

} // namespace fols
