#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <fstream>
#include <sstream>

#include "fols/config.hpp"
#include "fols/svg.hpp"
#include "fols/symmetry.hpp"

using namespace fols;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = std::filesystem::temp_directory_path() / name;
    std::ofstream os(path);
    os << text;
    return path;
}

const char* kMinimalHenon = R"(# minimal Henon run
[grid]
kind = disk
r_outer = 8
n_r = 16
n_theta = 16

[nonlinearity]
variant = henon
a = 1
b = const:1
alpha = 1
beta = 2
p = 3

[initial]
kind = two_bump
amp = 0.5
amp2 = 0.25
center_r = 2.0
center_theta = 0.3
width = 0.8

[solver]
dt = 0.01
t_end = 1.0
m1 = 1.0
)";

} // namespace

TEST_CASE("minimal config parses into a valid run") {
    RunConfig rc = parse_config(write_temp("fols_min.cfg", kMinimalHenon));
    CHECK(rc.grid.kind == GridKind::Disk);
    CHECK(rc.grid.n_theta == 16);
    CHECK(rc.solver.dt == 0.01);
    CHECK(rc.nonlinearity.name() == std::string("henon"));
    CHECK(rc.initial.kind == InitialSpec::Kind::TwoBump);
    CHECK(!rc.expect.has_value());
    // echo completeness: every consumed key shows up in meta
    CHECK(rc.meta.count("grid.kind") == 1);
    CHECK(rc.meta.count("solver.dt") == 1);
    CHECK(rc.meta.count("initial.width") == 1);
    CHECK(rc.meta.at("nonlinearity.p") == "3");
}

TEST_CASE("config rejects odd n_theta with a named error") {
    std::string text = kMinimalHenon;
    text.replace(text.find("n_theta = 16"), 12, "n_theta = 7 ");
    std::string path = write_temp("fols_odd.cfg", text);
    try {
        parse_config(path);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("n_theta") != std::string::npos);
        CHECK(std::string(e.what()).find("even") != std::string::npos);
    }
}

TEST_CASE("duplicate keys report both line numbers") {
    std::string text = "[grid]\nkind = disk\nkind = annulus\n";
    std::string path = write_temp("fols_dup.cfg", text);
    try {
        ConfigFile::parse_file(path);
        FAIL("expected an error");
    } catch (const Error& e) {
        std::string msg = e.what();
        CHECK(msg.find(":3:") != std::string::npos);      // offending line
        CHECK(msg.find("line 2") != std::string::npos);   // first definition
        CHECK(msg.find("duplicate") != std::string::npos);
    }
}

TEST_CASE("unknown keys are hard errors") {
    std::string bad = kMinimalHenon + std::string("typo_key = 3\n");
    std::string path = write_temp("fols_unknown.cfg", bad);
    try {
        parse_config(path);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
        CHECK(std::string(e.what()).find("typo_key") != std::string::npos);
    }
}

TEST_CASE("malformed lines carry their line number") {
    std::string path = write_temp("fols_malformed.cfg", "[grid]\nthis line has no equals\n");
    try {
        ConfigFile::parse_file(path);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("initial data: two-bump reflection inequality and ring radiality") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 8.0, 24, 32);
    InitialSpec two;
    two.kind = InitialSpec::Kind::TwoBump;
    two.amp = 0.6;
    two.amp2 = 0.3;
    two.center_r = 2.5;
    two.center_theta = 0.4;
    two.width = 1.0;
    ScalarField u0 = build_initial(two, g);
    // mirror across the vertical axis: u0(x) - u0(-x1, x2) >= 0 on x1 > 0
    auto mask = half_mask(g, make_direction(g, 0));
    auto perm = hyperplane_reflect_indices(g, make_direction(g, 0));
    bool strict = false;
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j)
            if (mask[j]) {
                double d = u0.at(i, j) - u0.at(i, perm[j]);
                CHECK(d >= -1e-15);
                if (d > 1e-6) strict = true;
            }
    CHECK(strict);

    InitialSpec ring;
    ring.kind = InitialSpec::Kind::RingBump;
    ring.amp = 1.0;
    ring.center_r = 3.0;
    ring.width = 1.0;
    ScalarField rf = build_initial(ring, g);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 1; j < g.n_theta; ++j) CHECK(rf.at(i, j) == rf.at(i, 0));
}

TEST_CASE("heatmaps are byte-deterministic and mark the axis") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 10, 16);
    ScalarField f(g);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j) f.at(i, j) = std::cos(g.angle(j));
    f.center = 0.0;

    std::ostringstream a, b;
    emit_heatmap(f, 0.0, a);
    emit_heatmap(f, 0.0, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("<svg") == 0);
    CHECK(a.str().find("<line") != std::string::npos);      // axis overlay
    CHECK(a.str().find("stroke-dasharray") != std::string::npos);

    // zero field renders in the neutral midpoint color
    ScalarField zero(g);
    std::ostringstream z;
    emit_heatmap(zero, 0.0, z);
    CHECK(z.str().find("rgb(255,255,255)") != std::string::npos);
}

TEST_CASE("direction scans are deterministic under the thread cap") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 12, 32);
    ScalarField f(g);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : f.values) v = u(rng);
    f.center = 0.0;
    setenv("FOLSCHWARZ_THREADS", "1", 1);
    SymmetryReport serial = symmetry_report(f);
    setenv("FOLSCHWARZ_THREADS", "8", 1);
    SymmetryReport parallel = symmetry_report(f);
    unsetenv("FOLSCHWARZ_THREADS");
    CHECK(serial.axis.half_index == parallel.axis.half_index);
    CHECK(serial.deficits == parallel.deficits);
    CHECK(serial.fs_def == parallel.fs_def);
}
