#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <random>

#include "fols/grid.hpp"

using namespace fols;

TEST_CASE("build_grid derives the documented spacings") {
    PolarGrid disk = build_grid(GridKind::Disk, 0.0, 8.0, 64, 128);
    CHECK(disk.dr == doctest::Approx(8.0 / 65).epsilon(1e-15));
    CHECK(disk.dtheta == doctest::Approx(2.0 * kPi / 128).epsilon(1e-15));
    CHECK(disk.radius(0) == doctest::Approx(8.0 / 65));
    CHECK(disk.radius(63) + disk.dr == doctest::Approx(8.0));
    CHECK(disk.has_center());

    PolarGrid ann = build_grid(GridKind::Annulus, 1.0, 10.0, 90, 128);
    CHECK(ann.radius(0) == doctest::Approx(1.0 + 9.0 / 91).epsilon(1e-15));
    CHECK(!ann.has_center());
}

TEST_CASE("build_grid rejects invalid parameters") {
    CHECK_THROWS_AS(build_grid(GridKind::Disk, 0.5, 8.0, 64, 128), Error);
    CHECK_THROWS_AS(build_grid(GridKind::Disk, 0.0, 8.0, 64, 7), Error);
    CHECK_THROWS_AS(build_grid(GridKind::Disk, 0.0, 8.0, 64, 6), Error);
    CHECK_THROWS_AS(build_grid(GridKind::Annulus, 2.0, 2.0, 64, 128), Error);
    CHECK_THROWS_AS(build_grid(GridKind::Annulus, 0.0, 2.0, 64, 128), Error);
    CHECK_THROWS_AS(build_grid(GridKind::Disk, 0.0, 8.0, 2, 128), Error);
}

TEST_CASE("reflect_indices matches the arithmetic and is an involution") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 1.0, 4, 8);

    auto p0 = reflect_indices(g, make_direction(g, 0));
    CHECK(p0[1] == 7); // theta -> -theta
    CHECK(p0[0] == 0);

    // direction at angle pi/2 has half index n/2... angle = k*pi/n => k = n/2
    auto p90 = reflect_indices(g, make_direction(g, g.n_theta / 2));
    CHECK(p90[0] == g.n_theta / 2); // theta -> pi - theta maps 0 to pi

    for (int k = 0; k < 2 * g.n_theta; ++k) {
        auto p = reflect_indices(g, make_direction(g, k));
        for (int j = 0; j < g.n_theta; ++j) CHECK(p[p[j]] == j);
    }
}

TEST_CASE("hyperplane reflection exchanges the half domains") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 1.0, 4, 16);
    for (int k : {0, 3, 8, 17}) {
        Direction e = make_direction(g, k);
        auto mask = half_mask(g, e);
        auto perm = hyperplane_reflect_indices(g, e);
        auto anti = half_mask(g, opposite(g, e));
        for (int j = 0; j < g.n_theta; ++j) {
            if (mask[j]) CHECK(anti[perm[j]]); // sigma_e maps {x.e>0} onto {x.e<0}
        }
        for (int j = 0; j < g.n_theta; ++j) CHECK(perm[perm[j]] == j);
    }
}

TEST_CASE("half_mask excludes the hyperplane and partitions with its opposite") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 1.0, 4, 8);
    Direction e0 = make_direction(g, 0);
    auto mask = half_mask(g, e0);
    CHECK(mask[1]);          // theta = pi/4
    CHECK(!mask[2]);         // theta = pi/2 lies on H(e)
    CHECK(!mask[6]);         // theta = 3pi/2 lies on H(e)
    CHECK(!mask[4]);         // theta = pi is the opposite side

    for (int k = 0; k < 2 * g.n_theta; ++k) {
        Direction e = make_direction(g, k);
        auto m1 = half_mask(g, e);
        auto m2 = half_mask(g, opposite(g, e));
        int on_plane = 0;
        for (int j = 0; j < g.n_theta; ++j) {
            CHECK(!(m1[j] && m2[j]));
            if (!m1[j] && !m2[j]) ++on_plane;
        }
        // even half indices put exactly two nodes on H(e); odd ones none
        CHECK(on_plane == (k % 2 == 0 ? 2 : 0));
    }
}

TEST_CASE("norms: zero, annulus area, and homogeneity") {
    PolarGrid ann = build_grid(GridKind::Annulus, 1.0, 2.0, 50, 16);
    ScalarField zero(ann);
    CHECK(norms(zero).sup == 0.0);
    CHECK(norms(zero).l2 == 0.0);

    ScalarField ones(ann, 1.0);
    double l2sq = norms(ones).l2 * norms(ones).l2;
    // midpoint quadrature integrates r exactly over the covered band
    double lo = ann.radius(0) - 0.5 * ann.dr, hi = ann.radius(ann.n_r - 1) + 0.5 * ann.dr;
    double exact_cells = kPi * (hi * hi - lo * lo);
    CHECK(l2sq == doctest::Approx(exact_cells).epsilon(1e-12));
    CHECK(l2sq == doctest::Approx(3.0 * kPi).epsilon(2.0 * ann.dr));

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    ScalarField f(ann);
    for (double& v : f.values) v = u(rng);
    Norms base = norms(f);
    ScalarField scaled = f;
    for (double& v : scaled.values) v *= -2.5;
    CHECK(norms(scaled).sup == doctest::Approx(2.5 * base.sup).epsilon(1e-14));
    CHECK(norms(scaled).l2 == doctest::Approx(2.5 * base.l2).epsilon(1e-14));
}

TEST_CASE("radial fields are invariant under every reflection") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 12, 16);
    ScalarField f(g);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j) f.at(i, j) = std::sin(3.0 * g.radius(i));
    f.center = 0.3;
    for (int k = 0; k < 2 * g.n_theta; ++k) {
        ScalarField r = apply_angular_perm(f, reflect_indices(g, make_direction(g, k)));
        for (std::size_t n = 0; n < f.values.size(); ++n) CHECK(r.values[n] == f.values[n]);
    }
}

TEST_CASE("field CSV round trip is exact") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 3.0, 6, 8);
    ScalarField f(g);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    for (double& v : f.values) v = u(rng) / 3.0;
    f.center = u(rng) * 1e-17; // tiny values must survive
    std::string path = std::filesystem::temp_directory_path() / "fols_roundtrip.csv";
    write_field_csv_file(f, path);
    ScalarField back = read_field_csv_file(path);
    REQUIRE(back.grid.n_r == g.n_r);
    REQUIRE(back.grid.n_theta == g.n_theta);
    CHECK(back.grid.kind == GridKind::Disk);
    for (std::size_t n = 0; n < f.values.size(); ++n) CHECK(back.values[n] == f.values[n]);
    CHECK(*back.center == *f.center);

    PolarGrid ga = build_grid(GridKind::Annulus, 1.0, 3.0, 6, 8);
    ScalarField fa(ga);
    for (double& v : fa.values) v = u(rng);
    write_field_csv_file(fa, path);
    ScalarField backa = read_field_csv_file(path);
    CHECK(backa.grid.kind == GridKind::Annulus);
    CHECK(backa.grid.r_inner == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t n = 0; n < fa.values.size(); ++n) CHECK(backa.values[n] == fa.values[n]);
}
