#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fols/studies.hpp"
#include "fols/symmetry.hpp"

using namespace fols;

namespace {

ScalarField make_x1(const PolarGrid& g) {
    ScalarField f(g);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j) f.at(i, j) = g.radius(i) * std::cos(g.angle(j));
    if (f.center) f.center = 0.0;
    return f;
}

ScalarField make_radial(const PolarGrid& g) {
    ScalarField f(g);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j) f.at(i, j) = std::exp(-g.radius(i));
    if (f.center) f.center = 1.0;
    return f;
}

ScalarField make_random(const PolarGrid& g, unsigned seed) {
    ScalarField f(g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : f.values) v = u(rng);
    if (f.center) f.center = u(rng);
    return f;
}

// foliated Schwarz profile about axis k: strictly decreasing in the angular
// distance from the axis, strictly positive radial envelope
ScalarField make_fs(const PolarGrid& g, int axis_half_index) {
    ScalarField f(g);
    double phi = axis_half_index * kPi / g.n_theta;
    for (int i = 0; i < g.n_r; ++i) {
        double env = std::exp(-0.7 * g.radius(i));
        for (int j = 0; j < g.n_theta; ++j)
            f.at(i, j) = env * std::cos(g.angle(j) - phi);
    }
    if (f.center) f.center = 0.0;
    return f;
}

} // namespace

TEST_CASE("reflection differences: radial, linear, and antisymmetry") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 10, 16);

    ScalarField radial = make_radial(g);
    for (int k : {0, 3, 9}) {
        ScalarField w = w_field(radial, make_direction(g, k));
        for (double v : w.values) CHECK(v == 0.0);
        CHECK(neg_deficit(radial, make_direction(g, k)) == 0.0);
    }

    ScalarField x1 = make_x1(g);
    Direction e1 = make_direction(g, 0);
    ScalarField w = w_field(x1, e1);
    auto mask = half_mask(g, e1);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            if (mask[j])
                CHECK(w.at(i, j) ==
                      doctest::Approx(2.0 * g.radius(i) * std::cos(g.angle(j))).epsilon(1e-12));
            else
                CHECK(w.at(i, j) == 0.0);
        }
    CHECK(neg_deficit(x1, e1) == 0.0);

    // w_{-e} = -w_e composed with the reflection, nodewise
    ScalarField rnd = make_random(g, 21);
    for (int k : {0, 5, 12}) {
        Direction e = make_direction(g, k);
        auto perm = hyperplane_reflect_indices(g, e);
        ScalarField a = w_field(rnd, opposite(g, e));
        ScalarField b = apply_angular_perm(w_field(rnd, e), perm);
        for (std::size_t n = 0; n < a.values.size(); ++n)
            CHECK(a.values[n] == doctest::Approx(-b.values[n]).epsilon(1e-13));
    }
}

TEST_CASE("neg_deficit equals the exhaustive masked scan") {
    PolarGrid g = build_grid(GridKind::Annulus, 1.0, 3.0, 8, 12);
    ScalarField u = make_random(g, 31);
    for (int k = 0; k < 2 * g.n_theta; ++k) {
        Direction e = make_direction(g, k);
        auto mask = half_mask(g, e);
        auto perm = hyperplane_reflect_indices(g, e);
        double worst = 0.0;
        for (int i = 0; i < g.n_r; ++i)
            for (int j = 0; j < g.n_theta; ++j)
                if (mask[j]) worst = std::max(worst, -(u.at(i, j) - u.at(i, perm[j])));
        CHECK(neg_deficit(u, e) == doctest::Approx(worst).epsilon(1e-14));
    }
}

TEST_CASE("hyperplane detection: both one-sided deficits vanish iff symmetric") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 8, 16);
    // symmetric about the axis at angle pi/4 (half index 4 with n=16)
    ScalarField f = make_fs(g, 4);
    Direction e_perp = perpendicular(g, make_direction(g, 4));
    CHECK(neg_deficit(f, e_perp) <= 1e-15);
    CHECK(neg_deficit(f, opposite(g, e_perp)) <= 1e-15);
    auto perm = hyperplane_reflect_indices(g, e_perp);
    ScalarField reflected = apply_angular_perm(f, perm);
    for (std::size_t n = 0; n < f.values.size(); ++n)
        CHECK(f.values[n] == doctest::Approx(reflected.values[n]).epsilon(1e-13));

    ScalarField rnd = make_random(g, 77);
    Direction e = make_direction(g, 3);
    CHECK((neg_deficit(rnd, e) > 0.0 || neg_deficit(rnd, opposite(g, e)) > 0.0));
}

TEST_CASE("m_arc: FS profile gives a pi arc, radial gives the full circle") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 10, 32);

    ScalarField fs = make_fs(g, 6);
    ReflectionArc arc = m_arc(fs, 1e-12);
    CHECK(!arc.empty);
    CHECK(arc.width == doctest::Approx(kPi).epsilon(0.51 * g.dtheta / kPi));
    // arc centered on the symmetry axis (deficit-zero ties make the exact
    // best index arbitrary inside the arc)
    double fs_center = 0.5 * (arc.theta_lo + arc.theta_hi);
    CHECK(std::abs(std::remainder(fs_center - 6.0 * kPi / g.n_theta, 2.0 * kPi)) <=
          0.51 * g.dtheta);

    ScalarField radial = make_radial(g);
    ReflectionArc full = m_arc(radial, 1e-12);
    CHECK(!full.empty);
    CHECK(full.width == doctest::Approx(2.0 * kPi));

    ScalarField x1 = make_x1(g);
    ReflectionArc ax = m_arc(x1, 1e-12);
    CHECK(ax.width == doctest::Approx(kPi).epsilon(0.51 * g.dtheta / kPi));
    // centered at angle 0 up to the grid step
    double center = 0.5 * (ax.theta_lo + ax.theta_hi);
    CHECK(std::abs(std::remainder(center, 2.0 * kPi)) <= 0.51 * g.dtheta);

    ScalarField skew = make_random(g, 1234);
    ReflectionArc none = m_arc(skew, 0.0);
    CHECK(none.empty); // random data admits no nonnegative reflection at tol 0
}

TEST_CASE("fs_rearrange_circle reproduces the worked 4-slot example") {
    // values (3,1,2,0) on 4 slots, axis at slot 0 -> slots (3,2,0,1)
    std::vector<double> vals{3.0, 1.0, 2.0, 0.0};
    std::vector<double> out = fs_rearrange_circle(vals, 0);
    CHECK(out == std::vector<double>{3.0, 2.0, 0.0, 1.0});
}

TEST_CASE("fs_symmetrize: fixed point, idempotence, multiset preservation") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 8, 16);
    Direction p = make_direction(g, 4);

    ScalarField fs = make_fs(g, 4);
    ScalarField once = fs_symmetrize(fs, p);
    for (std::size_t n = 0; n < fs.values.size(); ++n)
        CHECK(once.values[n] == doctest::Approx(fs.values[n]).epsilon(1e-14));

    ScalarField rnd = make_random(g, 51);
    ScalarField s1 = fs_symmetrize(rnd, p);
    ScalarField s2 = fs_symmetrize(s1, p);
    CHECK(s1.values == s2.values); // bitwise idempotent

    for (int i = 0; i < g.n_r; ++i) {
        std::vector<double> a, b;
        for (int j = 0; j < g.n_theta; ++j) {
            a.push_back(rnd.at(i, j));
            b.push_back(s1.at(i, j));
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }

    CHECK(polar_monotonicity_deficit(s1, p) == 0.0);
    CHECK(fs_deficit(s1, p) == 0.0);
    CHECK(fs_deficit(rnd, p) > 0.0);
}

TEST_CASE("fs deficits: zero cases and the exhaustive argmin property") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 6, 12);

    ScalarField fs = make_fs(g, 7);
    CHECK(fs_deficit(fs, make_direction(g, 7)) <= 1e-15);
    Direction ax = best_axis(fs);
    CHECK(ax.half_index == 7);

    ScalarField radial = make_radial(g);
    for (int k : {0, 3, 11}) CHECK(fs_deficit(radial, make_direction(g, k)) == 0.0);
    CHECK(best_axis(radial).half_index == 0); // ties break to the smallest index

    ScalarField rnd = make_random(g, 8);
    Direction found = best_axis(rnd);
    double best = fs_deficit(rnd, found);
    int arg = -1;
    double bestval = 1e300;
    for (int k = 0; k < 2 * g.n_theta; ++k) {
        double d = fs_deficit(rnd, make_direction(g, k));
        CHECK(best <= d + 1e-15);
        if (d < bestval) {
            bestval = d;
            arg = k;
        }
    }
    CHECK(found.half_index == arg);
}

TEST_CASE("polar monotonicity deficit flags the two-lobe profile") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 6, 16);
    Direction p = make_direction(g, 0);
    ScalarField mono(g), two(g);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            mono.at(i, j) = std::cos(g.angle(j));
            two.at(i, j) = std::cos(2.0 * g.angle(j));
        }
    CHECK(polar_monotonicity_deficit(mono, p) == 0.0);
    CHECK(polar_monotonicity_deficit(two, p) > 0.5);
}

TEST_CASE("radial deficit: exact values and the brute-force scan") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 6, 16);
    CHECK(radial_deficit(make_radial(g)) == 0.0);

    double eps = 0.25;
    ScalarField wobble(g);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j) wobble.at(i, j) = eps * std::cos(g.angle(j));
    CHECK(radial_deficit(wobble) == doctest::Approx(2.0 * eps).epsilon(1e-14));

    ScalarField rnd = make_random(g, 99);
    double worst = 0.0;
    for (int i = 0; i < g.n_r; ++i) {
        double lo = 1e300, hi = -1e300;
        for (int j = 0; j < g.n_theta; ++j) {
            lo = std::min(lo, rnd.at(i, j));
            hi = std::max(hi, rnd.at(i, j));
        }
        worst = std::max(worst, hi - lo);
    }
    CHECK(radial_deficit(rnd) == doctest::Approx(worst).epsilon(1e-15));
}

TEST_CASE("boundary quotient: zero, constant, and rejection of bad widths") {
    PolarGrid g = build_grid(GridKind::Annulus, 1.0, 8.0, 48, 32);
    Direction e = make_direction(g, 0);
    double gamma = 0.4, rho1 = 5.0;
    ScalarField c(g, -gamma - 0.2); // uniformly stable coefficient
    double delta = 0.9 * quotient_delta_cap(g, gamma, gamma + 0.2);

    ScalarField zero(g);
    QuotientResult qz = boundary_quotient(zero, e, delta, gamma, rho1, c, 5, 1);
    for (double v : qz.w_hat.values) CHECK(v == 0.0);
    CHECK(qz.checks.sign_ok);
    CHECK(qz.checks.tail_ok);

    ScalarField ones(g);
    auto mask = half_mask(g, e);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j)
            if (mask[j]) ones.at(i, j) = 1.0;
    QuotientResult q1 = boundary_quotient(ones, e, delta, gamma, rho1, c, 5, 2);
    // plateau region: both profiles equal (1+delta)/2, so w_hat = 4/(1+delta)^2
    double plateau = 4.0 / ((1.0 + delta) * (1.0 + delta));
    bool found_plateau = false;
    for (int i = 0; i < g.n_r; ++i) {
        double r = g.radius(i);
        if (r < g.r_inner + 2.0 * delta) continue;
        for (int j = 0; j < g.n_theta; ++j) {
            if (!mask[j]) continue;
            double x1 = r * std::cos(g.angle(j));
            if (x1 > 2.0 * delta) {
                CHECK(q1.w_hat.at(i, j) == doctest::Approx(plateau).epsilon(1e-12));
                found_plateau = true;
            }
        }
    }
    CHECK(found_plateau);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j)
            if (mask[j]) {
                CHECK(q1.w_hat.at(i, j) > 1.0);
                CHECK(q1.w_hat.at(i, j) <= 4.0);
            }

    CHECK_THROWS_AS(boundary_quotient(ones, e, 2.0 * quotient_delta_cap(g, gamma, gamma + 0.2),
                                      gamma, rho1, c, 5, 3),
                    Error);
}

TEST_CASE("subsolution verification: constant coefficient margin and the operator oracle") {
    PolarGrid unit = build_grid(GridKind::Disk, 0.0, 1.0, 128, 32);
    EigenPair eta = eigensolve(unit, SymmetryClass::Radial, 1);

    PolarGrid g = build_grid(GridKind::Disk, 0.0, 8.0, 160, 96);
    DiscreteLaplacian L(g);
    BallSpec ball = BallSpec::from_interval(1.0, 2.0);

    ScalarField c0(g); // c == 0
    double lam_over_r2 = eta.lambda / (ball.radius * ball.radius);
    double gamma = lam_over_r2 + 3.0; // gamma > lambda1 / r^2
    SubsolutionReport rep = subsolution_verify(L, ball, gamma, eta.field, eta.lambda, c0);
    CHECK(rep.holds);
    CHECK(rep.margin == doctest::Approx(3.0).epsilon(1e-12));
    // independent operator route within a few percent of the eigen identity
    CHECK(rep.worst_value_operator ==
          doctest::Approx(rep.worst_value).epsilon(0.05 * (gamma + lam_over_r2) /
                                                    std::abs(rep.worst_value)));
    CHECK(rep.oracle_nodes > 50);

    // verification failure is reported, not thrown
    SubsolutionReport bad = subsolution_verify(L, ball, 0.5 * lam_over_r2, eta.field, eta.lambda, c0);
    CHECK(!bad.holds);
    CHECK(bad.margin < 0.0);
}

TEST_CASE("circle rigidity: canonical profiles and constructed counterexamples") {
    const int m = 32;
    std::vector<double> v(m);

    // cos(theta): premises hold in the nonincreasing orientation
    for (int j = 0; j < m; ++j) v[j] = std::cos(2.0 * kPi * j / m);
    CircleVerdict prem = circle_rigidity_check(v, CircleMode::Premises);
    CHECK(prem.even);
    CHECK(prem.orientation == -1);
    CHECK(prem.premises_ok);
    CircleVerdict conc = circle_rigidity_check(v, CircleMode::Conclusion);
    CHECK(conc.monotone_ok);
    CHECK(conc.global_ok);
    CHECK(conc.sign_pattern_ok);
    // reflection pivots exactly at 0 and pi (half indices 0 and m)
    CHECK(conc.reflection_points == std::vector<int>({0, m}));

    // constants: premises with equality, conclusion trivially true
    std::fill(v.begin(), v.end(), 2.5);
    CircleVerdict cst = circle_rigidity_check(v, CircleMode::Conclusion);
    CHECK(cst.premises_ok);
    CHECK(cst.orientation == 0);
    CHECK(cst.monotone_ok);
    CHECK(cst.global_ok);

    // non-even data fails the premises
    for (int j = 0; j < m; ++j) v[j] = std::sin(2.0 * kPi * j / m + 0.4);
    CHECK(!circle_rigidity_check(v, CircleMode::Premises).premises_ok);
}

TEST_CASE("symmetry report serialization carries the summary block") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 2.0, 6, 16);
    ScalarField fs = make_fs(g, 4);
    SymmetryReport rep = symmetry_report(fs);
    CHECK(rep.axis.half_index == 4);
    CHECK(rep.fs_def <= rep.tol);
    CHECK(!rep.arc.empty);
    std::ostringstream os;
    write_symmetry_report(rep, g, os);
    std::string text = os.str();
    CHECK(text.find("e_half_index,deficit") == 0);
    CHECK(text.find("# best_axis = 4") != std::string::npos);
    CHECK(text.find("# radial_deficit") != std::string::npos);
    CHECK(text.find("# arc_lo") != std::string::npos);
}

TEST_CASE("boundary quotient on the disk: no inner strip, drift confined to the axis band") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 8.0, 48, 32);
    Direction e = make_direction(g, 5);
    double gamma = 0.5, rho1 = 5.0;
    std::mt19937_64 rng(8121ull);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ScalarField c(g), w(g);
    auto mask = half_mask(g, e);
    for (int i = 0; i < g.n_r; ++i) {
        double r = g.radius(i);
        for (int j = 0; j < g.n_theta; ++j) {
            c.at(i, j) = (r < rho1) ? 1.5 * unif(rng) : -gamma - 0.1 - std::abs(unif(rng));
            if (mask[j]) w.at(i, j) = unif(rng);
        }
    }
    double delta = 0.9 / (gamma + 1.5 + 8.0); // inside the disk cap 1/(gamma+beta)
    QuotientResult q = boundary_quotient(w, e, delta, gamma, rho1, c, 10, 99);
    CHECK(q.checks.sign_ok);
    CHECK(q.checks.equivalence_ok);
    CHECK(q.checks.bounds_ok);
    CHECK(q.checks.tail_ok);
    // the transverse drift exists only on the annulus inner strip
    for (double v : q.transform.drift2.values) CHECK(v == 0.0);
    // g profile is the constant 1/2 on the disk
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j)
            if (mask[j]) CHECK(q.transform.g_profile.at(i, j) == 0.5);
}
