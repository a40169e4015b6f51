#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "fols/omega.hpp"

using namespace fols;

namespace {

PolarGrid small_grid() { return build_grid(GridKind::Disk, 0.0, 2.0, 8, 16); }

ScalarField fs_profile(const PolarGrid& g, int axis, double amp) {
    ScalarField f(g);
    double phi = axis * kPi / g.n_theta;
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j)
            f.at(i, j) = amp * std::exp(-g.radius(i)) * std::cos(g.angle(j) - phi);
    f.center = 0.0;
    return f;
}

ScalarField radial_profile(const PolarGrid& g, double amp) {
    ScalarField f(g);
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j) f.at(i, j) = amp * std::exp(-2.0 * g.radius(i));
    f.center = amp;
    return f;
}

Trajectory traj_of(std::vector<ScalarField> snaps) {
    Trajectory t;
    double time = 0.0;
    for (ScalarField& s : snaps) {
        s.time_tag = time;
        time += 1.0;
        t.snapshots.push_back(std::move(s));
    }
    return t;
}

} // namespace

TEST_CASE("collect_omega: window, distances, clusters, zero flag") {
    PolarGrid g = small_grid();
    Trajectory t = traj_of({radial_profile(g, 1.0), radial_profile(g, 1.0),
                            radial_profile(g, 1.0 + 5e-4), fs_profile(g, 0, 1.0)});
    OmegaSample s = collect_omega(t, 0.0, 1, OmegaTols{1e-3, 1e-6});
    CHECK(s.snapshots.size() == 4);
    CHECK(s.pairwise_sup[0][1] == 0.0);
    CHECK(s.pairwise_sup[0][2] > 0.0);
    CHECK(s.cluster[0] == s.cluster[1]);
    CHECK(s.cluster[0] == s.cluster[2]); // within cluster_tol
    CHECK(s.cluster[3] != s.cluster[0]);
    CHECK(!s.contains_zero);

    Trajectory dec = traj_of({radial_profile(g, 1.0), radial_profile(g, 1e-8)});
    OmegaSample sz = collect_omega(dec, 0.0, 1, OmegaTols{1e-3, 1e-6});
    CHECK(sz.contains_zero);

    Trajectory stat = traj_of({radial_profile(g, 1.0), radial_profile(g, 1.0)});
    OmegaSample ss = collect_omega(stat, 0.0, 1);
    CHECK(ss.pairwise_sup[0][1] == 0.0);
    CHECK(ss.cluster[0] == ss.cluster[1]);

    CHECK_THROWS_AS(collect_omega(stat, 1.5, 1), Error); // one snapshot in window
}

TEST_CASE("verdicts: FS, Radial, Zero, Mixed, Undecided") {
    PolarGrid g = small_grid();
    VerdictTols tols{1e-6, 1e-6};

    OmegaSample fs;
    fs.snapshots = {fs_profile(g, 4, 1.0), fs_profile(g, 4, 0.8)};
    CHECK(asymptotic_fs_verdict(fs, tols).verdict == Verdict::FS);
    CHECK(asymptotic_fs_verdict(fs, tols).axis.half_index == 4);

    OmegaSample rad;
    rad.snapshots = {radial_profile(g, 1.0), radial_profile(g, 0.9)};
    // radial fields are FS about every axis too; the radial label wins only
    // through the Mixed path, so pure radial samples still report FS
    VerdictReport vr = asymptotic_fs_verdict(rad, tols);
    CHECK((vr.verdict == Verdict::FS || vr.verdict == Verdict::Radial));

    OmegaSample zero;
    zero.snapshots = {radial_profile(g, 0.0), radial_profile(g, 0.0)};
    zero.contains_zero = true;
    CHECK(asymptotic_fs_verdict(zero, tols).verdict == Verdict::Zero);

    OmegaSample mixed;
    mixed.snapshots = {fs_profile(g, 4, 1.0), radial_profile(g, 1.0)};
    CHECK(asymptotic_fs_verdict(mixed, tols).verdict == Verdict::Mixed);

    OmegaSample undecided;
    undecided.snapshots = {fs_profile(g, 4, 1.0), fs_profile(g, 12, 1.0)};
    CHECK(asymptotic_fs_verdict(undecided, VerdictTols{1e-9, 1e-9}).verdict == Verdict::Undecided);
}

TEST_CASE("verdicts are order-invariant and tolerance-monotone") {
    PolarGrid g = small_grid();
    OmegaSample a;
    a.snapshots = {fs_profile(g, 4, 1.0), radial_profile(g, 1.0), fs_profile(g, 4, 0.5)};
    OmegaSample b = a;
    std::swap(b.snapshots[0], b.snapshots[2]);
    VerdictTols tols{1e-6, 1e-6};
    CHECK(asymptotic_fs_verdict(a, tols).verdict == asymptotic_fs_verdict(b, tols).verdict);

    // tightening tols never upgrades Undecided to FS
    OmegaSample u;
    u.snapshots = {fs_profile(g, 4, 1.0), fs_profile(g, 12, 1.0)};
    VerdictReport loose = asymptotic_fs_verdict(u, VerdictTols{10.0, 1e-12});
    VerdictReport tight = asymptotic_fs_verdict(u, VerdictTols{1e-12, 1e-12});
    CHECK(loose.verdict == Verdict::FS);
    CHECK(tight.verdict == Verdict::Undecided);
}

TEST_CASE("envelope: trivial initial bound and synthetic violations") {
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 8.0, 32, 16);
    double r1 = 2.0, gamma = 0.5;

    ScalarField inside(g);
    for (int i = 0; i < g.n_r; ++i)
        if (g.radius(i) < r1)
            for (int j = 0; j < g.n_theta; ++j) inside.at(i, j) = 0.7;
    inside.center = 0.7;
    Trajectory t;
    inside.time_tag = 0.0;
    t.snapshots.push_back(inside);
    EnvelopeReport ok = envelope_check(t, gamma, r1, 0.7);
    CHECK(ok.holds);
    CHECK(ok.worst_ratio <= 1.0);

    // a late-time snapshot peaking beyond r1 violates the stationary bound
    ScalarField far(g);
    for (int i = 0; i < g.n_r; ++i)
        if (std::abs(g.radius(i) - 6.0) < 0.5)
            for (int j = 0; j < g.n_theta; ++j) far.at(i, j) = 0.7;
    far.center = 0.0;
    far.time_tag = 2.0;
    Trajectory bad;
    bad.snapshots.push_back(far);
    EnvelopeReport viol = envelope_check(bad, gamma, r1, 0.7);
    CHECK(!viol.holds);
    CHECK(viol.violations > 0);
    CHECK(viol.worst_r > r1);
}

TEST_CASE("envelope radius covers all three balance terms") {
    NonlinearitySpec s =
        make_henon(TimeCoeff::constant(1.0), TimeCoeff::constant(1.0), 1.0, 2.0, 3.0);
    double M = 0.8;
    double r1 = envelope_r1(s, 0.5, M);
    CHECK(r1 >= std::pow(2.0 * 1.25, 1.0 / 1.5));
    CHECK(r1 >= 2.0 * M * M);
    CHECK(r1 >= 1.0);
    CHECK_THROWS_AS(envelope_r1(s, 1.5, M), Error); // gamma must stay below min(beta, 1)
    NonlinearitySpec tr = make_translation(TimeCoeff::constant(1.0), TimeCoeff::constant(1.0), 3.0);
    CHECK_THROWS_AS(envelope_r1(tr, 0.5, M), Error);
}

TEST_CASE("reflection decay fit: synthetic exponential, sentinel, flagging") {
    PolarGrid g = small_grid();
    double rate = 0.8;
    // radial carrier plus a lobe pointing at angle pi whose amplitude decays
    // at the synthetic rate; the e1 deficit tracks that amplitude exactly
    auto with_lobe = [&](double amp, double time) {
        ScalarField f = radial_profile(g, 1.0);
        ScalarField lobe = fs_profile(g, g.n_theta, amp); // axis angle pi
        for (std::size_t n = 0; n < f.values.size(); ++n) f.values[n] += lobe.values[n];
        f.time_tag = time;
        return f;
    };
    Trajectory t;
    for (int k = 0; k <= 20; ++k)
        t.snapshots.push_back(with_lobe(std::exp(-rate * 0.25 * k), 0.25 * k));
    DecayFitReport fit = reflection_decay_fit(t, make_direction(g, 0), 0.5);
    CHECK(!fit.infinite);
    CHECK(fit.decaying);
    CHECK(std::abs(fit.rate - rate) <= 0.05 * rate);

    // symmetric data: identically zero deficit reports the +inf sentinel
    Trajectory sym;
    for (int k = 0; k < 4; ++k) {
        ScalarField f = fs_profile(g, 4, 1.0);
        f.time_tag = k;
        sym.snapshots.push_back(f);
    }
    DecayFitReport inf_fit = reflection_decay_fit(sym, make_direction(g, 4), 0.0);
    CHECK(inf_fit.infinite);

    // growing deficit: rate <= 0 flagged as non-decaying
    Trajectory grow;
    for (int k = 0; k < 6; ++k) grow.snapshots.push_back(with_lobe(0.1 * std::exp(0.5 * k), k));
    DecayFitReport bad = reflection_decay_fit(grow, make_direction(g, 0), 0.0);
    CHECK(!bad.decaying);
}
