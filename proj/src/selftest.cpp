#include "fols/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "fols/config.hpp"
#include "fols/grid.hpp"
#include "fols/nonlin.hpp"
#include "fols/omega.hpp"
#include "fols/solver.hpp"
#include "fols/studies.hpp"
#include "fols/symmetry.hpp"

namespace fols {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Closed-form schedule targets
// ---------------------------------------------------------------------------

CriterionResult crit1() {
    CriterionResult r{1, "two-mode schedule hits its amplitude targets (k = 1..10)", false, ""};
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 1.0, 128, 128);
    double l1 = eigensolve(g, SymmetryClass::FirstAngular, 1).lambda;
    double l2 = eigensolve(g, SymmetryClass::Radial, 2).lambda;
    double mu = 0.5 * (l1 + l2);
    Schedule s = build_schedule(l1, l2, mu, 10);

    double worst_alpha = 0.0, worst_eps = 0.0;
    bool ok = true;
    for (int k = 1; k <= 10; ++k) {
        double bound = std::pow(2.0, -k);
        auto [aT, bT] = alpha_beta(s, s.T[static_cast<std::size_t>(k - 1)]);
        auto [aB, bB] = alpha_beta(s, s.Tbar[static_cast<std::size_t>(k - 1)]);
        worst_alpha = std::max(worst_alpha, std::abs(aT - 1.0));
        double eps = std::max({std::abs(bT) / bound, std::abs(aB) / bound,
                               std::abs(bB - 1.0) / bound});
        worst_eps = std::max(worst_eps, eps);
        if (std::abs(aT - 1.0) > 1e-10 || std::abs(bT) > bound || !(aB > 0.0) ||
            std::abs(aB) > bound || std::abs(bB - 1.0) > bound)
            ok = false;
    }
    r.pass = ok;
    std::ostringstream d;
    d << "lambda1=" << fmt(l1) << " lambda2=" << fmt(l2) << "; max |alpha(T_k)-1| = "
      << fmt(worst_alpha) << " (<= 1e-10); tightest target used " << fmt(100.0 * worst_eps)
      << "% of its 2^-k budget";
    r.detail = d.str();
    return r;
}

// ---------------------------------------------------------------------------
// 2 + 3. Two-mode PDE cross-check and the mixed verdict
// ---------------------------------------------------------------------------

void crit2_3(std::vector<CriterionResult>& out) {
    CriterionResult r2{2, "two-mode PDE matches the closed form (and halving dt halves the error)",
                       false, ""};
    CriterionResult r3{3, "marker-time sample mixes a radial and a non-radial FS profile", false,
                       ""};

    // criterion-pinned resolution for the cross-check
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 4.0, 128, 128);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.linear_solve_tol = 1e-11;

    Example2Options opt;
    opt.k_max = 2;
    opt.compare_cycles = 2;
    Example2Result full = example2_run(g, cfg, opt);

    SolverConfig cfg_half = cfg;
    cfg_half.dt = 5e-4;
    Example2Result half = example2_run(g, cfg_half, opt);

    double e1 = full.max_closed_form_error;
    double e2 = half.max_closed_form_error;
    double ratio = e1 / std::max(e2, 1e-300);
    bool pass2 = e1 <= 1e-2 && ratio >= 1.6 && ratio <= 2.4;
    r2.pass = pass2;
    {
        std::ostringstream d;
        d << "sup error " << fmt(e1) << " at dt=1e-3 (<= 1e-2); halved-dt error " << fmt(e2)
          << ", ratio " << fmt(ratio) << " in [1.6, 2.4]";
        r2.detail = d.str();
    }

    // k <= 6 verdict on a coarser, longer run
    PolarGrid g3 = build_grid(GridKind::Disk, 0.0, 4.0, 96, 96);
    SolverConfig cfg3;
    cfg3.dt = 2e-3;
    cfg3.linear_solve_tol = 1e-10;
    Example2Options opt3;
    opt3.k_max = 6;
    opt3.compare_cycles = 0; // markers only
    Example2Result run3 = example2_run(g3, cfg3, opt3);

    double phi2_sup = norms(run3.phi2.field).sup;
    double best_rad = run3.verdict.best_radial;
    double best_fs_nonradial = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < run3.sample.snapshots.size(); ++i)
        if (run3.verdict.radial_deficits[i] > opt3.verdict_tols.radial_tol)
            best_fs_nonradial = std::min(best_fs_nonradial, run3.verdict.fs_deficits[i]);
    bool pass3 = run3.verdict.verdict == Verdict::Mixed && best_rad <= 1e-2 * phi2_sup &&
                 best_fs_nonradial <= 1e-2;
    r3.pass = pass3;
    {
        std::ostringstream d;
        d << "verdict " << verdict_name(run3.verdict.verdict) << "; best radial deficit "
          << fmt(best_rad) << " (<= " << fmt(1e-2 * phi2_sup)
          << "); best non-radial fs deficit " << fmt(best_fs_nonradial) << " (<= 1e-2); axis k="
          << run3.verdict.axis.half_index;
        r3.detail = d.str();
    }
    out.push_back(r2);
    out.push_back(r3);
}

// ---------------------------------------------------------------------------
// 4 + 5. Henon symmetrization and the decay envelope
// ---------------------------------------------------------------------------

void crit4_5(std::vector<CriterionResult>& out) {
    CriterionResult r4{4, "Henon run becomes foliated Schwarz symmetric by t = 20", false, ""};
    CriterionResult r5{5, "decay envelope holds for the Henon run and fails without absorption",
                       false, ""};

    PolarGrid g = build_grid(GridKind::Disk, 0.0, 8.0, 96, 128);
    NonlinearitySpec spec =
        make_henon(TimeCoeff::constant(1.0), TimeCoeff::constant(1.0), 1.0, 2.0, 3.0);

    InitialSpec init;
    init.kind = InitialSpec::Kind::TwoBump;
    init.amp = 0.70;
    init.amp2 = 0.35;
    init.center_r = 5.0;
    init.center_theta = 0.26;
    init.width = 1.7;
    ScalarField u0 = build_initial(init, g);

    SolverConfig cfg;
    cfg.dt = 0.008;
    cfg.t_end = 20.0;
    cfg.m1 = 1.0;
    cfg.linear_solve_tol = 1e-11;
    cfg.snapshot_stride = 25; // every 0.2 time units
    DiscreteLaplacian L(g);
    Trajectory traj = simulate(spec, u0, L, cfg);

    // --- criterion 4
    const ScalarField& last = traj.last();
    Direction axis = best_axis(last);
    double final_def = fs_deficit(last, axis);
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (const ScalarField& snap : traj.snapshots) {
        if (snap.time_tag < 2.0) continue; // the last decade of [0, 20]
        double d = fs_deficit(snap, axis);
        if (d > prev * 1.05 + 1e-13 * cfg.m1) monotone = false;
        prev = d;
    }
    // membership tolerance raised to the linear-solver noise floor: sign
    // tests below the CG truncation level are meaningless
    ReportTols rt;
    rt.deficit_tol_abs = 1e-6 * norms(last).sup;
    SymmetryReport rep = symmetry_report(last, rt);
    double arc_width = rep.arc.empty ? 0.0 : rep.arc.width;
    bool pass4 = final_def <= 1e-3 * cfg.m1 && monotone &&
                 arc_width >= kPi - 2.0 * g.dtheta;
    r4.pass = pass4;
    {
        std::ostringstream d;
        d << "final fs deficit " << fmt(final_def) << " (<= 1e-3), monotone over [2,20]: "
          << (monotone ? "yes" : "no") << ", arc width " << fmt(arc_width) << " (>= "
          << fmt(kPi - 2.0 * g.dtheta) << " at tol " << fmt(rt.deficit_tol_abs) << ")";
        r4.detail = d.str();
    }

    // --- criterion 5
    double M = traj.max_sup();
    double gamma_exp = 0.9; // near-linear exponent makes the envelope bite
    double r1 = envelope_r1(spec, gamma_exp, M);
    EnvelopeReport main_env = envelope_check(traj, gamma_exp, r1, M);

    // control: absorption removed, same data; diffusion alone cannot push the
    // bump below the e^{-|x|^gamma t} profile, so the check must report it
    NonlinearitySpec control{HenonSpec{TimeCoeff::constant(1.0), TimeCoeff::constant(0.0), 1.0,
                                       2.0, 3.0}};
    SolverConfig ccfg;
    ccfg.dt = 2e-3;
    ccfg.t_end = 1.3;
    ccfg.m1 = 1.0;
    ccfg.linear_solve_tol = 1e-10;
    ccfg.snapshot_stride = 50;
    Trajectory ctraj = simulate(control, u0, L, ccfg);
    EnvelopeReport ctrl_env = envelope_check(ctraj, gamma_exp, r1, ctraj.max_sup());

    bool pass5 = main_env.holds && !ctrl_env.holds;
    r5.pass = pass5;
    {
        std::ostringstream d;
        d << "main worst ratio " << fmt(main_env.worst_ratio) << " (<= 1), control worst ratio "
          << fmt(ctrl_env.worst_ratio) << " with " << ctrl_env.violations
          << " violating nodes (r1 = " << fmt(r1) << ")";
        r5.detail = d.str();
    }
    out.push_back(r4);
    out.push_back(r5);
}

// ---------------------------------------------------------------------------
// 6. Linear absorption rate
// ---------------------------------------------------------------------------

CriterionResult crit6() {
    CriterionResult r{6, "sup-norm decay rate of f = -u within 5% of 1", false, ""};
    // ground-mode data on a wide disk: the diffusive part of the measured
    // rate is the small discrete gap 5.783/16^2, inside the 5% budget
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 16.0, 160, 16);
    NonlinearitySpec spec = make_translation(TimeCoeff::constant(0.0), TimeCoeff::constant(1.0), 2.0);
    ScalarField u0 = eigensolve(g, SymmetryClass::Radial, 1).field;
    SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 6.0;
    cfg.m1 = 1.0;
    Trajectory traj = simulate(spec, u0, DiscreteLaplacian(g), cfg);

    std::vector<double> ts, ys;
    for (const NormSample& n : traj.norm_history)
        if (n.t >= 1.0) {
            ts.push_back(n.t);
            ys.push_back(n.sup);
        }
    ExpFit fit = fit_exponential_decay(ts, ys);
    r.pass = fit.valid && std::abs(fit.rate - 1.0) <= 0.05;
    std::ostringstream d;
    d << "fitted rate " << fmt(fit.rate) << " over t in [1, 6] (residual " << fmt(fit.residual)
      << "); the discrete Dirichlet gap contributes " << fmt(5.7832 / (16.0 * 16.0));
    r.detail = d.str();
    return r;
}

// ---------------------------------------------------------------------------
// 7. Boundary quotient predicates on random data
// ---------------------------------------------------------------------------

CriterionResult crit7() {
    CriterionResult r{7, "boundary quotient keeps signs, norms, bounds, and the far-field decay",
                      false, ""};
    PolarGrid g = build_grid(GridKind::Annulus, 1.0, 8.0, 96, 64);
    const double gamma = 0.4, rho1 = 5.0, beta_cap = 2.0;
    const double delta = 0.9 * quotient_delta_cap(g, gamma, beta_cap);
    Direction e = make_direction(g, 0);
    std::vector<bool> mask = half_mask(g, e);

    std::mt19937_64 rng(20240811ull);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 1.0);

    int passed = 0;
    std::string first_failure;
    for (int trial = 0; trial < 100; ++trial) {
        // smooth-ish random reflection difference on the half domain
        double a1 = unif(rng), a2 = unif(rng), a3 = unif(rng), a4 = unif(rng);
        ScalarField w(g);
        for (int i = 0; i < g.n_r; ++i) {
            double rr = g.radius(i);
            for (int j = 0; j < g.n_theta; ++j)
                if (mask[static_cast<std::size_t>(j)]) {
                    double th = g.angle(j);
                    w.at(i, j) = a1 * std::sin(rr) + a2 * std::cos(2.0 * th) +
                                 a3 * std::sin(th + 0.3 * rr) + 0.2 * a4;
                }
        }
        // zero-order coefficient: bounded inside B_rho1, below -gamma outside
        ScalarField c(g);
        for (int i = 0; i < g.n_r; ++i) {
            double rr = g.radius(i);
            for (int j = 0; j < g.n_theta; ++j)
                c.at(i, j) = (rr < rho1) ? 0.95 * beta_cap * unif(rng)
                                         : -gamma - 0.05 - pos(rng);
        }
        QuotientResult q = boundary_quotient(w, e, delta, gamma, rho1, c, 20,
                                             0x9e3779b97f4a7c15ull + trial);
        bool ok = q.checks.sign_ok && q.checks.equivalence_ok && q.checks.bounds_ok &&
                  q.checks.tail_ok;
        if (ok)
            ++passed;
        else if (first_failure.empty())
            first_failure = "trial " + std::to_string(trial) + ": " + q.checks.detail;
    }
    r.pass = passed == 100;
    std::ostringstream d;
    d << passed << "/100 random fields passed all four predicates (delta = " << fmt(delta) << ")";
    if (!first_failure.empty()) d << "; first failure: " << first_failure;
    r.detail = d.str();
    return r;
}

// ---------------------------------------------------------------------------
// 8. Subsolution margin
// ---------------------------------------------------------------------------

CriterionResult crit8() {
    CriterionResult r{8, "eigenfunction subsolution margin is negative on the comparison ball",
                      false, ""};
    PolarGrid unit = build_grid(GridKind::Disk, 0.0, 1.0, 128, 64);
    EigenPair eta = eigensolve(unit, SymmetryClass::Radial, 1);

    PolarGrid g = build_grid(GridKind::Disk, 0.0, 8.0, 128, 128);
    DiscreteLaplacian L(g);
    NonlinearitySpec spec =
        make_henon(TimeCoeff::constant(1.0), TimeCoeff::constant(1.0), 1.0, 2.0, 3.0);
    const double j_lo = 1.0, j_hi = 2.0, m1 = 1.0;
    double gamma = gamma_strong(spec, m1, j_lo, j_hi, eta.lambda);
    BallSpec ball = BallSpec::from_interval(j_lo, j_hi);

    // linearization coefficient from a synthetic bounded state
    ScalarField c(g);
    std::mt19937_64 rng(77001ull);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double w1 = unif(rng), w2 = unif(rng);
    for (int i = 0; i < g.n_r; ++i) {
        double rr = g.radius(i);
        for (int j = 0; j < g.n_theta; ++j) {
            double ustar = m1 * (0.5 * std::sin(w1 * 3.0 + rr) * std::cos(g.angle(j)) +
                                 0.5 * std::sin(w2 * 2.0 + 2.0 * g.angle(j)));
            c.at(i, j) = eval_fu(spec, 0.0, rr, ustar);
        }
    }
    SubsolutionReport rep = subsolution_verify(L, ball, gamma, eta.field, eta.lambda, c);
    double oracle_gap = std::abs(rep.worst_value_operator - rep.worst_value);
    r.pass = rep.holds && rep.nodes_checked > 0 &&
             oracle_gap <= 0.05 * (gamma + 4.0 * eta.lambda);
    std::ostringstream d;
    d << "worst value " << fmt(rep.worst_value) << " over " << rep.nodes_checked
      << " ball nodes (< 0); operator oracle " << fmt(rep.worst_value_operator) << " over "
      << rep.oracle_nodes << " core nodes; gamma = " << fmt(gamma);
    r.detail = d.str();
    return r;
}

// ---------------------------------------------------------------------------
// 9. Circle rigidity battery
// ---------------------------------------------------------------------------

CriterionResult crit9() {
    CriterionResult r{9, "circle rigidity: generated profiles pass, adversarial permutations fail",
                      false, ""};
    const int m = 64;
    std::mt19937_64 rng(55011ull);
    std::uniform_real_distribution<double> inc(0.01, 1.0);
    std::uniform_int_distribution<int> slot(1, m / 2 - 1);

    int pass_ok = 0, adv_ok = 0, sign_ok = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        // even profile, strictly increasing on (0, pi)
        std::vector<double> half(static_cast<std::size_t>(m / 2 + 1));
        half[0] = 0.0;
        for (int j = 1; j <= m / 2; ++j) half[j] = half[j - 1] + inc(rng);
        std::vector<double> v(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) v[j] = half[std::min(j, m - j)];

        CircleVerdict prem = circle_rigidity_check(v, CircleMode::Premises);
        CircleVerdict conc = circle_rigidity_check(v, CircleMode::Conclusion);
        bool generated_ok = prem.premises_ok && prem.orientation == +1 && conc.monotone_ok &&
                            conc.global_ok;
        // Lemma-3.2-style rigidity: the only reflection pivots are 0 and pi
        generated_ok = generated_ok && prem.reflection_points == std::vector<int>({0, m});
        if (generated_ok) ++pass_ok;
        if (conc.sign_pattern_ok) ++sign_ok;

        // adversarial interior swap (kept even, breaks monotonicity)
        int j1 = slot(rng), j2 = slot(rng);
        while (j2 == j1) j2 = slot(rng);
        std::vector<double> w = v;
        std::swap(w[j1], w[j2]);
        std::swap(w[m - j1], w[m - j2]);
        CircleVerdict adv = circle_rigidity_check(w, CircleMode::Conclusion);
        if (!(adv.monotone_ok && adv.global_ok)) ++adv_ok;
    }
    r.pass = pass_ok == 1000 && adv_ok == 1000 && sign_ok == 1000;
    std::ostringstream d;
    d << pass_ok << "/1000 generated profiles pass premises+conclusion, " << adv_ok
      << "/1000 adversarial permutations fail, " << sign_ok
      << "/1000 show the strict two-sided sign pattern";
    r.detail = d.str();
    return r;
}

// ---------------------------------------------------------------------------
// 10. Symmetrization against the exhaustive oracle
// ---------------------------------------------------------------------------

CriterionResult crit10() {
    CriterionResult r{10, "circle rearrangement equals the exhaustive minimal arrangement (m = 6)",
                      false, ""};
    const int m = 6;
    std::mt19937_64 rng(40412ull);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    std::uniform_int_distribution<int> axis(0, 2 * m - 1);
    std::uniform_int_distribution<int> dup(0, 5);

    int agree = 0, unique_ok = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> vals(m);
        for (double& v : vals) v = unif(rng);
        if (dup(rng) == 0) vals[1] = vals[4]; // exercise ties now and then
        int k = axis(rng);

        std::vector<double> ours = fs_rearrange_circle(vals, k);
        std::vector<int> order = fs_slot_order(m, k);

        // oracle: enumerate all m! arrangements, keep those nonincreasing
        // along the canonical order; they must all agree as value assignments
        std::vector<int> perm(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
        std::vector<double> found;
        bool consistent = true;
        do {
            bool mono = true;
            for (int a = 0; a + 1 < m; ++a) {
                if (vals[perm[order[a]]] < vals[perm[order[a + 1]]]) {
                    mono = false;
                    break;
                }
            }
            if (!mono) continue;
            std::vector<double> arranged(m);
            for (int sl = 0; sl < m; ++sl) arranged[sl] = vals[perm[sl]];
            if (found.empty())
                found = arranged;
            else if (arranged != found)
                consistent = false;
        } while (std::next_permutation(perm.begin(), perm.end()));

        if (consistent && !found.empty()) ++unique_ok;
        if (!found.empty() && found == ours) ++agree;
    }
    r.pass = agree == 200 && unique_ok == 200;
    std::ostringstream d;
    d << agree << "/200 multisets match the brute-force arrangement; " << unique_ok
      << "/200 oracle arrangements unique as value assignments";
    r.detail = d.str();
    return r;
}

// ---------------------------------------------------------------------------
// 11. Odd two-bump study conclusions
// ---------------------------------------------------------------------------

CriterionResult crit11() {
    CriterionResult r{11, "odd two-bump study: oddness, floor, tail, and the FS verdict", false,
                      ""};
    PolarGrid g = build_grid(GridKind::Disk, 0.0, 11.0, 128, 96);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    // the odd-invariant manifold is transversally unstable at the saturated
    // front (measured rate ~ 8.6), so the horizon stops while amplified
    // solver noise is still far below the oddness budget; the state has
    // saturated and become foliated Schwarz symmetric well before that
    cfg.t_end = 2.25;
    cfg.linear_solve_tol = 1e-13;
    cfg.snapshot_stride = 50; // every 0.05 time units
    Example1Options opt;
    Example1Result res = example1_run(g, cfg, opt);

    bool odd_ok = res.checks.odd_defect <= 1e-6 * res.m_star;
    bool floor_ok = res.checks.zeta_floor_margin >= 0.0;
    bool tail_ok = res.checks.tail_excess <= 0.0;
    bool verdict_ok = res.verdict.verdict == Verdict::FS;
    bool mono_ok = res.checks.polar_margin > 0.0;
    r.pass = odd_ok && floor_ok && tail_ok && verdict_ok && mono_ok;
    std::ostringstream d;
    d << "odd defect " << fmt(res.checks.odd_defect) << " (<= " << fmt(1e-6 * res.m_star)
      << "); floor margin " << fmt(res.checks.zeta_floor_margin) << "; tail excess "
      << fmt(res.checks.tail_excess) << "; verdict " << verdict_name(res.verdict.verdict)
      << "; polar margin " << fmt(res.checks.polar_margin) << "; M* = " << fmt(res.m_star);
    r.detail = d.str();
    return r;
}

// ---------------------------------------------------------------------------
// 12. Eigensolver accuracy
// ---------------------------------------------------------------------------

CriterionResult crit12() {
    CriterionResult r{12, "disk eigenvalues match the classical values and the dimension bound",
                      false, ""};
    PolarGrid g128 = build_grid(GridKind::Disk, 0.0, 1.0, 128, 64);
    PolarGrid g256 = build_grid(GridKind::Disk, 0.0, 1.0, 256, 64);
    double rad128 = eigensolve(g128, SymmetryClass::Radial, 1).lambda;
    double rad256 = eigensolve(g256, SymmetryClass::Radial, 1).lambda;
    double ang128 = eigensolve(g128, SymmetryClass::FirstAngular, 1).lambda;
    double ang256 = eigensolve(g256, SymmetryClass::FirstAngular, 1).lambda;
    double rad_rich = (4.0 * rad256 - rad128) / 3.0;
    double ang_rich = (4.0 * ang256 - ang128) / 3.0;

    const double rad_ref = 5.7832, ang_ref = 14.682, bound = 5.829;
    bool ok = std::abs(rad_rich - rad_ref) <= 0.01 * rad_ref &&
              std::abs(ang_rich - ang_ref) <= 0.01 * ang_ref && rad256 <= bound;
    r.pass = ok;
    std::ostringstream d;
    d << "radial: " << fmt(rad256) << " -> " << fmt(rad_rich) << " (ref " << rad_ref
      << "); first angular: " << fmt(ang256) << " -> " << fmt(ang_rich) << " (ref " << ang_ref
      << "); bound check " << fmt(rad256) << " <= " << bound;
    r.detail = d.str();
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const std::set<int>& only) {
    auto wanted = [&](int id) { return only.empty() || only.count(id) > 0; };
    std::vector<CriterionResult> all;
    auto guard = [&](int id, auto&& fn) {
        if (!wanted(id)) return;
        try {
            all.push_back(fn());
        } catch (const std::exception& ex) {
            all.push_back({id, "criterion crashed", false, ex.what()});
        }
    };

    guard(1, crit1);
    if (wanted(2) || wanted(3)) {
        std::vector<CriterionResult> pair;
        try {
            crit2_3(pair);
        } catch (const std::exception& ex) {
            pair = {{2, "criterion crashed", false, ex.what()},
                    {3, "criterion crashed", false, ex.what()}};
        }
        for (auto& r : pair)
            if (wanted(r.id)) all.push_back(std::move(r));
    }
    if (wanted(4) || wanted(5)) {
        std::vector<CriterionResult> pair;
        try {
            crit4_5(pair);
        } catch (const std::exception& ex) {
            pair = {{4, "criterion crashed", false, ex.what()},
                    {5, "criterion crashed", false, ex.what()}};
        }
        for (auto& r : pair)
            if (wanted(r.id)) all.push_back(std::move(r));
    }
    guard(6, crit6);
    guard(7, crit7);
    guard(8, crit8);
    guard(9, crit9);
    guard(10, crit10);
    guard(11, crit11);
    guard(12, crit12);

    std::sort(all.begin(), all.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    return all;
}

int print_results(const std::vector<CriterionResult>& results, std::ostream& os) {
    int failures = 0;
    for (const CriterionResult& r : results) {
        os << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name;
        if (!r.detail.empty()) os << " -- " << r.detail;
        os << "\n";
        if (!r.pass) ++failures;
    }
    return failures;
}

} // namespace fols
