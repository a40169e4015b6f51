#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fols/grid.hpp"
#include "fols/nonlin.hpp"
#include "fols/omega.hpp"
#include "fols/solver.hpp"
#include "fols/symmetry.hpp"

namespace fols {

enum class SymmetryClass { Radial, FirstAngular };

/// Discrete Dirichlet eigenpair of the polar Laplacian, computed per angular
/// Fourier sector (m = 0 or m = 1) so that the 2D embedding
/// rho(r) * cos(m theta) is an exact eigenvector of the assembled operator.
struct EigenPair {
    double lambda = 0.0;
    SymmetryClass symmetry_class = SymmetryClass::Radial;
    ScalarField field;            // 2D embedding, sup norm 1
    std::vector<double> radial;   // ring profile (same normalization)
    double center = 0.0;          // center value (0 for the m = 1 sector)
    double residual = 0.0;        // ||L phi + lambda phi||_2 / ||phi||_2
};

/// Inverse power iteration with deflation on the sector-reduced tridiagonal
/// problem. index is 1-based within the sector. cache_dir, when nonempty,
/// stores/loads eigenpairs keyed by (grid, sector, index).
EigenPair eigensolve(const PolarGrid& g, SymmetryClass which, int index,
                     const std::string& cache_dir = "");

// ---------------------------------------------------------------------------
// Two-mode forcing schedule: drives u = alpha(t) phi1 + beta(t) phi2 through
// alternating windows where the first-angular mode or the radial mode
// dominates. Each cycle runs four phases:
//   1. [T_n, T_n+1):        zeta = 1 + T_n - t,  psi = lambda2 (t - T_n)
//   2. [T_n+1, Tbar_n):     zeta = 0,            psi = lambda2
//   3. [Tbar_n, Tbar_n+1):  zeta = t - Tbar_n,   psi = lambda2 (Tbar_n+1 - t)
//   4. [Tbar_n+1, T_{n+1}): zeta = 1,            psi = 0
// with Tbar_n = T_n + 1 + A1 and T_{n+1} = Tbar_n + 1 + A2,
// A2 = (lambda1 A1 + 2 lambda1 - mu) / (mu - lambda1), which restores
// alpha(T_{n+1}) = alpha(T_n) exactly.
// ---------------------------------------------------------------------------

struct SchedulePhase {
    double t0 = 0.0, t1 = 0.0; // [t0, t1)
    double z0 = 0.0, z1 = 0.0; // zeta(t) = z0 + z1 (t - t0)
    double p0 = 0.0, p1 = 0.0; // psi(t)  = p0 + p1 (t - t0)
    double alpha0 = 1.0, beta0 = 0.0; // closed-form values at t0
};

struct Schedule {
    double lambda1 = 0.0, lambda2 = 0.0, mu = 0.0;
    double a1_min = 0.5;
    double margin_factor = 4.0;
    std::vector<SchedulePhase> phases;
    std::vector<double> T;    // T[k] = T_{k+1}; T[0] = 0
    std::vector<double> Tbar; // Tbar[k] = Tbar_{k+1}
    std::vector<double> A1, A2;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0; // transition-phase constants

    double horizon() const { return phases.back().t1; }
    double zeta(double t) const;
    double psi(double t) const;
};

/// Picks A1 per cycle as the smallest value >= a1_min (monotone bisection on
/// the closed forms) for which the cycle targets
///   |alpha(Tbar_k)| <= 2^-k / margin, |beta(Tbar_k) - 1| <= 2^-k / margin,
///   |beta(T_{k+1})| <= 2^-(k+1) / margin
/// hold, then closes the cycle with the A2 formula. Requires
/// lambda1 < mu < lambda2.
Schedule build_schedule(double lambda1, double lambda2, double mu, int k_max,
                        double a1_min = 0.5, double margin_factor = 4.0);

/// Exact piecewise evaluation of the mode amplitudes. Constant phases use
/// closed forms; the two transition phases evaluate the variation-of-
/// parameters integral with Gauss-Legendre quadrature at machine accuracy.
std::pair<double, double> alpha_beta(const Schedule& s, double t);

/// "t,zeta,psi,alpha,beta" at the given sampling step over [0, horizon].
void write_schedule_csv(const Schedule& s, double dt_sample, std::ostream& os);

/// Assembles the Example-2 forcing f = mu zeta(t) u + psi(t) phi2(|x|) on the
/// grid phi2 was computed on.
NonlinearitySpec make_example2(const PolarGrid& g, double mu,
                               std::shared_ptr<const Schedule> schedule, const EigenPair& phi2);

struct Example2Options {
    int k_max = 6;
    double mu = 0.0;            // <= 0: midpoint of (lambda1, lambda2)
    int compare_cycles = 2;     // dense closed-form comparison window
    double compare_stride = 0.05;
    VerdictTols verdict_tols{1e-2, 1e-2};
    std::string cache_dir;
};

struct Example2Result {
    EigenPair phi1, phi2;
    std::shared_ptr<const Schedule> schedule;
    Trajectory traj;
    OmegaSample sample;       // snapshots at the T_k / Tbar_k markers
    VerdictReport verdict;
    double max_closed_form_error = 0.0; // sup error within the compare window
    std::vector<std::pair<double, double>> snapshot_errors; // (t, sup error)
};

/// Runs the two-mode study end to end: eigenpairs, schedule, simulation from
/// u0 = phi1, closed-form cross-check, marker-time omega sample and verdict.
Example2Result example2_run(const PolarGrid& g, const SolverConfig& cfg,
                            const Example2Options& opt = {});

// ---------------------------------------------------------------------------
// Localized ground state and the odd-data study built on it.
// ---------------------------------------------------------------------------

struct GroundState {
    ScalarField field;           // radial 2D embedding on the ball grid
    std::vector<double> radial;  // ring profile
    double center = 0.0;
    double lambda1_ball = 0.0;   // discrete principal eigenvalue of the ball
    double galerkin_amplitude = 0.0;
    double residual = 0.0;       // sup |S z - g(z)| at the solution
    int newton_iterations = 0;
};

/// Positive solution of -Lap z = z^p - lambda z on the disk grid (Dirichlet),
/// by Newton iteration on the radial sector system seeded with the one-mode
/// Galerkin amplitude; retries with rescaled amplitudes on divergence.
/// Requires 0 < lambda < lambda1(ball).
GroundState solve_elliptic_ground(const PolarGrid& ball_grid, double p, double lambda,
                                  double newton_tol = 1e-10);

struct Example1Options {
    // ball carrying the ground state, strictly inside the open first quadrant
    double ball_cx = 2.1, ball_cy = 2.1, ball_radius = 1.4;
    int ball_n_r = 128;
    double lambda_fraction = 0.25; // lambda = fraction * lambda1(ball)
    double lambda_out = 4.0;       // stability floor beyond r_star
    double r_star = 5.5;
    double m_star_factor = 1.2;    // M* = factor * 4 sup zeta
    double bump_width_factor = 1.3;   // support radius = factor * ball_radius
    double bump_amp_factor = 1.15;    // initial amplitude = factor * sup zeta
    double tail_theta_factor = 0.9;   // theta = factor * sqrt(lambda_out)
    double zeta_floor_tol = 1e-3;     // u >= (1 - tol) zeta on the ball
    double sample_fraction = 0.8;     // omega window starts at fraction * t_end
    double mono_tol_factor = 2e-4;    // polar-monotonicity budget, times M*
    VerdictTols verdict_tols{-1.0, -1.0}; // <= 0: scaled to M* inside the run
    std::string cache_dir;
};

struct Example1Checks {
    double odd_defect = 0.0;        // max over snapshots of the odd-symmetry defect
    double zeta_floor_margin = 0.0; // min over snapshots/ball nodes of u - (1-tol) zeta
    double tail_excess = 0.0;       // max of |u| - M* e^{-theta (r - r_star)} beyond r_star
    double positive_half_min = 0.0; // min of u over the x1 > 0 half
    double sup_max = 0.0;           // max sup norm over the run
    double polar_margin = 0.0;      // min over late snapshots of tol - polar deficit
};

struct Example1Result {
    NonlinearitySpec spec;
    Example1Report spec_report;
    GroundState zeta;
    double m_star = 0.0;
    double u0_amplitude = 0.0;
    Trajectory traj;
    OmegaSample sample;
    VerdictReport verdict;
    Example1Checks checks;
};

/// Odd two-bump study: ground state on the off-center ball, composite
/// nonlinearity, odd initial data dominating the ground state, simulation,
/// and the full battery of conclusions (odd symmetry, floor above zeta,
/// exponential tail, positivity on the half plane, symmetry verdict).
Example1Result example1_run(const PolarGrid& g, const SolverConfig& cfg,
                            const Example1Options& opt = {});

} // namespace fols
