#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fols/grid.hpp"
#include "fols/solver.hpp"

namespace fols {

/// Reflection difference w_e = u - u o sigma_e restricted to the half domain
/// {x . e > 0}; zero on the complement and on H(e). sigma_e is the reflection
/// across the hyperplane perpendicular to e, so w_e measures how far u is
/// from being symmetric about H(e).
ScalarField w_field(const ScalarField& u, Direction e);

/// sup over the half mask of max(0, -w_e): the size of the negative part of
/// the reflection difference. Zero iff u >= u o sigma_e on the half domain.
double neg_deficit(const ScalarField& u, Direction e);

struct ReflectionArc {
    bool empty = false;
    std::vector<int> m_set;   // half indices with neg_deficit <= tol
    int best_half_index = 0;  // direction of maximal margin (min deficit)
    double theta_lo = 0.0;    // arc endpoints (absolute angles, lo <= hi)
    double theta_hi = 0.0;
    double width = 0.0;       // theta_hi - theta_lo, capped at 2 pi
};

/// Scans all 2 n_theta half-grid directions, collects the set with
/// neg_deficit <= tol, and returns the maximal contiguous arc of that set
/// around the direction of maximal margin. An empty set is reported as such.
ReflectionArc m_arc(const ScalarField& u, double tol);

/// Foliated Schwarz rearrangement about the axis of p: on every circle the
/// multiset of values is reassigned so that, read along slots ordered by
/// increasing |theta - phi(p)| (ties broken toward positive offsets first),
/// the values are nonincreasing. The disk center is left in place. Per-circle
/// multisets, hence per-circle sup and quadrature norms, are preserved.
ScalarField fs_symmetrize(const ScalarField& u, Direction p);

/// One circle of the rearrangement, usable for any even slot count >= 2;
/// axis_half_index is in units of (slot spacing)/2, i.e. in [0, 2n).
std::vector<double> fs_rearrange_circle(const std::vector<double>& circle, int axis_half_index);

/// The slot visit order underlying the rearrangement (exposed for oracles).
std::vector<int> fs_slot_order(int n_slots, int axis_half_index);

/// sup |u - fs_symmetrize(u, p)|.
double fs_deficit(const ScalarField& u, Direction p);

/// Exhaustive argmin of fs_deficit over all half-grid directions; ties break
/// toward the smallest half index.
Direction best_axis(const ScalarField& u);

/// Max positive violation, over circles and slot pairs, of nonincreasingness
/// in |theta - phi(p)|. Zero iff every circle profile is nonincreasing in the
/// angular distance from the axis.
double polar_monotonicity_deficit(const ScalarField& u, Direction p);

/// Max over circles of (max - min) of the circle values; zero iff radial.
double radial_deficit(const ScalarField& u);

struct SymmetryReport {
    std::vector<double> deficits; // per half index, size 2 n_theta
    ReflectionArc arc;
    Direction axis;
    double fs_def = 0.0;
    double polar_def = 0.0;
    double radial_def = 0.0;
    double tol = 0.0;
};

struct ReportTols {
    /// M-set membership tolerance: factor * machine eps * sup|u| by default.
    double deficit_tol_factor = 10.0;
    double deficit_tol_abs = -1.0; // overrides the factor rule when >= 0
};

SymmetryReport symmetry_report(const ScalarField& u, const ReportTols& tols = {});

/// CSV: "e_half_index,deficit" rows followed by a summary block.
void write_symmetry_report(const SymmetryReport& rep, const PolarGrid& g, std::ostream& os);

// ---------------------------------------------------------------------------
// Boundary quotient transform: divide a reflection difference on the half
// domain by concave profiles g(|x|) h(x1) that equal 1/2 on the Dirichlet
// boundary and level off at (1+delta)/2 a distance delta inside. The quotient
// keeps the sign of w nodewise, changes sup norms by at most a factor 4 on
// any subset, and turns the effective zero-order coefficient strictly
// negative outside a compact core, at the price of bounded drift terms
// supported on the two boundary strips.
// ---------------------------------------------------------------------------

struct BoundaryQuotient {
    double delta = 0.0;     // strip width
    double gamma = 0.0;     // decay rate the far field must beat
    double rho1 = 0.0;      // radius beyond which c < -gamma is assumed
    Direction e;            // half domain direction
    std::vector<bool> mask; // half mask of e
    std::vector<bool> core; // nodes of G = {dist to boundary > delta, |x| < rho1}

    ScalarField g_profile;  // g(|x|) sampled on the grid
    ScalarField h_profile;  // h(x1) sampled on the grid (x1 measured along e)
    ScalarField drift1;     // first drift coefficient (along e)
    ScalarField drift2;     // second drift coefficient (transverse)
    ScalarField zeroth;     // transformed zero-order coefficient c_hat
};

struct QuotientChecks {
    bool sign_ok = false;       // sign(w_hat) == sign(w) nodewise
    bool equivalence_ok = false;// 1/4 ||w_hat|| <= ||w|| <= ||w_hat|| on all tested submasks
    bool bounds_ok = false;     // strip-localized coefficient bounds hold nodewise
    bool tail_ok = false;       // c_hat < -gamma outside the core
    double worst_bound_slack = 0.0; // min over nodes of bound - |coefficient|
    double worst_tail_slack = 0.0;  // min over non-core nodes of -gamma - c_hat
    std::string detail;
};

/// Builds the transform for the half domain of e and verifies the four
/// predicates against the supplied zero-order field c (the linearization
/// coefficient). submask_trials random submasks are drawn for the norm
/// equivalence test. Rejects delta violating the admissibility bound
/// delta < min{ 1/(gamma + sup_{core}|c|), R/(8R + 2(N-1)) } (second term for
/// the annulus only).
struct QuotientResult {
    BoundaryQuotient transform;
    ScalarField w_hat;
    QuotientChecks checks;
};
QuotientResult boundary_quotient(const ScalarField& w, Direction e, double delta, double gamma,
                                 double rho1, const ScalarField& c_field, int submask_trials,
                                 unsigned long long seed);

/// Admissibility cap on delta for a given interior coefficient bound.
double quotient_delta_cap(const PolarGrid& g, double gamma, double c_bound_interior);

// ---------------------------------------------------------------------------
// Subsolution verification: phi(x,t) = e^{-gamma t} eta((x - x0)/rb) built
// from the principal Dirichlet eigenpair (eta, lambda1) of the unit disk is a
// strict subsolution of w_t = Lap w + c w on the ball B iff
// (-gamma + lambda1 / rb^2 + c) < 0 at the nodes of B.
// ---------------------------------------------------------------------------

struct BallSpec {
    double center_x1 = 0.0; // center on the e1 axis
    double radius = 0.0;

    static BallSpec from_interval(double a, double b) {
        return BallSpec{0.5 * (a + b), 0.5 * (b - a)};
    }
};

struct SubsolutionReport {
    bool holds = false;
    double worst_value = 0.0; // max over B-interior nodes of (-gamma + lambda1/rb^2 + c)
    double margin = 0.0;      // -worst_value
    int nodes_checked = 0;
    /// Independent re-evaluation: max over core nodes of
    /// (-gamma - (Lap_h phi)/phi + c), using the assembled discrete Laplacian
    /// applied to the interpolated eigenfunction.
    double worst_value_operator = 0.0;
    int oracle_nodes = 0;
};

SubsolutionReport subsolution_verify(const DiscreteLaplacian& L, const BallSpec& ball,
                                     double gamma, const ScalarField& eta, double lambda1,
                                     const ScalarField& c_field);

// ---------------------------------------------------------------------------
// Circle rigidity: an even 2pi-periodic sample that satisfies one-sided
// reflection inequalities for all small positive pivots is monotone on
// (0, pi), and the reflection inequality then holds for every pivot in
// (0, pi) (with the mirrored sign on (-pi, 0)).
// ---------------------------------------------------------------------------

enum class CircleMode { Premises, Conclusion };

struct CircleVerdict {
    bool even = false;             // v(j) == v(m - j)
    int orientation = 0;           // +1: v(eta+theta) >= v(eta-theta); -1: <=; 0 equality/mixed
    bool strict = false;           // all tested local inequalities strict
    bool premises_ok = false;
    bool monotone_ok = false;      // nondecreasing (orientation +1) on (0, pi)
    bool global_ok = false;        // pairwise inequality for all grid pivots in (0, pi)
    bool sign_pattern_ok = false;  // strict > on (0,pi) pivots and < on (-pi,0) pivots
    std::vector<int> reflection_points; // half indices eta with v(2 eta - .) == v
    std::vector<std::string> violations;
    bool ok(CircleMode m) const { return m == CircleMode::Premises ? premises_ok : (monotone_ok && global_ok); }
};

/// v holds samples at theta_j = 2 pi j / m, m even. mode Premises checks
/// evenness and the local reflection inequalities for pivots in the first
/// band of eps_slots grid slots; mode Conclusion checks monotonicity on
/// (0, pi) and the global pairwise inequality. orientation_hint: 0 = detect.
CircleVerdict circle_rigidity_check(const std::vector<double>& v, CircleMode mode,
                                    int eps_slots = 1, int orientation_hint = 0);

} // namespace fols
