#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fols/grid.hpp"

namespace fols {

/// Bounded continuous time coefficient a(t) or b(t).
struct TimeCoeff {
    enum class Kind { Constant, Sinusoid };
    Kind kind = Kind::Constant;
    double value = 0.0;     // Constant
    double mean = 0.0;      // Sinusoid: mean + amplitude * sin(2 pi t / period)
    double amplitude = 0.0;
    double period = 1.0;

    static TimeCoeff constant(double c) { return TimeCoeff{Kind::Constant, c, c, 0.0, 1.0}; }
    static TimeCoeff sinusoid(double mean, double amplitude, double period);

    double operator()(double t) const;
    double sup() const;  // sup_t value
    double inf() const;  // inf_t value
    double sup_abs() const;
};

struct Schedule; // defined in studies.hpp

/// f(t,r,u) = a(t) r^alpha |u|^(p-1) u - b(t) r^beta u, with 0 <= alpha < beta
/// and inf b >= eta > 0.
struct HenonSpec {
    TimeCoeff a, b;
    double alpha = 0.0, beta = 1.0, p = 3.0;
};

/// f(t,u) = a(t) |u|^(p-1) u - b(t) u (no spatial dependence).
struct TranslationSpec {
    TimeCoeff a, b;
    double p = 3.0;
};

/// f(t,r,u) = core(u) - V(r) u with a bounded odd core and polynomial radial
/// potential V(r) = v0 + v2 r^2.
struct PotentialSpec {
    double v0 = 0.0, v2 = 1.0;
    double core_amp = 0.0; // core(u) = core_amp * tanh(u)
};

/// Autonomous composite f(r,u) = a(r) u^p eta_M(u) - b(r) u. eta_M is a
/// quintic-smoothstep even cutoff, identically 1 on |u| <= M*/2 and 0 on
/// |u| >= M*. a == 1 on [0, band_hi] and falls smoothly to 0 at R*;
/// b == lambda on [0, band_hi] and rises smoothly to b_out > Lambda_out at R*.
struct Example1Spec {
    int p_odd = 3;
    double lambda = 1.0;
    double lambda_out = 1.0; // stability floor beyond R*
    double m_star = 1.0;
    double r_star = 1.0;
    double band_lo = 0.0, band_hi = 0.5;
    double b_out = 0.0;

    double cutoff_u(double u) const;    // eta_M
    double cutoff_u_du(double u) const; // d eta_M / du
    double coeff_a(double r) const;
    double coeff_b(double r) const;
};

/// Linear drive f(t,x,u) = mu * zeta(t) * u + psi(t) * phi2(|x|), where phi2
/// is a radial eigenfunction sampled on the simulation grid and (zeta, psi)
/// come from a piecewise schedule (module studies fills the callables).
struct Example2Spec {
    double mu = 0.0;
    std::shared_ptr<const Schedule> schedule;
    std::function<double(double)> zeta;
    std::function<double(double)> psi;
    // radial profile of phi2 on the target grid
    double r_inner = 0.0, dr = 0.0;
    std::vector<double> phi2_ring;
    double phi2_center = 0.0;

    double phi2_at(double r) const;
};

struct NonlinearitySpec {
    std::variant<HenonSpec, TranslationSpec, PotentialSpec, Example1Spec, Example2Spec> v;

    const char* name() const;
    bool autonomous() const;
};

NonlinearitySpec make_henon(TimeCoeff a, TimeCoeff b, double alpha, double beta, double p);
NonlinearitySpec make_translation(TimeCoeff a, TimeCoeff b, double p);
NonlinearitySpec make_potential(double v0, double v2, double core_amp);

double eval_f(const NonlinearitySpec& s, double t, double r, double u);
double eval_fu(const NonlinearitySpec& s, double t, double r, double u);

/// Sampled Lipschitz bound of f in u over [-M, M] and the radial range of the
/// grid (plus the time-coefficient envelope). Used by the IMEX step restriction.
double lipschitz_bound(const NonlinearitySpec& s, const PolarGrid& g, double M);

struct StabilityCheck {
    bool holds = false;
    double margin = 0.0; // RHS - LHS of the stability inequality
    double lhs = 0.0;
    double rhs = 0.0;
    bool tail_certified = false; // analytic tail certificate available
    std::string lattice;          // human-readable description of the sample lattice
};

/// Quantitative exterior-stability check: over r > rho and |u| <= eps the
/// sup of f_u must stay below -(max_{r in J, |u| <= M} |f_u| + 4 lambda1/|J|^2).
/// Sampled on a geometric r-lattice; for Henon/Translation variants the tail
/// beyond the lattice is certified analytically by dominance of the absorption
/// term. Variants without a tail certificate return the sampled verdict with
/// tail_certified = false.
StabilityCheck check_f2_strong(const NonlinearitySpec& s, double M, double rho, double eps,
                               double j_lo, double j_hi, double lambda1,
                               int n_r_samples = 400, int n_u_samples = 201);

/// Potential-form stability: min_(rho,inf) V > max_J |V| + 4 lambda1/|J|^2 + 2 C0.
StabilityCheck check_potential_condition(const PotentialSpec& V, double rho, double j_lo,
                                         double j_hi, double lambda1, double c0,
                                         int n_samples = 400);

/// gamma of the strong-stability linearization: max_{r in J, |u| <= M1} |f_u|
/// + 4 lambda1 / |J|^2.
double gamma_strong(const NonlinearitySpec& s, double M1, double j_lo, double j_hi,
                    double lambda1, int n_samples = 400);

struct Example1Params {
    int p_odd = 3;
    double lambda = 1.0;
    double lambda_out = 1.0;
    double m_star = 1.0;
    double r_star = 4.0;
    double band_lo = 1.0, band_hi = 3.5;
};

/// Builds the explicit composite nonlinearity. Preconditions: p odd >= 3,
/// band strictly inside (0, R*).
NonlinearitySpec build_example1(const Example1Params& p);

struct Example1Report {
    bool ok = false;
    double odd_defect = 0.0;        // max |f(r,-u) + f(r,u)|
    double sign_margin = 0.0;       // max u f(r,u) over |u| >= M*  (need < 0)
    double far_slope_margin = 0.0;  // max f_u + Lambda_out over r > R*, |u| <= M* (need < 0)
    double band_defect = 0.0;       // max |f - (u^p - lambda u)| on band, |u| < M*/2
    std::string detail;
};

/// Verifies oddness, the sign condition outside [-M*, M*], the stability
/// slope beyond R*, and agreement with u^p - lambda u on the band, on a dense
/// lattice. Fails (ok = false) when any margin is non-negative.
Example1Report check_example1(const NonlinearitySpec& s, int n_r = 600, int n_u = 601);

} // namespace fols
