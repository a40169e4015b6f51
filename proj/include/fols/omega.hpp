#pragma once

#include <string>
#include <vector>

#include "fols/solver.hpp"
#include "fols/symmetry.hpp"

namespace fols {

/// Late-time snapshot sample standing in for the omega-limit set. Every
/// verdict derived from it carries the sampling window; finite sampling can
/// only ever exhibit elements, not certify the full set.
struct OmegaSample {
    std::vector<ScalarField> snapshots; // strictly increasing times
    std::vector<std::vector<double>> pairwise_sup; // sup distances, symmetric
    std::vector<int> cluster; // label per snapshot (greedy union at cluster_tol)
    bool contains_zero = false;
    double t_min = 0.0, t_max = 0.0;
    double cluster_tol = 0.0, zero_tol = 0.0;
};

struct OmegaTols {
    double cluster_tol = 1e-3; // default scale: 1e-3 * M1
    double zero_tol = 1e-6;    // default scale: 1e-6 * M1
};

/// Collects trajectory snapshots with t >= t_min at the given stride,
/// computes pairwise sup distances, cluster labels, and the zero flag.
/// Throws when fewer than two snapshots land in the window.
OmegaSample collect_omega(const Trajectory& traj, double t_min, int stride,
                          const OmegaTols& tols = {});

enum class Verdict { FS, Radial, Zero, Mixed, Undecided };
const char* verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);

struct VerdictTols {
    double fs_tol = 1e-3;
    double radial_tol = 1e-3;
};

struct VerdictReport {
    Verdict verdict = Verdict::Undecided;
    Direction axis;            // common axis minimizing the max fs deficit
    double worst_fs = 0.0;     // max over snapshots of fs_deficit at axis
    double best_radial = 0.0;  // min over snapshots of radial_deficit
    std::vector<double> fs_deficits;     // per snapshot, at the common axis
    std::vector<double> radial_deficits; // per snapshot
    std::string detail;
};

/// Classifies the sample: Zero when the sample reaches the zero floor; Mixed
/// when a radial snapshot coexists with a non-radial snapshot that is
/// foliated Schwarz symmetric about the common axis; FS when one common axis
/// works for every snapshot; Radial when some snapshot is radial; otherwise
/// Undecided. Invariant under snapshot reordering; tightening tolerances
/// never upgrades a verdict.
VerdictReport asymptotic_fs_verdict(const OmegaSample& sample, const VerdictTols& tols = {});

struct EnvelopeReport {
    bool holds = false;
    double worst_ratio = 0.0; // max over nodes/snapshots of |u| / bound
    int violations = 0;
    double worst_r = 0.0, worst_t = 0.0;
};

/// Verifies the decay envelope |u(x,t)| <= M e^{r1^gamma - |x|^gamma min(t,1)}
/// (and its t >= 1 stationary form M e^{r1^gamma} e^{-|x|^gamma}) at every
/// node of every snapshot. M should be the trajectory sup norm.
EnvelopeReport envelope_check(const Trajectory& traj, double gamma_exp, double r1, double M);

/// The smallest admissible truncation radius for the envelope argument,
/// evaluated from a Henon spec: r1 must dominate both coefficient balances
/// and 1. gamma_exp must satisfy 0 < gamma_exp < min(beta, 1).
double envelope_r1(const NonlinearitySpec& spec, double gamma_exp, double sup_u);

struct DecayFitReport {
    double rate = 0.0;      // +inf sentinel when the deficit is identically zero
    double residual = 0.0;
    int samples = 0;
    bool decaying = false;  // rate > 0
    bool infinite = false;  // sentinel flag
};

/// Least-squares exponential fit of t -> neg_deficit(u(t), e) over snapshots
/// with t >= tau.
DecayFitReport reflection_decay_fit(const Trajectory& traj, Direction e, double tau);

} // namespace fols
