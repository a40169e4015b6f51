#pragma once

#include <map>
#include <string>
#include <vector>

#include "fols/grid.hpp"
#include "fols/nonlin.hpp"

namespace fols {

/// Conservative 5-point polar Laplacian
///   Lu = (1/r) d/dr (r du/dr) + (1/r^2) d2u/dtheta2
/// with Dirichlet ghost elimination at r_inner (annulus) and r_outer, and the
/// disk center coupled to the mean of the first ring. With the cell-area
/// weights of PolarGrid the operator is exactly self-adjoint, the off-diagonal
/// couplings are nonnegative, and every row sum is <= 0 (an M-matrix after
/// I - dt*L), which is what the discrete comparison arguments rely on.
class DiscreteLaplacian {
public:
    explicit DiscreteLaplacian(const PolarGrid& g);

    const PolarGrid& grid() const { return grid_; }

    /// out = L u
    ScalarField apply(const ScalarField& u) const;

    /// Row data for ring i: couplings to the inner/outer radial neighbor, the
    /// two angular neighbors, and the diagonal. Boundary rows simply drop the
    /// ghost coupling from the row (Dirichlet zero), which is why their sums
    /// go negative.
    double coeff_inner(int i) const { return c_in_[static_cast<std::size_t>(i)]; }
    double coeff_outer(int i) const { return c_out_[static_cast<std::size_t>(i)]; }
    double coeff_angular(int i) const { return c_ang_[static_cast<std::size_t>(i)]; }
    double coeff_diag(int i) const { return c_diag_[static_cast<std::size_t>(i)]; }
    /// Center row: L u |_center = center_coupling * (ring-0 mean - u_center).
    double center_coupling() const { return center_coupling_; }

    /// Row sum of the full operator row at ring i (0 in the interior,
    /// negative against an eliminated Dirichlet ghost).
    double row_sum(int i) const;

private:
    PolarGrid grid_;
    std::vector<double> c_in_, c_out_, c_ang_, c_diag_;
    double center_coupling_ = 0.0;
};

enum class Scheme { IMEX, FullyExplicit };

struct SolverConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::IMEX;
    double linear_solve_tol = 1e-10; // relative residual of the CG solve
    double t_end = 1.0;
    double m1 = 1.0;                  // declared sup bound of the solution
    double blowup_factor = 10.0;      // abort when sup exceeds blowup_factor * m1
    std::vector<double> snapshot_times; // explicit snapshot times (merged with stride)
    int snapshot_stride = 0;            // every k-th step; 0 = none
    int max_cg_iterations = 20000;
    /// Optional constraint applied after every accepted step (e.g. projection
    /// onto an invariant subspace the exact solution is known to live on, to
    /// keep transversally unstable noise from compounding). Must be
    /// deterministic; the identity when empty.
    std::function<void(ScalarField&, double t)> post_step;
};

struct NormSample {
    double t = 0.0;
    double sup = 0.0;
    double l2 = 0.0;
};

struct Trajectory {
    std::vector<ScalarField> snapshots;      // time-tagged fields, strictly increasing times
    std::vector<NormSample> norm_history;    // per accepted step
    std::map<std::string, std::string> meta; // config echo, filled by callers

    const ScalarField& last() const { return snapshots.back(); }
    double max_sup() const;
};

struct CgStats {
    int iterations = 0;
    double residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradient for (I - dt L) x = rhs in the
/// cell-weighted inner product (the system is SPD there). x0 is the initial
/// iterate. Throws on iteration-cap overrun.
ScalarField solve_helmholtz(const DiscreteLaplacian& L, double dt, const ScalarField& rhs,
                            const ScalarField& x0, double rel_tol, int max_iter,
                            CgStats* stats = nullptr);

/// One time step. IMEX: (I - dt L) u_next = u + dt f(t, r, u).
/// FullyExplicit: u_next = u + dt (L u + f(t, r, u)), valid only under the
/// polar CFL bound dt <= 0.25 min(dr^2, (r_min dtheta)^2).
ScalarField step(const ScalarField& u, double t, const NonlinearitySpec& spec,
                 const DiscreteLaplacian& L, const SolverConfig& cfg);

/// March step() to t_end, recording norms each step and snapshots per config.
/// Validates the scheme's step restriction up front, aborts when the sup norm
/// exceeds the blow-up guard, and always snapshots the initial and final states.
Trajectory simulate(const NonlinearitySpec& spec, const ScalarField& u0,
                    const DiscreteLaplacian& L, const SolverConfig& cfg);

/// Persist a run: <dir>/meta, <dir>/norms.csv ("t,sup,l2") and one
/// snap_<time>.csv per snapshot.
void save_trajectory(const Trajectory& traj, const std::string& dir);

} // namespace fols
