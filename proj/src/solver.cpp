#include "fols/solver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fols {

DiscreteLaplacian::DiscreteLaplacian(const PolarGrid& g) : grid_(g) {
    const int nr = g.n_r;
    c_in_.resize(nr);
    c_out_.resize(nr);
    c_ang_.resize(nr);
    c_diag_.resize(nr);
    const double dr2 = g.dr * g.dr;
    const double dth2 = g.dtheta * g.dtheta;
    for (int i = 0; i < nr; ++i) {
        double r = g.radius(i);
        c_in_[i] = (r - 0.5 * g.dr) / (r * dr2);
        c_out_[i] = (r + 0.5 * g.dr) / (r * dr2);
        c_ang_[i] = 1.0 / (r * r * dth2);
        c_diag_[i] = -(c_in_[i] + c_out_[i] + 2.0 * c_ang_[i]);
    }
    if (g.has_center()) center_coupling_ = 4.0 / dr2;
}

ScalarField DiscreteLaplacian::apply(const ScalarField& u) const {
    require(u.grid == grid_, "DiscreteLaplacian::apply: grid mismatch");
    const PolarGrid& g = grid_;
    const int nr = g.n_r, nt = g.n_theta;
    ScalarField out(g);
    out.time_tag = u.time_tag;
    for (int i = 0; i < nr; ++i) {
        const double ci = c_in_[i], co = c_out_[i], ca = c_ang_[i], cd = c_diag_[i];
        for (int j = 0; j < nt; ++j) {
            double inner;
            if (i > 0)
                inner = u.at(i - 1, j);
            else
                inner = g.has_center() ? *u.center : 0.0; // Dirichlet ghost on the annulus
            double outer = (i + 1 < nr) ? u.at(i + 1, j) : 0.0;
            double left = u.at(i, (j + nt - 1) % nt);
            double right = u.at(i, (j + 1) % nt);
            out.at(i, j) = ci * inner + co * outer + ca * (left + right) + cd * u.at(i, j);
        }
    }
    if (g.has_center()) {
        double mean = 0.0;
        for (int j = 0; j < nt; ++j) mean += u.at(0, j);
        mean /= nt;
        out.center = center_coupling_ * (mean - *u.center);
    }
    return out;
}

double DiscreteLaplacian::row_sum(int i) const {
    double s = c_diag_[i] + 2.0 * c_ang_[i];
    if (i > 0 || grid_.has_center()) s += c_in_[i];
    if (i + 1 < grid_.n_r) s += c_out_[i];
    return s;
}

double Trajectory::max_sup() const {
    double m = 0.0;
    for (const auto& n : norm_history) m = std::max(m, n.sup);
    return m;
}

namespace {

// y = (I - dt L) x
ScalarField helmholtz_apply(const DiscreteLaplacian& L, double dt, const ScalarField& x) {
    ScalarField y = L.apply(x);
    const std::size_t n = x.values.size();
    for (std::size_t k = 0; k < n; ++k) y.values[k] = x.values[k] - dt * y.values[k];
    if (x.center) y.center = *x.center - dt * (*y.center);
    return y;
}

void axpy(double a, const ScalarField& x, ScalarField& y) {
    const std::size_t n = x.values.size();
    for (std::size_t k = 0; k < n; ++k) y.values[k] += a * x.values[k];
    if (x.center) *y.center += a * (*x.center);
}

} // namespace

ScalarField solve_helmholtz(const DiscreteLaplacian& L, double dt, const ScalarField& rhs,
                            const ScalarField& x0, double rel_tol, int max_iter, CgStats* stats) {
    const PolarGrid& g = L.grid();
    // Jacobi preconditioner: diagonal of I - dt L.
    std::vector<double> inv_diag(static_cast<std::size_t>(g.n_r));
    for (int i = 0; i < g.n_r; ++i) inv_diag[i] = 1.0 / (1.0 - dt * L.coeff_diag(i));
    double inv_diag_center = g.has_center() ? 1.0 / (1.0 + dt * L.center_coupling()) : 0.0;

    auto precond = [&](const ScalarField& r) {
        ScalarField z(g);
        for (int i = 0; i < g.n_r; ++i)
            for (int j = 0; j < g.n_theta; ++j) z.at(i, j) = inv_diag[i] * r.at(i, j);
        if (r.center) z.center = inv_diag_center * (*r.center);
        return z;
    };

    ScalarField x = x0;
    ScalarField r = rhs;
    {
        ScalarField ax = helmholtz_apply(L, dt, x);
        axpy(-1.0, ax, r);
    }
    double rhs_norm = std::sqrt(weighted_dot(rhs, rhs));
    if (rhs_norm == 0.0) rhs_norm = 1.0;
    ScalarField z = precond(r);
    ScalarField p = z;
    double rz = weighted_dot(r, z);
    double res = std::sqrt(weighted_dot(r, r));
    int it = 0;
    while (res > rel_tol * rhs_norm) {
        if (it >= max_iter) {
            std::ostringstream msg;
            msg << "solve_helmholtz: CG failed to converge in " << max_iter
                << " iterations (residual " << res / rhs_norm << ", tol " << rel_tol << ")";
            fail(msg.str());
        }
        ScalarField ap = helmholtz_apply(L, dt, p);
        double pap = weighted_dot(p, ap);
        require(pap > 0.0, "solve_helmholtz: lost positive definiteness");
        double alpha = rz / pap;
        axpy(alpha, p, x);
        axpy(-alpha, ap, r);
        z = precond(r);
        double rz_new = weighted_dot(r, z);
        double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < p.values.size(); ++k)
            p.values[k] = z.values[k] + beta * p.values[k];
        if (p.center) *p.center = *z.center + beta * (*p.center);
        res = std::sqrt(weighted_dot(r, r));
        ++it;
    }
    if (stats) {
        stats->iterations = it;
        stats->residual = res / rhs_norm;
    }
    return x;
}

ScalarField step(const ScalarField& u, double t, const NonlinearitySpec& spec,
                 const DiscreteLaplacian& L, const SolverConfig& cfg) {
    const PolarGrid& g = L.grid();
    require(u.grid == g, "step: grid mismatch");

    // rhs = u + dt f(t, r, u); reaction held explicit at time t.
    ScalarField rhs = u;
    for (int i = 0; i < g.n_r; ++i) {
        double r = g.radius(i);
        for (int j = 0; j < g.n_theta; ++j)
            rhs.at(i, j) += cfg.dt * eval_f(spec, t, r, u.at(i, j));
    }
    if (u.center) *rhs.center += cfg.dt * eval_f(spec, t, 0.0, *u.center);

    ScalarField next(g);
    if (cfg.scheme == Scheme::IMEX) {
        next = solve_helmholtz(L, cfg.dt, rhs, u, cfg.linear_solve_tol, cfg.max_cg_iterations);
    } else {
        next = rhs;
        ScalarField lu = L.apply(u);
        axpy(cfg.dt, lu, next);
    }
    next.time_tag = t + cfg.dt;
    return next;
}

namespace {

void validate_step_restriction(const NonlinearitySpec& spec, const DiscreteLaplacian& L,
                               const SolverConfig& cfg) {
    require(cfg.dt > 0.0, "simulate: dt must be positive");
    const PolarGrid& g = L.grid();
    if (cfg.scheme == Scheme::FullyExplicit) {
        double rmin = g.radius(0);
        double cap = 0.25 * std::min(g.dr * g.dr, rmin * rmin * g.dtheta * g.dtheta);
        if (cfg.dt > cap) {
            std::ostringstream msg;
            msg << "simulate: explicit scheme violates the polar CFL bound (dt = " << cfg.dt
                << ", cap = " << cap << ")";
            fail(msg.str());
        }
    } else {
        double lip = lipschitz_bound(spec, g, cfg.m1);
        if (cfg.dt * lip >= 1.0) {
            std::ostringstream msg;
            msg << "simulate: IMEX requires dt * L_f < 1 (dt = " << cfg.dt << ", L_f = " << lip
                << ")";
            fail(msg.str());
        }
    }
}

} // namespace

Trajectory simulate(const NonlinearitySpec& spec, const ScalarField& u0,
                    const DiscreteLaplacian& L, const SolverConfig& cfg) {
    require(u0.all_finite(), "simulate: initial data must be finite");
    Norms n0 = norms(u0);
    require(n0.sup <= cfg.m1 * (1.0 + 1e-12), "simulate: sup |u0| exceeds the declared bound m1");
    validate_step_restriction(spec, L, cfg);

    std::vector<double> snap_times = cfg.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());

    Trajectory traj;
    ScalarField u = u0;
    u.time_tag = 0.0;
    traj.norm_history.push_back({0.0, n0.sup, n0.l2});
    traj.snapshots.push_back(u);

    const double guard = cfg.blowup_factor * cfg.m1;
    const long n_steps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    std::size_t next_snap = 0;
    while (next_snap < snap_times.size() && snap_times[next_snap] <= 0.0) ++next_snap;

    for (long k = 0; k < n_steps; ++k) {
        double t = k * cfg.dt;
        u = step(u, t, spec, L, cfg);
        double t_next = u.time_tag;
        if (cfg.post_step) cfg.post_step(u, t_next);
        Norms nn = norms(u);
        traj.norm_history.push_back({t_next, nn.sup, nn.l2});
        if (nn.sup > guard) {
            std::ostringstream msg;
            msg << "simulate: blow-up guard tripped at t = " << t_next << " (sup = " << nn.sup
                << " > " << cfg.blowup_factor << " * m1)";
            fail(msg.str());
        }

        bool want = false;
        if (cfg.snapshot_stride > 0 && ((k + 1) % cfg.snapshot_stride == 0)) want = true;
        // explicit snapshot times snap to the nearest completed step
        while (next_snap < snap_times.size() && snap_times[next_snap] <= t_next + 0.5 * cfg.dt) {
            want = true;
            ++next_snap;
        }
        if (k + 1 == n_steps) want = true;
        if (want && traj.snapshots.back().time_tag < t_next) traj.snapshots.push_back(u);
    }
    return traj;
}

void save_trajectory(const Trajectory& traj, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    {
        std::ofstream meta(dir + "/meta");
        require(meta.good(), "save_trajectory: cannot write meta");
        for (const auto& [k, v] : traj.meta) meta << k << " = " << v << "\n";
    }
    {
        std::ofstream ns(dir + "/norms.csv");
        require(ns.good(), "save_trajectory: cannot write norms.csv");
        ns << "t,sup,l2\n";
        for (const auto& s : traj.norm_history)
            ns << fmt_full(s.t) << ',' << fmt_full(s.sup) << ',' << fmt_full(s.l2) << "\n";
    }
    for (const ScalarField& snap : traj.snapshots) {
        std::ostringstream name;
        name << dir << "/snap_" << fmt_full(snap.time_tag) << ".csv";
        write_field_csv_file(snap, name.str());
    }
}

} // namespace fols
