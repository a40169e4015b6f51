#include "fols/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace fols {

ScalarField w_field(const ScalarField& u, Direction e) {
    const PolarGrid& g = u.grid;
    std::vector<int> perm = hyperplane_reflect_indices(g, e);
    std::vector<bool> mask = half_mask(g, e);
    ScalarField w(g);
    w.time_tag = u.time_tag;
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j)
            if (mask[static_cast<std::size_t>(j)])
                w.at(i, j) = u.at(i, j) - u.at(i, perm[static_cast<std::size_t>(j)]);
    if (w.center) w.center = 0.0; // the center sits on every hyperplane
    return w;
}

double neg_deficit(const ScalarField& u, Direction e) {
    const PolarGrid& g = u.grid;
    std::vector<int> perm = hyperplane_reflect_indices(g, e);
    std::vector<bool> mask = half_mask(g, e);
    double worst = 0.0;
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j)
            if (mask[static_cast<std::size_t>(j)]) {
                double w = u.at(i, j) - u.at(i, perm[static_cast<std::size_t>(j)]);
                if (-w > worst) worst = -w;
            }
    return worst;
}

ReflectionArc m_arc(const ScalarField& u, double tol) {
    require(tol >= 0.0, "m_arc: tol must be >= 0");
    const PolarGrid& g = u.grid;
    const int nd = 2 * g.n_theta;
    std::vector<double> def(static_cast<std::size_t>(nd));
    parallel_for(static_cast<std::size_t>(nd), [&](std::size_t k) {
        def[k] = neg_deficit(u, make_direction(g, static_cast<int>(k)));
    });

    ReflectionArc arc;
    int best = 0;
    for (int k = 1; k < nd; ++k)
        if (def[static_cast<std::size_t>(k)] < def[static_cast<std::size_t>(best)]) best = k;
    arc.best_half_index = best;
    for (int k = 0; k < nd; ++k)
        if (def[static_cast<std::size_t>(k)] <= tol) arc.m_set.push_back(k);
    if (arc.m_set.empty() || def[static_cast<std::size_t>(best)] > tol) {
        arc.empty = true;
        return arc;
    }

    auto in_set = [&](int k) { return def[static_cast<std::size_t>(((k % nd) + nd) % nd)] <= tol; };
    int plus = 0;
    while (plus < nd && in_set(best + plus + 1)) ++plus;
    int minus = 0;
    while (minus < nd && in_set(best - minus - 1)) ++minus;

    double half_step = kPi / g.n_theta;
    if (plus + minus + 1 >= nd) {
        arc.theta_lo = 0.0;
        arc.theta_hi = 2.0 * kPi;
    } else {
        arc.theta_lo = (best - minus) * half_step;
        arc.theta_hi = (best + plus) * half_step;
    }
    arc.width = arc.theta_hi - arc.theta_lo;
    return arc;
}

// Canonical slot order around the axis: by increasing |offset|, positive
// offsets before their negative mirrors.
std::vector<int> fs_slot_order(int n_slots, int axis_half_index) {
    const int n = n_slots;
    require(n >= 2 && n % 2 == 0, "fs_slot_order: slot count must be even and >= 2");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int j) {
        int m = (((2 * j - axis_half_index) % (2 * n)) + 2 * n) % (2 * n); // offset in pi/n units
        int s = (m <= n) ? m : m - 2 * n;                                  // signed, in (-n, n]
        return std::pair<int, int>(std::abs(s), s < 0 ? 1 : 0);
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    return order;
}

std::vector<double> fs_rearrange_circle(const std::vector<double>& circle, int axis_half_index) {
    std::vector<int> order = fs_slot_order(static_cast<int>(circle.size()), axis_half_index);
    std::vector<double> sorted = circle;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    std::vector<double> out(circle.size());
    for (std::size_t k = 0; k < circle.size(); ++k)
        out[static_cast<std::size_t>(order[k])] = sorted[k];
    return out;
}

ScalarField fs_symmetrize(const ScalarField& u, Direction p) {
    const PolarGrid& g = u.grid;
    std::vector<int> order = fs_slot_order(g.n_theta, p.half_index);
    ScalarField out(g);
    out.time_tag = u.time_tag;
    std::vector<double> circle(static_cast<std::size_t>(g.n_theta));
    for (int i = 0; i < g.n_r; ++i) {
        for (int j = 0; j < g.n_theta; ++j) circle[static_cast<std::size_t>(j)] = u.at(i, j);
        std::sort(circle.begin(), circle.end(), std::greater<double>());
        for (int k = 0; k < g.n_theta; ++k)
            out.at(i, order[static_cast<std::size_t>(k)]) = circle[static_cast<std::size_t>(k)];
    }
    if (u.center) out.center = u.center;
    return out;
}

double fs_deficit(const ScalarField& u, Direction p) {
    ScalarField s = fs_symmetrize(u, p);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.values.size(); ++k)
        worst = std::max(worst, std::abs(u.values[k] - s.values[k]));
    return worst;
}

Direction best_axis(const ScalarField& u) {
    const PolarGrid& g = u.grid;
    const int nd = 2 * g.n_theta;
    std::vector<double> def(static_cast<std::size_t>(nd));
    parallel_for(static_cast<std::size_t>(nd), [&](std::size_t k) {
        def[k] = fs_deficit(u, make_direction(g, static_cast<int>(k)));
    });
    int best = 0;
    for (int k = 1; k < nd; ++k)
        if (def[static_cast<std::size_t>(k)] < def[static_cast<std::size_t>(best)]) best = k;
    return make_direction(g, best);
}

double polar_monotonicity_deficit(const ScalarField& u, Direction p) {
    const PolarGrid& g = u.grid;
    const int n = g.n_theta;
    std::vector<int> order = fs_slot_order(n, p.half_index);
    // group boundaries: slots k and k+1 share an |offset| level iff their
    // offsets are mirror images; recompute the level keys once.
    std::vector<int> level(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        int j = order[static_cast<std::size_t>(k)];
        int m = (((2 * j - p.half_index) % (2 * n)) + 2 * n) % (2 * n);
        int s = (m <= n) ? m : m - 2 * n;
        level[static_cast<std::size_t>(k)] = std::abs(s);
    }
    double worst = 0.0;
    for (int i = 0; i < g.n_r; ++i) {
        double prev_min = std::numeric_limits<double>::infinity();
        int k = 0;
        while (k < n) {
            int lev = level[static_cast<std::size_t>(k)];
            double lev_max = -std::numeric_limits<double>::infinity();
            double lev_min = std::numeric_limits<double>::infinity();
            while (k < n && level[static_cast<std::size_t>(k)] == lev) {
                double v = u.at(i, order[static_cast<std::size_t>(k)]);
                lev_max = std::max(lev_max, v);
                lev_min = std::min(lev_min, v);
                ++k;
            }
            if (prev_min < lev_max) worst = std::max(worst, lev_max - prev_min);
            prev_min = std::min(prev_min, lev_min);
        }
    }
    return worst;
}

double radial_deficit(const ScalarField& u) {
    double worst = 0.0;
    for (int i = 0; i < u.grid.n_r; ++i) {
        double lo = u.at(i, 0), hi = u.at(i, 0);
        for (int j = 1; j < u.grid.n_theta; ++j) {
            lo = std::min(lo, u.at(i, j));
            hi = std::max(hi, u.at(i, j));
        }
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

SymmetryReport symmetry_report(const ScalarField& u, const ReportTols& tols) {
    SymmetryReport rep;
    double sup = norms(u).sup;
    rep.tol = tols.deficit_tol_abs >= 0.0
                  ? tols.deficit_tol_abs
                  : tols.deficit_tol_factor * std::numeric_limits<double>::epsilon() * sup;
    const PolarGrid& g = u.grid;
    const int nd = 2 * g.n_theta;
    rep.deficits.resize(static_cast<std::size_t>(nd));
    parallel_for(static_cast<std::size_t>(nd), [&](std::size_t k) {
        rep.deficits[k] = neg_deficit(u, make_direction(g, static_cast<int>(k)));
    });
    rep.arc = m_arc(u, rep.tol);
    rep.axis = best_axis(u);
    rep.fs_def = fs_deficit(u, rep.axis);
    rep.polar_def = polar_monotonicity_deficit(u, rep.axis);
    rep.radial_def = radial_deficit(u);
    return rep;
}

void write_symmetry_report(const SymmetryReport& rep, const PolarGrid& g, std::ostream& os) {
    os << "e_half_index,deficit\n";
    for (std::size_t k = 0; k < rep.deficits.size(); ++k)
        os << k << ',' << fmt_full(rep.deficits[k]) << "\n";
    os << "# best_axis = " << rep.axis.half_index << "\n";
    os << "# best_axis_angle = " << fmt_full(rep.axis.angle(g)) << "\n";
    os << "# fs_deficit = " << fmt_full(rep.fs_def) << "\n";
    os << "# arc_lo = " << fmt_full(rep.arc.theta_lo) << "\n";
    os << "# arc_hi = " << fmt_full(rep.arc.theta_hi) << "\n";
    os << "# polar_monotonicity_deficit = " << fmt_full(rep.polar_def) << "\n";
    os << "# radial_deficit = " << fmt_full(rep.radial_def) << "\n";
    os << "# tol = " << fmt_full(rep.tol) << "\n";
}

// ---------------------------------------------------------------------------
// Boundary quotient
// ---------------------------------------------------------------------------

namespace {

struct EdgeProfiles {
    double delta;
    double plateau; // (1 + delta) / 2

    double h(double t) const {
        if (t >= delta) return plateau;
        double d = t - delta;
        return -d * d / (2.0 * delta) + plateau;
    }
    double h_d(double t) const { return (t < delta) ? -(t - delta) / delta : 0.0; }
    double h_dd(double t) const { return (t < delta) ? -1.0 / delta : 0.0; }
};

} // namespace

double quotient_delta_cap(const PolarGrid& g, double gamma, double c_bound_interior) {
    double cap = 1.0 / (gamma + c_bound_interior);
    if (g.kind == GridKind::Annulus) {
        double R = g.r_inner;
        cap = std::min(cap, R / (8.0 * R + 2.0)); // N = 2
    }
    return cap;
}

QuotientResult boundary_quotient(const ScalarField& w, Direction e, double delta, double gamma,
                                 double rho1, const ScalarField& c_field, int submask_trials,
                                 unsigned long long seed) {
    const PolarGrid& g = w.grid;
    require(c_field.grid == g, "boundary_quotient: c field grid mismatch");
    require(gamma > 0.0, "boundary_quotient: gamma must be positive");
    require(rho1 > g.r_inner && rho1 < g.r_outer, "boundary_quotient: rho1 out of range");
    require(delta > 0.0 && delta < 1.0, "boundary_quotient: delta must lie in (0, 1)");

    const double R = (g.kind == GridKind::Annulus) ? g.r_inner : 0.0;
    std::vector<bool> mask = half_mask(g, e);
    double phi = e.angle(g);

    // interior coefficient bound beta_{B_rho1} over the masked region
    double beta_core = 0.0;
    for (int i = 0; i < g.n_r; ++i) {
        if (g.radius(i) >= rho1) break;
        for (int j = 0; j < g.n_theta; ++j)
            if (mask[static_cast<std::size_t>(j)])
                beta_core = std::max(beta_core, std::abs(c_field.at(i, j)));
    }
    double cap = quotient_delta_cap(g, gamma, beta_core);
    if (delta >= cap) {
        std::ostringstream msg;
        msg << "boundary_quotient: delta = " << delta << " violates the admissibility cap "
            << cap << " (gamma = " << gamma << ", interior |c| bound = " << beta_core << ")";
        fail(msg.str());
    }
    require(R + delta < rho1, "boundary_quotient: boundary strip must stay inside rho1");

    EdgeProfiles prof{delta, 0.5 * (1.0 + delta)};

    QuotientResult res;
    BoundaryQuotient& tr = res.transform;
    tr.delta = delta;
    tr.gamma = gamma;
    tr.rho1 = rho1;
    tr.e = e;
    tr.mask = mask;
    tr.core.assign(static_cast<std::size_t>(g.ring_nodes()), false);
    tr.g_profile = ScalarField(g);
    tr.h_profile = ScalarField(g);
    tr.drift1 = ScalarField(g);
    tr.drift2 = ScalarField(g);
    tr.zeroth = ScalarField(g);
    res.w_hat = ScalarField(g);
    res.w_hat.time_tag = w.time_tag;

    for (int i = 0; i < g.n_r; ++i) {
        double r = g.radius(i);
        for (int j = 0; j < g.n_theta; ++j) {
            if (!mask[static_cast<std::size_t>(j)]) continue;
            double offset = g.angle(j) - phi;
            double x1 = r * std::cos(offset); // coordinate along e, positive on the mask
            double x2 = r * std::sin(offset);
            double hv = prof.h(x1), hd = prof.h_d(x1), hdd = prof.h_dd(x1);
            double gv = 0.5, gd = 0.0, gdd = 0.0;
            if (g.kind == GridKind::Annulus) {
                gv = prof.h(r - R);
                gd = prof.h_d(r - R);
                gdd = prof.h_dd(r - R);
            }
            std::size_t idx = static_cast<std::size_t>(g.index(i, j));
            tr.g_profile.values[idx] = gv;
            tr.h_profile.values[idx] = hv;
            tr.drift1.values[idx] = 2.0 * hd / hv + 2.0 * (gd / gv) * (x1 / r);
            tr.drift2.values[idx] = 2.0 * (gd / gv) * (x2 / r);
            // N = 2: radial profile contributes (g'' + g'/r)/g
            tr.zeroth.values[idx] = hdd / hv + 2.0 * (hd / hv) * (gd / gv) * (x1 / r) +
                                    (gdd + gd / r) / gv + c_field.values[idx];
            res.w_hat.values[idx] = w.values[idx] / (gv * hv);
            double dist = (g.kind == GridKind::Annulus) ? std::min(x1, r - R) : x1;
            tr.core[idx] = (dist > delta) && (r < rho1);
        }
    }

    // ---- predicate 1: nodewise sign preservation
    bool sign_ok = true;
    for (int i = 0; i < g.n_r && sign_ok; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            if (!mask[static_cast<std::size_t>(j)]) continue;
            std::size_t idx = static_cast<std::size_t>(g.index(i, j));
            double a = w.values[idx], b = res.w_hat.values[idx];
            if ((a > 0) != (b > 0) || (a < 0) != (b < 0)) {
                sign_ok = false;
                break;
            }
        }

    // ---- predicate 2: factor-4 norm equivalence on random submasks
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    bool equiv_ok = true;
    for (int trial = 0; trial < submask_trials && equiv_ok; ++trial) {
        double sup_w = 0.0, sup_hat = 0.0;
        bool any = false;
        for (int i = 0; i < g.n_r; ++i)
            for (int j = 0; j < g.n_theta; ++j) {
                if (!mask[static_cast<std::size_t>(j)]) continue;
                if (!coin(rng)) continue;
                std::size_t idx = static_cast<std::size_t>(g.index(i, j));
                sup_w = std::max(sup_w, std::abs(w.values[idx]));
                sup_hat = std::max(sup_hat, std::abs(res.w_hat.values[idx]));
                any = true;
            }
        if (!any) continue;
        double slack = 1e-14 * (sup_hat + sup_w);
        if (!(0.25 * sup_hat <= sup_w + slack && sup_w <= sup_hat + slack)) equiv_ok = false;
    }

    // ---- predicate 3: strip-localized coefficient bounds
    double two_over_delta = 2.0 / delta;
    double worst_bound = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n_r; ++i) {
        double r = g.radius(i);
        for (int j = 0; j < g.n_theta; ++j) {
            if (!mask[static_cast<std::size_t>(j)]) continue;
            std::size_t idx = static_cast<std::size_t>(g.index(i, j));
            double x1 = r * std::cos(g.angle(j) - phi);
            bool strip1 = x1 <= delta;
            bool strip2 = (g.kind == GridKind::Annulus) && (r <= R + delta);
            double b1_bound = (strip1 ? 4.0 : 0.0) + (strip2 ? 4.0 : 0.0);
            double b2_bound = strip2 ? 4.0 : 0.0;
            double c_extra = (strip1 ? two_over_delta : 0.0) + ((strip1 && strip2) ? 8.0 : 0.0) +
                             (strip2 ? two_over_delta + 2.0 / R : 0.0);
            double c_bound = std::abs(c_field.values[idx]) + c_extra;
            worst_bound = std::min(worst_bound, b1_bound - std::abs(tr.drift1.values[idx]));
            worst_bound = std::min(worst_bound, b2_bound - std::abs(tr.drift2.values[idx]));
            worst_bound = std::min(worst_bound, c_bound - std::abs(tr.zeroth.values[idx]));
        }
    }
    bool bounds_ok = worst_bound >= -1e-9 * two_over_delta;

    // ---- predicate 4: c_hat < -gamma off the core
    double worst_tail = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n_r; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            if (!mask[static_cast<std::size_t>(j)]) continue;
            std::size_t idx = static_cast<std::size_t>(g.index(i, j));
            if (tr.core[idx]) continue;
            worst_tail = std::min(worst_tail, -gamma - tr.zeroth.values[idx]);
        }
    bool tail_ok = worst_tail > 0.0;

    res.checks.sign_ok = sign_ok;
    res.checks.equivalence_ok = equiv_ok;
    res.checks.bounds_ok = bounds_ok;
    res.checks.tail_ok = tail_ok;
    res.checks.worst_bound_slack = worst_bound;
    res.checks.worst_tail_slack = worst_tail;
    std::ostringstream d;
    d << "delta=" << delta << " cap=" << cap << " beta_core=" << beta_core
      << " bound_slack=" << worst_bound << " tail_slack=" << worst_tail;
    res.checks.detail = d.str();
    return res;
}

// ---------------------------------------------------------------------------
// Subsolution verification
// ---------------------------------------------------------------------------

namespace {

CubicTable radial_profile(const ScalarField& f) {
    const PolarGrid& g = f.grid;
    std::vector<double> x, y;
    x.reserve(static_cast<std::size_t>(g.n_r) + 2);
    y.reserve(x.capacity());
    if (f.center) {
        x.push_back(0.0);
        y.push_back(*f.center);
    }
    for (int i = 0; i < g.n_r; ++i) {
        double mean = 0.0;
        for (int j = 0; j < g.n_theta; ++j) mean += f.at(i, j);
        x.push_back(g.radius(i));
        y.push_back(mean / g.n_theta);
    }
    x.push_back(g.r_outer); // Dirichlet ghost
    y.push_back(0.0);
    // even about the center when the table starts at r = 0
    double left_slope = f.center ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    return CubicTable(std::move(x), std::move(y), left_slope);
}

} // namespace

SubsolutionReport subsolution_verify(const DiscreteLaplacian& L, const BallSpec& ball,
                                     double gamma, const ScalarField& eta, double lambda1,
                                     const ScalarField& c_field) {
    const PolarGrid& g = L.grid();
    require(c_field.grid == g, "subsolution_verify: c field grid mismatch");
    require(ball.radius > 0.0, "subsolution_verify: degenerate ball");
    require(lambda1 > 0.0, "subsolution_verify: lambda1 must be positive");

    const double rb = ball.radius;
    const double scale = eta.grid.r_outer; // eta lives on a ball of this radius
    CubicTable profile = radial_profile(eta);

    SubsolutionReport rep;
    rep.worst_value = -std::numeric_limits<double>::infinity();

    ScalarField phi(g);
    for (int i = 0; i < g.n_r; ++i) {
        double r = g.radius(i);
        for (int j = 0; j < g.n_theta; ++j) {
            double x1 = r * std::cos(g.angle(j));
            double x2 = r * std::sin(g.angle(j));
            double dist = std::hypot(x1 - ball.center_x1, x2);
            if (dist < rb) {
                phi.at(i, j) = profile(dist / rb * scale);
                rep.worst_value =
                    std::max(rep.worst_value, -gamma + lambda1 / (rb * rb) + c_field.at(i, j));
                ++rep.nodes_checked;
            }
        }
    }
    if (g.has_center()) {
        double dist = std::abs(ball.center_x1);
        if (dist < rb) phi.center = profile(dist / rb * scale);
    }
    require(rep.nodes_checked > 0, "subsolution_verify: no grid nodes inside the ball");
    rep.margin = -rep.worst_value;
    rep.holds = rep.worst_value < 0.0;

    // Operator-application oracle on the well-resolved core of the ball.
    ScalarField lap = L.apply(phi);
    double phimax = norms(phi).sup;
    rep.worst_value_operator = -std::numeric_limits<double>::infinity();
    for (int i = 1; i + 1 < g.n_r; ++i) {
        double r = g.radius(i);
        double hloc = std::max(g.dr, r * g.dtheta);
        for (int j = 0; j < g.n_theta; ++j) {
            double x1 = r * std::cos(g.angle(j));
            double x2 = r * std::sin(g.angle(j));
            double dist = std::hypot(x1 - ball.center_x1, x2);
            if (dist > rb - 2.0 * hloc) continue;
            double p = phi.at(i, j);
            if (p < 0.25 * phimax) continue;
            rep.worst_value_operator = std::max(
                rep.worst_value_operator, -gamma - lap.at(i, j) / p + c_field.at(i, j));
            ++rep.oracle_nodes;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Circle rigidity
// ---------------------------------------------------------------------------

CircleVerdict circle_rigidity_check(const std::vector<double>& v, CircleMode mode, int eps_slots,
                                    int orientation_hint) {
    const int m = static_cast<int>(v.size());
    require(m >= 4 && m % 2 == 0, "circle_rigidity_check: need an even sample count >= 4");
    require(eps_slots >= 1 && eps_slots < m / 2, "circle_rigidity_check: bad eps band");

    CircleVerdict out;
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    const double slack = 1e-12 * (scale + 1e-300);
    auto at = [&](int j) { return v[static_cast<std::size_t>(((j % m) + m) % m)]; };

    out.even = true;
    for (int j = 1; j < m; ++j)
        if (std::abs(at(j) - at(m - j)) > slack) {
            out.even = false;
            break;
        }

    // local reflection differences D(l, j) = v(eta + theta) - v(eta - theta)
    bool any_pos = false, any_neg = false, all_strict = true;
    for (int l = 1; l <= eps_slots; ++l)
        for (int j = 1; j < m / 2; ++j) {
            double d = at(l + j) - at(l - j);
            if (d > slack) any_pos = true;
            if (d < -slack) any_neg = true;
            if (std::abs(d) <= slack) all_strict = false;
        }
    int orient = 0;
    if (any_pos && !any_neg) orient = +1;
    if (any_neg && !any_pos) orient = -1;
    if (orientation_hint != 0) {
        bool compatible = (orientation_hint > 0) ? !any_neg : !any_pos;
        orient = compatible ? orientation_hint : 0;
        if (!compatible) {
            std::ostringstream msg;
            msg << "orientation hint " << orientation_hint << " contradicted by local differences";
            out.violations.push_back(msg.str());
        }
    }
    out.orientation = orient;
    out.strict = all_strict && orient != 0;
    bool constant_like = !any_pos && !any_neg;
    out.premises_ok = out.even && (orient != 0 || constant_like);
    if (!out.even) out.violations.push_back("evenness fails");
    if (!out.premises_ok && out.even)
        out.violations.push_back("local reflection inequalities have mixed signs");

    // reflection symmetry points on the half grid
    for (int q = 0; q < 2 * m; ++q) {
        bool sym = true;
        for (int j = 0; j < m; ++j)
            if (std::abs(at(q - j) - at(j)) > slack) {
                sym = false;
                break;
            }
        if (sym) out.reflection_points.push_back(q);
    }
    if (mode == CircleMode::Premises) return out;

    // conclusion: monotone on (0, pi) with the orientation's sign, plus the
    // global pairwise inequality for every grid pivot in (0, pi).
    double sgn = (orient >= 0) ? 1.0 : -1.0; // constant-like defaults to nondecreasing
    out.monotone_ok = true;
    for (int j = 1; j < m / 2; ++j) {
        if (sgn * (at(j + 1) - at(j)) < -slack) {
            out.monotone_ok = false;
            std::ostringstream msg;
            msg << "monotonicity fails between slots " << j << " and " << j + 1;
            out.violations.push_back(msg.str());
        }
    }
    out.global_ok = true;
    for (int l = 1; l < m / 2 && out.global_ok; ++l)
        for (int j = 1; j < m / 2; ++j) {
            double d = sgn * (at(l + j) - at(l - j));
            if (d < -slack) {
                out.global_ok = false;
                std::ostringstream msg;
                msg << "global inequality fails at pivot " << l << ", offset " << j;
                out.violations.push_back(msg.str());
                break;
            }
        }

    // strict two-sided sign pattern (positive pivots strictly one sign,
    // negative pivots strictly the other)
    out.sign_pattern_ok = true;
    for (int l = 1; l < m / 2 && out.sign_pattern_ok; ++l)
        for (int j = 1; j < m / 2; ++j) {
            double dp = sgn * (at(l + j) - at(l - j));
            double dn = sgn * (at(-l + j) - at(-l - j));
            if (dp <= slack || dn >= -slack) {
                out.sign_pattern_ok = false;
                break;
            }
        }
    return out;
}

} // namespace fols
