#include "fols/omega.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fols {

namespace {

double sup_distance(const ScalarField& a, const ScalarField& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        d = std::max(d, std::abs(a.values[k] - b.values[k]));
    if (a.center) d = std::max(d, std::abs(*a.center - *b.center));
    return d;
}

} // namespace

OmegaSample collect_omega(const Trajectory& traj, double t_min, int stride,
                          const OmegaTols& tols) {
    require(stride >= 1, "collect_omega: stride must be >= 1");
    OmegaSample s;
    s.cluster_tol = tols.cluster_tol;
    s.zero_tol = tols.zero_tol;
    int picked = 0;
    for (const ScalarField& f : traj.snapshots) {
        if (f.time_tag < t_min) continue;
        if (picked % stride == 0) s.snapshots.push_back(f);
        ++picked;
    }
    require(s.snapshots.size() >= 2, "collect_omega: fewer than 2 snapshots in the window");
    s.t_min = s.snapshots.front().time_tag;
    s.t_max = s.snapshots.back().time_tag;

    const std::size_t n = s.snapshots.size();
    s.pairwise_sup.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = sup_distance(s.snapshots[i], s.snapshots[j]);
            s.pairwise_sup[i][j] = s.pairwise_sup[j][i] = d;
        }

    for (const ScalarField& f : s.snapshots)
        if (norms(f).sup <= tols.zero_tol) s.contains_zero = true;

    // greedy clustering: first snapshot within cluster_tol of an existing
    // representative joins it, otherwise founds a new cluster
    s.cluster.assign(n, -1);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < reps.size(); ++k)
            if (s.pairwise_sup[i][reps[k]] <= tols.cluster_tol) {
                s.cluster[i] = static_cast<int>(k);
                break;
            }
        if (s.cluster[i] < 0) {
            s.cluster[i] = static_cast<int>(reps.size());
            reps.push_back(i);
        }
    }
    return s;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::FS: return "fs";
        case Verdict::Radial: return "radial";
        case Verdict::Zero: return "zero";
        case Verdict::Mixed: return "mixed";
        default: return "undecided";
    }
}

Verdict verdict_from_name(const std::string& name) {
    if (name == "fs") return Verdict::FS;
    if (name == "radial") return Verdict::Radial;
    if (name == "zero") return Verdict::Zero;
    if (name == "mixed") return Verdict::Mixed;
    if (name == "undecided") return Verdict::Undecided;
    fail("unknown verdict name: " + name);
}

VerdictReport asymptotic_fs_verdict(const OmegaSample& sample, const VerdictTols& tols) {
    require(!sample.snapshots.empty(), "asymptotic_fs_verdict: empty sample");
    VerdictReport rep;
    const PolarGrid& g = sample.snapshots.front().grid;
    const std::size_t n = sample.snapshots.size();

    // common axis: argmin over directions of the max fs deficit across the
    // sample (exhaustive over the half grid, ties to the smallest index)
    const int nd = 2 * g.n_theta;
    std::vector<double> worst_per_dir(static_cast<std::size_t>(nd), 0.0);
    parallel_for(static_cast<std::size_t>(nd), [&](std::size_t k) {
        double w = 0.0;
        for (const ScalarField& f : sample.snapshots)
            w = std::max(w, fs_deficit(f, make_direction(g, static_cast<int>(k))));
        worst_per_dir[k] = w;
    });
    int best = 0;
    for (int k = 1; k < nd; ++k)
        if (worst_per_dir[static_cast<std::size_t>(k)] < worst_per_dir[static_cast<std::size_t>(best)])
            best = k;
    rep.axis = make_direction(g, best);
    rep.worst_fs = worst_per_dir[static_cast<std::size_t>(best)];

    rep.fs_deficits.resize(n);
    rep.radial_deficits.resize(n);
    rep.best_radial = std::numeric_limits<double>::infinity();
    bool any_radial = false, any_fs_nonradial = false;
    for (std::size_t i = 0; i < n; ++i) {
        rep.fs_deficits[i] = fs_deficit(sample.snapshots[i], rep.axis);
        rep.radial_deficits[i] = radial_deficit(sample.snapshots[i]);
        rep.best_radial = std::min(rep.best_radial, rep.radial_deficits[i]);
        bool radial = rep.radial_deficits[i] <= tols.radial_tol;
        bool fs = rep.fs_deficits[i] <= tols.fs_tol;
        if (radial) any_radial = true;
        if (fs && !radial) any_fs_nonradial = true;
    }
    bool all_fs = rep.worst_fs <= tols.fs_tol;

    if (sample.contains_zero)
        rep.verdict = Verdict::Zero;
    else if (any_radial && any_fs_nonradial)
        rep.verdict = Verdict::Mixed;
    else if (all_fs)
        rep.verdict = Verdict::FS;
    else if (any_radial)
        rep.verdict = Verdict::Radial;
    else
        rep.verdict = Verdict::Undecided;

    std::ostringstream d;
    d << "window [" << sample.t_min << ", " << sample.t_max << "], " << n
      << " snapshots; axis half_index " << rep.axis.half_index << "; worst fs deficit "
      << rep.worst_fs << "; best radial deficit " << rep.best_radial;
    rep.detail = d.str();
    return rep;
}

EnvelopeReport envelope_check(const Trajectory& traj, double gamma_exp, double r1, double M) {
    require(gamma_exp > 0.0 && r1 > 0.0 && M > 0.0, "envelope_check: bad parameters");
    EnvelopeReport rep;
    double r1g = std::pow(r1, gamma_exp);
    for (const ScalarField& f : traj.snapshots) {
        const PolarGrid& g = f.grid;
        double teff = std::min(f.time_tag, 1.0);
        for (int i = 0; i < g.n_r; ++i) {
            double bound = M * std::exp(r1g - std::pow(g.radius(i), gamma_exp) * teff);
            for (int j = 0; j < g.n_theta; ++j) {
                double ratio = std::abs(f.at(i, j)) / bound;
                if (ratio > rep.worst_ratio) {
                    rep.worst_ratio = ratio;
                    rep.worst_r = g.radius(i);
                    rep.worst_t = f.time_tag;
                }
                if (ratio > 1.0) ++rep.violations;
            }
        }
        if (f.center) {
            double bound = M * std::exp(r1g); // |x| = 0
            double ratio = std::abs(*f.center) / bound;
            if (ratio > rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.worst_r = 0.0;
                rep.worst_t = f.time_tag;
            }
            if (ratio > 1.0) ++rep.violations;
        }
    }
    rep.holds = rep.violations == 0;
    return rep;
}

double envelope_r1(const NonlinearitySpec& spec, double gamma_exp, double sup_u) {
    const auto* h = std::get_if<HenonSpec>(&spec.v);
    require(h != nullptr, "envelope_r1: requires a Henon-type spec");
    double eta = h->b.inf();
    require(eta > 0.0, "envelope_r1: needs inf b > 0");
    require(gamma_exp > 0.0 && gamma_exp < std::min(h->beta, 1.0),
            "envelope_r1: need 0 < gamma < min(beta, 1)");
    double c1 = std::pow(2.0 / eta * (gamma_exp * gamma_exp + 1.0), 1.0 / (h->beta - gamma_exp));
    double c2 = std::pow(2.0 / eta * h->a.sup_abs() * std::pow(sup_u, h->p - 1.0),
                         1.0 / (h->beta - h->alpha));
    return std::max({c1, c2, 1.0}) * (1.0 + 1e-9);
}

DecayFitReport reflection_decay_fit(const Trajectory& traj, Direction e, double tau) {
    std::vector<double> ts, ds;
    for (const ScalarField& f : traj.snapshots) {
        if (f.time_tag < tau) continue;
        ts.push_back(f.time_tag);
        ds.push_back(neg_deficit(f, e));
    }
    require(ts.size() >= 2, "reflection_decay_fit: need at least two snapshots beyond tau");

    DecayFitReport rep;
    double dmax = 0.0;
    for (double d : ds) dmax = std::max(dmax, d);
    if (dmax == 0.0) {
        rep.infinite = true;
        rep.rate = std::numeric_limits<double>::infinity();
        rep.decaying = true;
        return rep;
    }
    ExpFit fit = fit_exponential_decay(ts, ds, dmax * 1e-300);
    if (!fit.valid || fit.samples < 2) {
        rep.infinite = true;
        rep.rate = std::numeric_limits<double>::infinity();
        rep.decaying = true;
        return rep;
    }
    rep.rate = fit.rate;
    rep.residual = fit.residual;
    rep.samples = fit.samples;
    rep.decaying = fit.rate > 0.0;
    return rep;
}

} // namespace fols
