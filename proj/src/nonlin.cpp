#include "fols/nonlin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fols {

TimeCoeff TimeCoeff::sinusoid(double mean, double amplitude, double period) {
    require(period > 0.0, "TimeCoeff::sinusoid: period must be positive");
    TimeCoeff c;
    c.kind = Kind::Sinusoid;
    c.mean = mean;
    c.amplitude = amplitude;
    c.period = period;
    return c;
}

double TimeCoeff::operator()(double t) const {
    if (kind == Kind::Constant) return value;
    return mean + amplitude * std::sin(2.0 * kPi * t / period);
}

double TimeCoeff::sup() const {
    return kind == Kind::Constant ? value : mean + std::abs(amplitude);
}

double TimeCoeff::inf() const {
    return kind == Kind::Constant ? value : mean - std::abs(amplitude);
}

double TimeCoeff::sup_abs() const { return std::max(std::abs(sup()), std::abs(inf())); }

namespace {

// |u|^(p-1) u and its u-derivative p |u|^(p-1).
double odd_power(double u, double p) { return std::pow(std::abs(u), p - 1.0) * u; }
double odd_power_du(double u, double p) { return p * std::pow(std::abs(u), p - 1.0); }

// Quintic smoothstep: 0 for x <= 0, 1 for x >= 1, C^2 across the joints.
double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double smoothstep_d(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return x * x * (30.0 + x * (-60.0 + 30.0 * x));
}

} // namespace

double Example1Spec::cutoff_u(double u) const {
    return 1.0 - smoothstep((std::abs(u) - 0.5 * m_star) / (0.5 * m_star));
}

double Example1Spec::cutoff_u_du(double u) const {
    double s = (u >= 0.0) ? 1.0 : -1.0;
    return -smoothstep_d((std::abs(u) - 0.5 * m_star) / (0.5 * m_star)) * s / (0.5 * m_star);
}

double Example1Spec::coeff_a(double r) const {
    if (r <= band_hi) return 1.0;
    if (r >= r_star) return 0.0;
    return 1.0 - smoothstep((r - band_hi) / (r_star - band_hi));
}

double Example1Spec::coeff_b(double r) const {
    if (r <= band_hi) return lambda;
    if (r >= r_star) return b_out;
    return lambda + (b_out - lambda) * smoothstep((r - band_hi) / (r_star - band_hi));
}

double Example2Spec::phi2_at(double r) const {
    if (r < 0.5 * dr) return phi2_center;
    int i = static_cast<int>(std::lround((r - r_inner) / dr)) - 1;
    i = std::clamp(i, 0, static_cast<int>(phi2_ring.size()) - 1);
    return phi2_ring[static_cast<std::size_t>(i)];
}

const char* NonlinearitySpec::name() const {
    switch (v.index()) {
        case 0: return "henon";
        case 1: return "translation";
        case 2: return "potential";
        case 3: return "example1";
        default: return "example2";
    }
}

bool NonlinearitySpec::autonomous() const {
    if (const auto* h = std::get_if<HenonSpec>(&v))
        return h->a.kind == TimeCoeff::Kind::Constant && h->b.kind == TimeCoeff::Kind::Constant;
    if (const auto* tr = std::get_if<TranslationSpec>(&v))
        return tr->a.kind == TimeCoeff::Kind::Constant && tr->b.kind == TimeCoeff::Kind::Constant;
    if (std::holds_alternative<Example2Spec>(v)) return false;
    return true;
}

NonlinearitySpec make_henon(TimeCoeff a, TimeCoeff b, double alpha, double beta, double p) {
    require(alpha >= 0.0 && alpha < beta, "make_henon: need 0 <= alpha < beta");
    require(p > 1.0, "make_henon: need p > 1");
    require(b.inf() > 0.0, "make_henon: need inf b > 0");
    return NonlinearitySpec{HenonSpec{a, b, alpha, beta, p}};
}

NonlinearitySpec make_translation(TimeCoeff a, TimeCoeff b, double p) {
    require(p > 1.0, "make_translation: need p > 1");
    return NonlinearitySpec{TranslationSpec{a, b, p}};
}

NonlinearitySpec make_potential(double v0, double v2, double core_amp) {
    return NonlinearitySpec{PotentialSpec{v0, v2, core_amp}};
}

double eval_f(const NonlinearitySpec& s, double t, double r, double u) {
    if (const auto* h = std::get_if<HenonSpec>(&s.v))
        return h->a(t) * std::pow(r, h->alpha) * odd_power(u, h->p) -
               h->b(t) * std::pow(r, h->beta) * u;
    if (const auto* tr = std::get_if<TranslationSpec>(&s.v))
        return tr->a(t) * odd_power(u, tr->p) - tr->b(t) * u;
    if (const auto* pt = std::get_if<PotentialSpec>(&s.v))
        return pt->core_amp * std::tanh(u) - (pt->v0 + pt->v2 * r * r) * u;
    if (const auto* e1 = std::get_if<Example1Spec>(&s.v))
        return e1->coeff_a(r) * std::pow(u, e1->p_odd) * e1->cutoff_u(u) - e1->coeff_b(r) * u;
    const auto& e2 = std::get<Example2Spec>(s.v);
    return e2.mu * e2.zeta(t) * u + e2.psi(t) * e2.phi2_at(r);
}

double eval_fu(const NonlinearitySpec& s, double t, double r, double u) {
    if (const auto* h = std::get_if<HenonSpec>(&s.v))
        return h->a(t) * std::pow(r, h->alpha) * odd_power_du(u, h->p) -
               h->b(t) * std::pow(r, h->beta);
    if (const auto* tr = std::get_if<TranslationSpec>(&s.v))
        return tr->a(t) * odd_power_du(u, tr->p) - tr->b(t);
    if (const auto* pt = std::get_if<PotentialSpec>(&s.v)) {
        double c = std::cosh(u);
        return pt->core_amp / (c * c) - (pt->v0 + pt->v2 * r * r);
    }
    if (const auto* e1 = std::get_if<Example1Spec>(&s.v)) {
        double up = std::pow(u, e1->p_odd);
        double dup = e1->p_odd * std::pow(u, e1->p_odd - 1);
        return e1->coeff_a(r) * (dup * e1->cutoff_u(u) + up * e1->cutoff_u_du(u)) - e1->coeff_b(r);
    }
    const auto& e2 = std::get<Example2Spec>(s.v);
    return e2.mu * e2.zeta(t);
}

double lipschitz_bound(const NonlinearitySpec& s, const PolarGrid& g, double M) {
    require(M > 0.0, "lipschitz_bound: M must be positive");
    if (const auto* e2 = std::get_if<Example2Spec>(&s.v)) return std::abs(e2->mu);
    double L = 0.0;
    const int nr = 200, nu = 201;
    for (int i = 0; i <= nr; ++i) {
        double r = g.r_inner + (g.r_outer - g.r_inner) * i / nr;
        for (int k = 0; k < nu; ++k) {
            double u = -M + 2.0 * M * k / (nu - 1);
            // time envelope: evaluate derivative pieces at coefficient extremes
            for (double t : {0.0, 0.25, 0.5, 0.75}) {
                // for sinusoids these four phases hit the coefficient extremes
                double tt = t;
                if (const auto* h = std::get_if<HenonSpec>(&s.v)) tt = t * h->a.period;
                if (const auto* tr = std::get_if<TranslationSpec>(&s.v)) tt = t * tr->a.period;
                L = std::max(L, std::abs(eval_fu(s, tt, r, u)));
            }
        }
    }
    return L;
}

namespace {

// Time-sup of f_u for coefficient-linear variants, evaluated by maximizing
// over the coefficient box corners (f_u is affine in (a, b)).
double fu_sup_t(const NonlinearitySpec& s, double r, double u) {
    if (const auto* h = std::get_if<HenonSpec>(&s.v)) {
        double g1 = std::pow(r, h->alpha) * odd_power_du(u, h->p);
        double g2 = -std::pow(r, h->beta);
        double best = -1e300;
        for (double a : {h->a.inf(), h->a.sup()})
            for (double b : {h->b.inf(), h->b.sup()}) best = std::max(best, a * g1 + b * g2);
        return best;
    }
    if (const auto* tr = std::get_if<TranslationSpec>(&s.v)) {
        double g1 = odd_power_du(u, tr->p);
        double best = -1e300;
        for (double a : {tr->a.inf(), tr->a.sup()})
            for (double b : {tr->b.inf(), tr->b.sup()}) best = std::max(best, a * g1 - b);
        return best;
    }
    return eval_fu(s, 0.0, r, u); // autonomous variants
}

double fu_sup_abs_t(const NonlinearitySpec& s, double r, double u) {
    if (const auto* h = std::get_if<HenonSpec>(&s.v)) {
        double g1 = std::pow(r, h->alpha) * odd_power_du(u, h->p);
        double g2 = -std::pow(r, h->beta);
        double best = 0.0;
        for (double a : {h->a.inf(), h->a.sup()})
            for (double b : {h->b.inf(), h->b.sup()}) best = std::max(best, std::abs(a * g1 + b * g2));
        return best;
    }
    if (const auto* tr = std::get_if<TranslationSpec>(&s.v)) {
        double g1 = odd_power_du(u, tr->p);
        double best = 0.0;
        for (double a : {tr->a.inf(), tr->a.sup()})
            for (double b : {tr->b.inf(), tr->b.sup()}) best = std::max(best, std::abs(a * g1 - b));
        return best;
    }
    return std::abs(eval_fu(s, 0.0, r, u));
}

} // namespace

StabilityCheck check_f2_strong(const NonlinearitySpec& s, double M, double rho, double eps,
                               double j_lo, double j_hi, double lambda1, int n_r_samples,
                               int n_u_samples) {
    require(j_lo < j_hi, "check_f2_strong: empty interval J");
    require(rho > j_hi, "check_f2_strong: J must lie inside (R, rho)");
    require(eps > 0.0 && M > 0.0 && lambda1 > 0.0, "check_f2_strong: bad parameters");

    StabilityCheck out;
    std::ostringstream lattice;

    // RHS: -max_{r in J, |u| <= M} |f_u| - 4 lambda1 / |J|^2 on a uniform lattice.
    double cmax = 0.0;
    for (int i = 0; i < n_r_samples; ++i) {
        double r = j_lo + (j_hi - j_lo) * i / (n_r_samples - 1);
        for (int k = 0; k < n_u_samples; ++k) {
            double u = -M + 2.0 * M * k / (n_u_samples - 1);
            cmax = std::max(cmax, fu_sup_abs_t(s, r, u));
        }
    }
    double jlen = j_hi - j_lo;
    out.rhs = -cmax - 4.0 * lambda1 / (jlen * jlen);

    // LHS: sup over r > rho, |u| <= eps. Geometric r-lattice up to a cutoff;
    // beyond the cutoff the Henon/Translation envelope
    //   p eps^(p-1) sup|a| r^alpha - inf b r^beta
    // is monotone decreasing, which certifies the unbounded tail.
    double r_cut = 2.0 * rho;
    bool certified = false;
    if (const auto* h = std::get_if<HenonSpec>(&s.v)) {
        double num = h->alpha * h->p * std::pow(eps, h->p - 1.0) * std::max(h->a.sup_abs(), 1e-300);
        double den = h->beta * h->b.inf();
        double r_mono = std::pow(std::max(num / den, 0.0), 1.0 / (h->beta - h->alpha));
        r_cut = std::max(2.0 * rho, 2.0 * r_mono);
        certified = h->b.inf() > 0.0;
    } else if (std::holds_alternative<TranslationSpec>(s.v)) {
        certified = true; // no r dependence at all
        r_cut = rho * 1.01;
    } else if (const auto* pt = std::get_if<PotentialSpec>(&s.v)) {
        certified = pt->v2 > 0.0; // f_u <= core_amp - v0 - v2 r^2 decreasing
        r_cut = 2.0 * rho;
    }

    double lhs = -1e300;
    double rr = rho * (1.0 + 1e-12);
    int steps = 0;
    while (rr <= r_cut && steps < 100000) {
        for (int k = 0; k < n_u_samples; ++k) {
            double u = -eps + 2.0 * eps * k / (n_u_samples - 1);
            lhs = std::max(lhs, fu_sup_t(s, rr, u));
        }
        rr *= 1.0 + 4.0 / n_r_samples;
        ++steps;
    }
    // tail value at the cutoff via the certified envelope
    if (const auto* h = std::get_if<HenonSpec>(&s.v)) {
        double env = h->p * std::pow(eps, h->p - 1.0) * h->a.sup_abs() * std::pow(r_cut, h->alpha) -
                     h->b.inf() * std::pow(r_cut, h->beta);
        lhs = std::max(lhs, env);
    }
    out.lhs = lhs;
    out.tail_certified = certified;
    out.margin = out.rhs - out.lhs;
    out.holds = out.margin > 0.0;
    lattice << "geometric r in (" << rho << ", " << r_cut << "], " << steps
            << " shells x " << n_u_samples << " u-samples; J lattice " << n_r_samples << "x"
            << n_u_samples;
    out.lattice = lattice.str();
    return out;
}

StabilityCheck check_potential_condition(const PotentialSpec& V, double rho, double j_lo,
                                         double j_hi, double lambda1, double c0, int n_samples) {
    require(j_lo < j_hi && rho > 0.0, "check_potential_condition: bad interval");
    StabilityCheck out;
    auto v = [&](double r) { return V.v0 + V.v2 * r * r; };

    double vmax = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        double r = j_lo + (j_hi - j_lo) * i / (n_samples - 1);
        vmax = std::max(vmax, std::abs(v(r)));
    }
    double jlen = j_hi - j_lo;
    out.rhs = vmax + 4.0 * lambda1 / (jlen * jlen) + 2.0 * c0;

    // min over (rho, inf): quadratic with v2 >= 0 is nondecreasing, so the
    // minimum sits at rho; v2 < 0 has no lower bound (fails outright).
    if (V.v2 < 0.0) {
        out.lhs = -1e300;
        out.tail_certified = true;
    } else {
        double vmin = v(rho);
        for (int i = 0; i < n_samples; ++i) {
            double r = rho * (1.0 + 2.0 * i / (n_samples - 1.0));
            vmin = std::min(vmin, v(r));
        }
        out.lhs = vmin;
        out.tail_certified = true;
    }
    // Note the inequality orientation: holds iff min V > max|V| + ... .
    out.margin = out.lhs - out.rhs;
    out.holds = out.margin > 0.0;
    out.lattice = "uniform J lattice + geometric tail from rho";
    return out;
}

double gamma_strong(const NonlinearitySpec& s, double M1, double j_lo, double j_hi,
                    double lambda1, int n_samples) {
    double cmax = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        double r = j_lo + (j_hi - j_lo) * i / (n_samples - 1);
        for (int k = 0; k < n_samples; ++k) {
            double u = -M1 + 2.0 * M1 * k / (n_samples - 1);
            cmax = std::max(cmax, fu_sup_abs_t(s, r, u));
        }
    }
    double jlen = j_hi - j_lo;
    return cmax + 4.0 * lambda1 / (jlen * jlen);
}

NonlinearitySpec build_example1(const Example1Params& p) {
    require(p.p_odd >= 3 && p.p_odd % 2 == 1, "build_example1: p must be odd and >= 3");
    require(p.lambda > 0.0, "build_example1: lambda must be positive");
    require(p.lambda_out > 0.0, "build_example1: Lambda_out must be positive");
    require(p.m_star > 0.0, "build_example1: M* must be positive");
    require(0.0 <= p.band_lo && p.band_lo < p.band_hi && p.band_hi < p.r_star,
            "build_example1: band must sit strictly inside (0, R*)");

    Example1Spec s;
    s.p_odd = p.p_odd;
    s.lambda = p.lambda;
    s.lambda_out = p.lambda_out;
    s.m_star = p.m_star;
    s.r_star = p.r_star;
    s.band_lo = p.band_lo;
    s.band_hi = p.band_hi;
    s.b_out = p.lambda + 1.5 * p.lambda_out;
    return NonlinearitySpec{s};
}

Example1Report check_example1(const NonlinearitySpec& spec, int n_r, int n_u) {
    const auto* s = std::get_if<Example1Spec>(&spec.v);
    require(s != nullptr, "check_example1: not an example1 spec");

    Example1Report rep;
    double r_max = 2.0 * s->r_star;
    double u_max = 1.5 * s->m_star;

    double odd = 0.0, sign = -1e300, slope = -1e300, band = 0.0;
    for (int i = 0; i <= n_r; ++i) {
        double r = r_max * i / n_r;
        for (int k = 0; k <= n_u; ++k) {
            double u = -u_max + 2.0 * u_max * k / n_u;
            double f = eval_f(spec, 0.0, r, u);
            odd = std::max(odd, std::abs(eval_f(spec, 0.0, r, -u) + f));
            if (std::abs(u) >= s->m_star && u != 0.0) sign = std::max(sign, u * f);
            if (r > s->r_star && std::abs(u) <= s->m_star)
                slope = std::max(slope, eval_fu(spec, 0.0, r, u) + s->lambda_out);
            if (r >= s->band_lo && r <= s->band_hi && std::abs(u) < 0.5 * s->m_star)
                band = std::max(band, std::abs(f - (std::pow(u, s->p_odd) - s->lambda * u)));
        }
    }
    // a == 0 identically beyond R*, so the slope there is exactly -b_out; the
    // lattice check is backed by that closed form.
    slope = std::max(slope, -s->b_out + s->lambda_out);

    rep.odd_defect = odd;
    rep.sign_margin = sign;
    rep.far_slope_margin = slope;
    rep.band_defect = band;
    rep.ok = odd <= 1e-12 && sign < 0.0 && slope < 0.0 && band <= 1e-12;
    std::ostringstream d;
    d << "lattice " << n_r << "x" << n_u << " on [0," << r_max << "]x[-" << u_max << "," << u_max
      << "]; odd_defect=" << rep.odd_defect << " sign_margin=" << rep.sign_margin
      << " far_slope_margin=" << rep.far_slope_margin << " band_defect=" << rep.band_defect;
    rep.detail = d.str();
    return rep;
}

} // namespace fols
