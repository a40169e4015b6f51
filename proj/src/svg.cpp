#include "fols/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace fols {

namespace {

// diverging blue -> white -> red over t in [-1, 1]
void color_of(double t, int rgb[3]) {
    t = std::clamp(t, -1.0, 1.0);
    double r, g, b;
    if (t < 0) {
        r = 1.0 + t;
        g = 1.0 + t;
        b = 1.0;
    } else {
        r = 1.0;
        g = 1.0 - t;
        b = 1.0 - t;
    }
    rgb[0] = static_cast<int>(std::lround(255 * r));
    rgb[1] = static_cast<int>(std::lround(255 * g));
    rgb[2] = static_cast<int>(std::lround(255 * b));
}

std::string rgb_str(double t) {
    int c[3];
    color_of(t, c);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", c[0], c[1], c[2]);
    return buf;
}

} // namespace

void emit_heatmap(const ScalarField& f, double axis_angle, std::ostream& os) {
    const PolarGrid& g = f.grid;
    const double scale = 360.0 / (2.0 * g.r_outer); // pixels per unit length
    const double cx = 200.0, cy = 200.0;            // plot center
    auto px = [&](double x) { return cx + scale * x; };
    auto py = [&](double y) { return cy - scale * y; };

    double vmax = norms(f).sup;
    if (vmax == 0.0) vmax = 1.0;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"470\" height=\"400\" "
          "viewBox=\"0 0 470 400\">\n";
    os << "<rect width=\"470\" height=\"400\" fill=\"white\"/>\n";

    for (int i = 0; i < g.n_r; ++i) {
        double r0 = g.radius(i) - 0.5 * g.dr;
        double r1 = g.radius(i) + 0.5 * g.dr;
        for (int j = 0; j < g.n_theta; ++j) {
            double t0 = g.angle(j) - 0.5 * g.dtheta;
            double t1 = g.angle(j) + 0.5 * g.dtheta;
            double x0 = px(r0 * std::cos(t0)), y0 = py(r0 * std::sin(t0));
            double x1 = px(r1 * std::cos(t0)), y1 = py(r1 * std::sin(t0));
            double x2 = px(r1 * std::cos(t1)), y2 = py(r1 * std::sin(t1));
            double x3 = px(r0 * std::cos(t1)), y3 = py(r0 * std::sin(t1));
            double rp0 = scale * r0, rp1 = scale * r1;
            os << "<path d=\"M" << fmt_short(x0) << ' ' << fmt_short(y0) << " L" << fmt_short(x1)
               << ' ' << fmt_short(y1) << " A" << fmt_short(rp1) << ' ' << fmt_short(rp1)
               << " 0 0 0 " << fmt_short(x2) << ' ' << fmt_short(y2) << " L" << fmt_short(x3)
               << ' ' << fmt_short(y3) << " A" << fmt_short(rp0) << ' ' << fmt_short(rp0)
               << " 0 0 1 " << fmt_short(x0) << ' ' << fmt_short(y0) << " Z\" fill=\""
               << rgb_str(f.at(i, j) / vmax) << "\" stroke=\"none\"/>\n";
        }
    }
    if (f.center) {
        os << "<circle cx=\"" << fmt_short(cx) << "\" cy=\"" << fmt_short(cy) << "\" r=\""
           << fmt_short(scale * 0.5 * g.dr) << "\" fill=\"" << rgb_str(*f.center / vmax)
           << "\"/>\n";
    }
    if (g.kind == GridKind::Annulus) {
        os << "<circle cx=\"" << fmt_short(cx) << "\" cy=\"" << fmt_short(cy) << "\" r=\""
           << fmt_short(scale * g.r_inner) << "\" fill=\"none\" stroke=\"black\" "
              "stroke-width=\"0.5\"/>\n";
    }

    // axis overlay through the origin
    double ax = std::cos(axis_angle), ay = std::sin(axis_angle);
    os << "<line x1=\"" << fmt_short(px(-g.r_outer * ax)) << "\" y1=\""
       << fmt_short(py(-g.r_outer * ay)) << "\" x2=\"" << fmt_short(px(g.r_outer * ax))
       << "\" y2=\"" << fmt_short(py(g.r_outer * ay))
       << "\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 3\"/>\n";

    // legend: vertical gradient bar with min/0/max labels
    const int bars = 64;
    for (int k = 0; k < bars; ++k) {
        double t = 1.0 - 2.0 * k / (bars - 1);
        os << "<rect x=\"420\" y=\"" << fmt_short(40.0 + k * (320.0 / bars))
           << "\" width=\"18\" height=\"" << fmt_short(320.0 / bars + 0.5) << "\" fill=\""
           << rgb_str(t) << "\"/>\n";
    }
    os << "<text x=\"416\" y=\"36\" font-size=\"11\" text-anchor=\"end\">" << fmt_short(vmax)
       << "</text>\n";
    os << "<text x=\"416\" y=\"204\" font-size=\"11\" text-anchor=\"end\">0</text>\n";
    os << "<text x=\"416\" y=\"372\" font-size=\"11\" text-anchor=\"end\">" << fmt_short(-vmax)
       << "</text>\n";
    os << "<text x=\"10\" y=\"390\" font-size=\"11\">t = " << fmt_short(f.time_tag)
       << ", axis = " << fmt_short(axis_angle) << "</text>\n";
    os << "</svg>\n";
}

void emit_heatmap_file(const ScalarField& f, double axis_angle, const std::string& path) {
    std::ofstream os(path);
    require(os.good(), "emit_heatmap_file: cannot open " + path);
    emit_heatmap(f, axis_angle, os);
    require(os.good(), "emit_heatmap_file: write failed for " + path);
}

} // namespace fols
