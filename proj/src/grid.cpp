#include "fols/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace fols {

PolarGrid build_grid(GridKind kind, double r_inner, double r_outer, int n_r, int n_theta) {
    require(r_inner >= 0.0, "build_grid: r_inner must be >= 0");
    require(r_outer > r_inner, "build_grid: r_outer must exceed r_inner");
    require(n_r >= 3, "build_grid: n_r must be >= 3");
    require(n_theta >= 8, "build_grid: n_theta must be >= 8");
    require(n_theta % 2 == 0, "build_grid: n_theta must be even");
    if (kind == GridKind::Disk) require(r_inner == 0.0, "build_grid: Disk requires r_inner = 0");
    if (kind == GridKind::Annulus) require(r_inner > 0.0, "build_grid: Annulus requires r_inner > 0");

    PolarGrid g;
    g.kind = kind;
    g.r_inner = r_inner;
    g.r_outer = r_outer;
    g.n_r = n_r;
    g.n_theta = n_theta;
    g.dr = (r_outer - r_inner) / (n_r + 1);
    g.dtheta = 2.0 * kPi / n_theta;
    return g;
}

bool ScalarField::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    if (center && !std::isfinite(*center)) return false;
    return true;
}

Direction make_direction(const PolarGrid& g, int half_index) {
    int m = 2 * g.n_theta;
    int k = ((half_index % m) + m) % m;
    return Direction{k};
}

Direction opposite(const PolarGrid& g, Direction e) {
    return make_direction(g, e.half_index + g.n_theta);
}

Direction perpendicular(const PolarGrid& g, Direction e) {
    return make_direction(g, e.half_index + g.n_theta / 2);
}

namespace {

std::vector<int> mirror_perm(const PolarGrid& g, int line_half_index) {
    // theta_j -> 2*phi_line - theta_j, i.e. j -> (line_half_index - j) mod n.
    std::vector<int> perm(static_cast<std::size_t>(g.n_theta));
    int n = g.n_theta;
    for (int j = 0; j < n; ++j) {
        int jp = ((line_half_index - j) % n + n) % n;
        perm[static_cast<std::size_t>(j)] = jp;
    }
    return perm;
}

} // namespace

std::vector<int> reflect_indices(const PolarGrid& g, Direction e) {
    return mirror_perm(g, e.half_index);
}

std::vector<int> hyperplane_reflect_indices(const PolarGrid& g, Direction e) {
    // Mirror line of sigma_e is the axis of the perpendicular direction, at
    // angle phi + pi/2, i.e. half index k + n/2 (angles step by pi/n):
    // theta -> 2(phi + pi/2) - theta = 2 phi + pi - theta.
    return mirror_perm(g, e.half_index + g.n_theta / 2);
}

std::vector<bool> half_mask(const PolarGrid& g, Direction e) {
    // cos(theta_j - phi) with theta_j - phi = (2j - k) * pi / n. In units of
    // pi/n the angle is m = (2j - k) mod 2n: cos > 0 iff m in [0, n/2) or
    // (3n/2, 2n); cos == 0 iff m == n/2 or m == 3n/2 (node on H(e)).
    int n = g.n_theta;
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j) {
        int m = (((2 * j - e.half_index) % (2 * n)) + 2 * n) % (2 * n);
        bool positive = (2 * m < n) || (2 * m > 3 * n);
        mask[static_cast<std::size_t>(j)] = positive;
    }
    return mask;
}

ScalarField apply_angular_perm(const ScalarField& f, const std::vector<int>& perm) {
    ScalarField out(f.grid);
    out.time_tag = f.time_tag;
    const int n = f.grid.n_theta;
    for (int i = 0; i < f.grid.n_r; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) = f.at(i, perm[static_cast<std::size_t>(j)]);
    if (f.center) out.center = f.center;
    return out;
}

Norms norms(const ScalarField& f) {
    Norms out;
    double l2sq = 0.0;
    for (int i = 0; i < f.grid.n_r; ++i) {
        double w = f.grid.cell_weight(i);
        for (int j = 0; j < f.grid.n_theta; ++j) {
            double v = f.at(i, j);
            out.sup = std::max(out.sup, std::abs(v));
            l2sq += w * v * v;
        }
    }
    if (f.center) {
        out.sup = std::max(out.sup, std::abs(*f.center));
        l2sq += f.grid.center_weight() * (*f.center) * (*f.center);
    }
    out.l2 = std::sqrt(l2sq);
    return out;
}

double weighted_dot(const ScalarField& a, const ScalarField& b) {
    require(a.grid == b.grid, "weighted_dot: grid mismatch");
    double s = 0.0;
    for (int i = 0; i < a.grid.n_r; ++i) {
        double w = a.grid.cell_weight(i);
        double ring = 0.0;
        for (int j = 0; j < a.grid.n_theta; ++j) ring += a.at(i, j) * b.at(i, j);
        s += w * ring;
    }
    if (a.center) s += a.grid.center_weight() * (*a.center) * (*b.center);
    return s;
}

void write_field_csv(const ScalarField& f, std::ostream& os) {
    os << "r,theta,value\n";
    if (f.center) os << "0,0," << fmt_full(*f.center) << "\n";
    for (int i = 0; i < f.grid.n_r; ++i) {
        std::string r = fmt_full(f.grid.radius(i));
        for (int j = 0; j < f.grid.n_theta; ++j) {
            os << r << ',' << fmt_full(f.grid.angle(j)) << ',' << fmt_full(f.at(i, j)) << "\n";
        }
    }
}

void write_field_csv_file(const ScalarField& f, const std::string& path) {
    std::ofstream os(path);
    require(os.good(), "write_field_csv_file: cannot open " + path);
    write_field_csv(f, os);
    require(os.good(), "write_field_csv_file: write failed for " + path);
}

ScalarField read_field_csv_file(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), "read_field_csv_file: cannot open " + path);
    std::string line;
    require(static_cast<bool>(std::getline(is, line)), "read_field_csv_file: empty file");
    require(line.rfind("r,theta,value", 0) == 0, "read_field_csv_file: bad header in " + path);

    struct Row {
        double r, theta, value;
    };
    std::vector<Row> rows;
    std::optional<double> center;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Row row{};
        char c1 = 0, c2 = 0;
        ls >> row.r >> c1 >> row.theta >> c2 >> row.value;
        require(!ls.fail() && c1 == ',' && c2 == ',', "read_field_csv_file: bad row: " + line);
        if (row.r == 0.0)
            center = row.value;
        else
            rows.push_back(row);
    }
    require(!rows.empty(), "read_field_csv_file: no node rows");

    std::set<double> rset, tset;
    for (const Row& row : rows) {
        rset.insert(row.r);
        tset.insert(row.theta);
    }
    int n_r = static_cast<int>(rset.size());
    int n_theta = static_cast<int>(tset.size());
    require(static_cast<std::size_t>(n_r) * n_theta == rows.size(),
            "read_field_csv_file: grid is not a full tensor product");
    double r0 = *rset.begin();
    double r1 = *rset.rbegin();
    double dr = (n_r > 1) ? (r1 - r0) / (n_r - 1) : r0;
    double r_inner = r0 - dr;
    if (std::abs(r_inner) < 1e-9 * dr) r_inner = 0.0;
    double r_outer = r1 + dr;
    GridKind kind = center ? GridKind::Disk : GridKind::Annulus;
    if (kind == GridKind::Disk) {
        require(std::abs(r_inner) <= 1e-9 * dr, "read_field_csv_file: disk file with nonzero inner radius");
        r_inner = 0.0;
    }
    PolarGrid g = build_grid(kind, r_inner, r_outer, n_r, n_theta);

    ScalarField f(g);
    if (g.has_center()) {
        require(center.has_value(), "read_field_csv_file: disk file missing center row");
        f.center = center;
    }
    std::map<double, int> ri, tj;
    int idx = 0;
    for (double r : rset) ri[r] = idx++;
    idx = 0;
    for (double t : tset) tj[t] = idx++;
    for (const Row& row : rows) f.at(ri[row.r], tj[row.theta]) = row.value;
    return f;
}

} // namespace fols
