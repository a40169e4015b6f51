#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fols/util.hpp"

namespace fols {

enum class GridKind { Disk, Annulus };

/// Polar discretization of a disk (truncated plane) or an annulus (truncated
/// exterior domain). Radial nodes are cell-centered: node i sits at
/// r_i = r_inner + (i+1)*dr with dr = (r_outer - r_inner)/(n_r + 1), so the
/// Dirichlet boundaries at r_inner (annulus) and r_outer are ghost positions
/// that never carry unknowns. A disk additionally owns one center unknown at
/// r = 0. Angular nodes are theta_j = j * dtheta with dtheta = 2*pi/n_theta;
/// n_theta must be even so that every half-grid axis admits an exact index
/// reflection.
///
/// Grids are immutable once built and safe to share between threads.
struct PolarGrid {
    GridKind kind = GridKind::Disk;
    double r_inner = 0.0;
    double r_outer = 0.0;
    int n_r = 0;
    int n_theta = 0;
    double dr = 0.0;
    double dtheta = 0.0;

    bool has_center() const { return kind == GridKind::Disk; }
    int ring_nodes() const { return n_r * n_theta; }
    int total_nodes() const { return ring_nodes() + (has_center() ? 1 : 0); }

    double radius(int i) const { return r_inner + (i + 1) * dr; }
    double angle(int j) const { return j * dtheta; }
    int index(int i, int j) const { return i * n_theta + j; }

    /// Quadrature weight of cell (i,j): r_i * dr * dtheta. The disk center
    /// cell is the disk of radius dr/2, area pi*dr^2/4; with these weights the
    /// discrete Laplacian is exactly self-adjoint.
    double cell_weight(int i) const { return radius(i) * dr * dtheta; }
    double center_weight() const { return kPi * dr * dr * 0.25; }

    bool operator==(const PolarGrid& o) const = default;
};

/// build_grid validates and derives spacings. Rejects odd n_theta, degenerate
/// radii, and a disk with r_inner > 0.
PolarGrid build_grid(GridKind kind, double r_inner, double r_outer, int n_r, int n_theta);

/// One scalar unknown per grid node at a fixed time. Dirichlet boundary
/// values are implicit zeros and never stored.
struct ScalarField {
    ScalarField() = default;
    explicit ScalarField(const PolarGrid& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.ring_nodes()), fill),
          center(g.has_center() ? std::optional<double>(fill) : std::nullopt) {}

    PolarGrid grid;
    std::vector<double> values; // indexed (i, j) row-major
    std::optional<double> center;
    double time_tag = 0.0;

    double& at(int i, int j) { return values[static_cast<std::size_t>(grid.index(i, j))]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(grid.index(i, j))]; }

    bool all_finite() const;
};

/// A reflection/half-plane direction constrained to half-grid angles
/// phi = half_index * dtheta / 2, so reflections are exact permutations.
struct Direction {
    int half_index = 0; // in [0, 2*n_theta)

    double angle(const PolarGrid& g) const { return half_index * (kPi / g.n_theta); }
};

Direction make_direction(const PolarGrid& g, int half_index);
Direction opposite(const PolarGrid& g, Direction e);
/// The direction rotated by +pi/2; its axis is the hyperplane H(e).
Direction perpendicular(const PolarGrid& g, Direction e);

/// Angular index permutation of the reflection about the line through the
/// origin with angle phi(e): theta_j -> 2 phi - theta_j. Radial index is
/// unchanged; the disk center is a fixed point. perm[j] = j'.
std::vector<int> reflect_indices(const PolarGrid& g, Direction e);

/// Angular permutation of sigma_e, the reflection across the hyperplane
/// H(e) perpendicular to e (theta_j -> 2 phi + pi - theta_j). This is the
/// reflection that exchanges the half domain {x.e > 0} with {x.e < 0}.
std::vector<int> hyperplane_reflect_indices(const PolarGrid& g, Direction e);

/// Node mask of the open half domain {x . e > 0}. Nodes on the hyperplane
/// H(e) (cos(theta_j - phi) == 0, decided in exact integer arithmetic) are
/// excluded. Indexed by j only; all rings share the mask. The disk center is
/// never in any half mask.
std::vector<bool> half_mask(const PolarGrid& g, Direction e);

/// Apply an angular permutation to a field: out(i, j) = f(i, perm[j]).
ScalarField apply_angular_perm(const ScalarField& f, const std::vector<int>& perm);

struct Norms {
    double sup = 0.0;
    double l2 = 0.0;
};

/// Sup over all nodes and the quadrature-weighted L2 norm.
Norms norms(const ScalarField& f);

/// Weighted inner product sum_ij w_ij f g (+ center term).
double weighted_dot(const ScalarField& a, const ScalarField& b);

/// CSV serialization: header "r,theta,value", full round-trip precision,
/// rows in (i, j) lexicographic order; a disk writes its center first as
/// "0,0,<value>".
void write_field_csv(const ScalarField& f, std::ostream& os);
void write_field_csv_file(const ScalarField& f, const std::string& path);
/// Rebuilds the grid geometry from the node coordinates in the file.
ScalarField read_field_csv_file(const std::string& path);

} // namespace fols
