#pragma once

#include <iosfwd>
#include <string>

#include "fols/grid.hpp"

namespace fols {

/// Byte-deterministic SVG heatmap of a field: one annular-sector path per
/// cell colored by a symmetric blue-white-red map on [-vmax, vmax], a line
/// overlay marking axis_angle, and a value legend. Identical inputs produce
/// identical bytes (fixed float formatting, no timestamps).
void emit_heatmap(const ScalarField& f, double axis_angle, std::ostream& os);
void emit_heatmap_file(const ScalarField& f, double axis_angle, const std::string& path);

} // namespace fols
