#pragma once

#include <string>

#include "ideal/ideal_hull.hpp"

namespace ideal {

/// Planar picture of the tessellation with the vertex at infinity omitted.
/// Finite edges are segments, hull edges are drawn bold, diagonals of
/// merged faces dashed grey. Stroke colour encodes angle / pi on a linear
/// blue (0) to red (1) ramp. Vertices carry their 1-based labels.
std::string render_svg(const IdealPolyhedron& p, double width = 600.0);

}  // namespace ideal
