#pragma once

namespace ideal {

// Moebius nondegeneracy, relative to the squared coefficient magnitude.
inline constexpr double kDeterminantTolerance = 1e-12;

// Absolute bound on a cusp sum for a structure to count as complete.
inline constexpr double kCuspTolerance = 1e-9;

// Incircle determinant threshold, relative to scale^4 (scale^2 for the
// orientation test used when the circle passes through infinity).
inline constexpr double kCocircularTolerance = 1e-9;

// Minimal chordal separation between two vertices of a configuration.
inline constexpr double kSeparation = 1e-8;

// Triangle orientation, relative to the squared longest side, below which
// the incircle test refuses the triangle as collinear.
inline constexpr double kCollinearTolerance = 1e-14;

// Relative orientation a working face must keep during realization; kept
// above kCollinearTolerance so accepted steps never produce a refused face.
inline constexpr double kSliverTolerance = 1e-12;

}  // namespace ideal
