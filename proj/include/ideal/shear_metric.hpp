#pragma once

// Shear coordinates of complete hyperbolic structures on the N-punctured
// sphere and their exact change under Whitehead moves.

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

#include "ideal/tolerances.hpp"
#include "ideal/triangulation.hpp"

namespace ideal {

/// A triangulation with one real shear per edge, stored as a symmetric
/// N x N matrix that is zero off the edge set. The shear of edge AC is
/// oriented by the triangulation: faces (A,B,C) and (C,D,A) positive.
class HyperbolicStructure {
 public:
  HyperbolicStructure(MarkedTriangulation t, Eigen::MatrixXd shear);
  static HyperbolicStructure zero(MarkedTriangulation t);
  static HyperbolicStructure from_edges(MarkedTriangulation t, const std::map<Edge, double>& shear);

  const MarkedTriangulation& triangulation() const { return triangulation_; }
  const Eigen::MatrixXd& shear_matrix() const { return shear_; }
  double shear(Edge e) const { return shear_(e.u, e.v); }
  void set_shear(Edge e, double value);

  /// Shears in sorted edge order.
  Eigen::VectorXd coordinates() const;
  /// Per-vertex sums of incident shears.
  Eigen::VectorXd cusp_sums() const { return shear_.rowwise().sum(); }
  bool is_complete(double eps = kCuspTolerance) const;

 private:
  MarkedTriangulation triangulation_;
  Eigen::MatrixXd shear_;
};

/// A coordinate chart: the reference triangulation's fingerprint and the
/// shear vector over its sorted edges. Completeness is kept as V linear
/// constraints rather than eliminated.
struct ShearChart {
  std::string fingerprint;
  std::vector<Edge> edges;
  Eigen::VectorXd coordinates;
};

ShearChart chart_of(const HyperbolicStructure& h);

/// V x E vertex-edge incidence matrix; its kernel is the space of complete
/// structures on t.
Eigen::MatrixXd cusp_constraint_matrix(const MarkedTriangulation& t);

Eigen::VectorXd cusp_sums(const HyperbolicStructure& h);

/// Multiplicative flip rule in x = exp(shear(AC)) for the quad A,B,C,D:
/// the new diagonal BD gets 1/x, AB and CD are multiplied by (1 + x),
/// BC and DA by (1 + 1/x)^-1, every other edge is unchanged.
enum class FlipFactor { one_plus_x, inverse_one_plus_inverse_x };

struct FlipRuleEntry {
  const char* side;  // "AB", "BC", "CD", "DA"
  FlipFactor factor;
};

inline constexpr FlipRuleEntry kFlipRule[4] = {
    {"AB", FlipFactor::one_plus_x},
    {"BC", FlipFactor::inverse_one_plus_inverse_x},
    {"CD", FlipFactor::one_plus_x},
    {"DA", FlipFactor::inverse_one_plus_inverse_x},
};

/// The same metric expressed in the flipped triangulation. Throws IllegalFlip.
HyperbolicStructure flip_transition(const HyperbolicStructure& h, FlipMove move);

/// Jacobian of flip_transition in chart coordinates: rows follow the
/// flipped triangulation's sorted edges, columns the original's.
Eigen::MatrixXd flip_transition_jacobian(const HyperbolicStructure& h, FlipMove move);

/// Composition of flip transitions along flip_path(h.triangulation(), target).
HyperbolicStructure transition_map(const HyperbolicStructure& h, const MarkedTriangulation& target);

/// Flip transitions along an explicit path.
HyperbolicStructure transition_along(const HyperbolicStructure& h, const FlipPath& path);

/// Dimension 2N - 6 of the space of complete structures. Throws TooFewCusps.
int chart_dimension(int n);

}  // namespace ideal
