#pragma once

// Inverse map: from a complete shear structure to vertex positions whose
// ideal polyhedron carries it. Each attempt is warm-started by a discrete
// conformal layout of the target triangulation, then refined by damped
// Gauss-Newton on the free vertices with a working triangulation that
// follows the Delaunay combinatorics.

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ideal/ideal_hull.hpp"
#include "ideal/shear_metric.hpp"

namespace ideal {

struct RealizationConfig {
  int max_iterations = 500;
  double damping = 1e-3;      // initial Levenberg parameter
  double tolerance = 1e-10;   // on the residual 2-norm
  int restarts = 4;
  std::uint64_t seed = 0;
  int flip_hysteresis = 2;    // consecutive accepted steps an edge must fail before it is flipped
  bool conformal_start = true;  // warm-start each attempt with conformal_layout
};

struct RealizationProblem {
  HyperbolicStructure target;
  RealizationConfig config;
};

enum class RealizationStatus { converged, stalled, degenerate };

const char* to_string(RealizationStatus s);

struct WorkingFlip {
  int iteration = 0;
  Edge removed;
  Edge added;
};

struct RealizationResult {
  PointConfiguration configuration;
  double residual_norm = 0;
  int iterations = 0;  // summed over attempts
  int attempts = 0;
  std::vector<WorkingFlip> flip_log;
  RealizationStatus status = RealizationStatus::stalled;
  MarkedTriangulation working;
  std::vector<std::string> diagnostics;
};

/// Shear mismatch on every working edge, in sorted edge order. Throws
/// DegenerateConfiguration for coincident quad vertices.
Eigen::VectorXd residual(const PointConfiguration& positions, const MarkedTriangulation& working,
                         const HyperbolicStructure& target_in_working);

/// Analytic Jacobian of residual with respect to (Re z, Im z) of the free
/// vertices 4..N, two columns per vertex.
Eigen::MatrixXd residual_jacobian(const PointConfiguration& positions, const MarkedTriangulation& working);

/// Numerical rank with singular values above rel_threshold * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m, double rel_threshold = 1e-8);

/// Tutte embedding of the target triangulation with the neighbours of the
/// vertex at infinity on a regular polygon, affinely pinned to v1 = 0,
/// v2 = 1. A nonzero seed randomizes edge weights and rim spacing.
PointConfiguration initial_guess(const HyperbolicStructure& target, std::uint64_t seed = 0);

struct ConformalLayout {
  PointConfiguration positions;
  std::vector<Edge> flips;  // applied in order to the target triangulation
  MarkedTriangulation triangulation;  // Delaunay triangulation of positions
};

/// Positions realizing the target, found by Newton's method on per-vertex
/// log scale factors of Penner lengths (a convex problem) interleaved with
/// Ptolemy flips until the flat metric is Delaunay, then laid out face by
/// face. Scale factors start from a fit to `start`. Empty when the solve
/// does not reach a nondegenerate Delaunay layout.
std::optional<ConformalLayout> conformal_layout(const HyperbolicStructure& target, const PointConfiguration& start);

/// Throws IncompleteStructure when the target has a nonzero cusp sum.
RealizationResult realize(const RealizationProblem& p);

/// Free coordinates (vertices 4..N) packed as 2N - 6 reals.
Eigen::VectorXd free_coordinates(const PointConfiguration& c);
PointConfiguration with_free_coordinates(int n, const Eigen::VectorXd& x);

}  // namespace ideal
