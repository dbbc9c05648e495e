#pragma once

// Forward map: vertex positions on the Riemann sphere -> convex ideal
// polyhedron, its planar tessellation with the vertex v3 at infinity,
// dihedral angles, shears, vertex links and cutset certificates.

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

#include "ideal/complex_sphere.hpp"
#include "ideal/shear_metric.hpp"
#include "ideal/tolerances.hpp"
#include "ideal/triangulation.hpp"

namespace ideal {

/// Index of the vertex pinned at infinity (label 3).
inline constexpr int kInfinityVertex = 2;

/// N labelled, pairwise separated points with the third one at infinity.
class PointConfiguration {
 public:
  /// Throws InvalidConfiguration (size, infinity placement, separation).
  explicit PointConfiguration(std::vector<SpherePoint> points);

  /// Applies moebius_through(p1, p2, p3) first, pinning v1, v2, v3 at 0, 1, inf.
  static PointConfiguration normalized(const std::vector<SpherePoint>& points);

  int size() const { return static_cast<int>(points_.size()); }
  const SpherePoint& operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }
  const std::vector<SpherePoint>& points() const { return points_; }
  /// v1 = 0 and v2 = 1 exactly (v3 = inf always holds).
  bool is_pinned() const;

 private:
  std::vector<SpherePoint> points_;
};

enum class CircleSide { inside, on, outside };

const char* to_string(CircleSide s);

/// Position of D relative to the oriented circle through A, B, C. The disk
/// is the side on the left when traversing A -> B -> C; for a finite
/// counter-clockwise triangle that is the bounded disk. Decided by the
/// incircle determinant with relative tolerance kCocircularTolerance.
/// Throws DegenerateConfiguration for collinear A, B, C or coincident points.
CircleSide incircle(const SpherePoint& A, const SpherePoint& B, const SpherePoint& C, const SpherePoint& D,
                    double tol = kCocircularTolerance);

/// Inscribed-angle criterion for a convex quadrilateral ABCD (D across AC
/// from B): outside iff angle B + angle D < pi.
CircleSide incircle_by_angles(Complex A, Complex B, Complex C, Complex D, double tol = kCocircularTolerance);

/// Distance from D to the circumcentre of ABC compared with the radius.
CircleSide incircle_by_circumcenter(Complex A, Complex B, Complex C, Complex D, double tol = kCocircularTolerance);

struct Circle {
  Complex center;
  double radius;
};
Circle circumcircle(Complex A, Complex B, Complex C);

/// Angle at p between the rays to q and r, in [0, pi].
double corner_angle(Complex p, Complex q, Complex r);

/// Dihedral angle between the faces ABC and ACD of an ideal polyhedron
/// from the intersection angle of their circumcircles.
double circle_intersection_dihedral(Complex A, Complex B, Complex C, Complex D);

struct LinkPolygon {
  int vertex = 0;
  std::vector<int> neighbors;   // cyclic order around the vertex
  std::vector<double> sides;    // side i joins neighbors[i] and neighbors[i+1]; perimeter 1
  std::vector<double> corners;  // interior angle at neighbors[i]
};

class IdealPolyhedron {
 public:
  const PointConfiguration& configuration() const { return config_; }
  int vertex_count() const { return config_.size(); }
  /// Tessellation with every merged face fanned from its lowest label.
  const MarkedTriangulation& triangulation() const { return triangulation_; }
  /// Faces of the tessellation, positively oriented cycles (may exceed 3).
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  /// Edges of the polyhedron proper (diagonals of merged faces excluded).
  std::vector<Edge> polyhedron_edges() const;
  bool is_flat(Edge e) const { return flat_(e.u, e.v) != 0; }
  double angle(Edge e) const { return angles_(e.u, e.v); }
  double shear(Edge e) const { return shears_(e.u, e.v); }
  const Eigen::MatrixXd& angle_matrix() const { return angles_; }
  const Eigen::MatrixXd& shear_matrix() const { return shears_; }
  int legalization_flips() const { return flips_; }

 private:
  friend IdealPolyhedron hull(const PointConfiguration&, double);
  explicit IdealPolyhedron(PointConfiguration c, MarkedTriangulation t)
      : config_(std::move(c)), triangulation_(std::move(t)) {}

  PointConfiguration config_;
  MarkedTriangulation triangulation_;
  std::vector<std::vector<int>> faces_;
  Eigen::MatrixXd angles_;
  Eigen::MatrixXd shears_;
  Eigen::MatrixXi flat_;
  int flips_ = 0;
};

/// Delaunay triangulation of the finite points, coned to infinity over the
/// convex hull, with cocircular triangles merged. Throws FlatConfiguration
/// when all points lie on one circle of the sphere. `tol` is the relative
/// incircle tolerance for legalization and for merging cocircular faces.
IdealPolyhedron hull(const PointConfiguration& cfg, double tol = kCocircularTolerance);

/// Orientation-consistent sphere triangulation of the configuration: any
/// triangulation of the finite points plus the cone over their hull.
MarkedTriangulation initial_sphere_triangulation(const PointConfiguration& cfg);

/// Flips every edge whose quad fails the local Delaunay test until none
/// remains; returns the number of flips.
int legalize(const PointConfiguration& cfg, MarkedTriangulation& t, double tol = kCocircularTolerance);

/// Dihedral angle of a triangulation edge from Euclidean angles of the
/// planar picture: opposite inscribed angles for interior edges, the angle
/// at the finite apex for hull edges, the hull angle for edges to infinity.
double dihedral_angle(const PointConfiguration& cfg, const MarkedTriangulation& t, Edge e);

/// log |dihedral_crossratio| of the edge's quad.
double edge_shear(const PointConfiguration& cfg, const MarkedTriangulation& t, Edge e);

std::map<Edge, double> dihedral_angles(const IdealPolyhedron& p);
std::map<Edge, double> shears_of(const IdealPolyhedron& p);
std::vector<LinkPolygon> links_of(const IdealPolyhedron& p);
HyperbolicStructure metric_of(const IdealPolyhedron& p);

/// Links of every vertex of an arbitrary triangulation of the configuration.
std::vector<LinkPolygon> link_polygons(const PointConfiguration& cfg, const MarkedTriangulation& t);

/// Largest |shear(v, w_j) - log(side_j / side_{j-1})| over all links, where
/// side_j follows neighbour w_j in the link's cyclic order.
double link_ratio_residual(const std::vector<LinkPolygon>& links, const Eigen::MatrixXd& shears);
double link_ratio_residual(const IdealPolyhedron& p);

/// Shears of every edge of t computed from positions (t need not be Delaunay).
HyperbolicStructure shears_from_positions(const PointConfiguration& cfg, const MarkedTriangulation& t);

struct CutSet {
  std::vector<Edge> edges;
  bool star = false;  // all edges share one vertex
  int star_vertex = -1;
};

inline constexpr int kMaxCutsetSize = 12;

/// All minimal edge cutsets of the polyhedron's 1-skeleton with at most
/// k_max edges. Throws ResourceBound when k_max > kMaxCutsetSize.
std::vector<CutSet> minimal_cutsets(const IdealPolyhedron& p, int k_max);

struct CutsetCheck {
  CutSet cutset;
  double angle_sum = 0;
  double bound = 0;   // (k - 2) pi
  double margin = 0;  // bound - angle_sum
  bool passed = false;
  bool annulus_checked = false;
  double sum_a = 0, sum_b = 0, sum_gamma = 0;
  double eq_total_residual = 0;     // sum A + sum B + sum Gamma - k pi
  double eq_dihedral_residual = 0;  // sum Gamma - angle_sum
  double eq_outer_residual = 0;     // (card A2 - 2) pi - (sum B + pi card A2 - sum A)
};

struct CertificateReport {
  bool convex = true;  // all polyhedron angles in (0, pi]
  std::vector<std::string> convexity_violations;
  std::vector<CutsetCheck> checks;
  std::vector<std::string> notes;
  bool passed() const;
};

/// Cutset inequalities for every minimal cutset with at most k_max edges,
/// plus the annulus angle identities when the cutset's strip of triangles
/// avoids infinity.
CertificateReport cutset_certificate(const IdealPolyhedron& p, int k_max = 6);

/// Same checks against externally supplied angles (e.g. a report read from
/// disk). Edges missing from the map are skipped.
CertificateReport cutset_certificate(const MarkedTriangulation& t, const std::map<Edge, double>& angles,
                                     const std::vector<Edge>& skeleton, int k_max);

/// Brute-force global empty-circle check over every (face, vertex) pair;
/// returns the violations as "face a-b-c contains v".
std::vector<std::string> global_delaunay_violations(const PointConfiguration& cfg, const MarkedTriangulation& t);

}  // namespace ideal
