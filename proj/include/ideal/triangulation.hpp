#pragma once

// Labelled combinatorial triangulations of the 2-sphere, Whitehead moves,
// the flip graph and constructive flip paths.
//
// Vertices are 0-based internally; file formats and fingerprints use
// labels 1..N. A triangulation carries an orientation: every face is stored
// as a positively ordered triple, so each directed edge u->v belongs to
// exactly one face. Identity (fingerprint, flip-graph nodes) ignores the
// orientation, since a simple triangulation of the sphere is determined by
// its face set up to reflection.

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ideal {

using Face = std::array<int, 3>;

/// Undirected edge with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// The diagonal to flip.
struct FlipMove {
  Edge edge;
  friend bool operator==(const FlipMove&, const FlipMove&) = default;
};

/// Quadrilateral around an edge AC: faces (A,B,C) and (C,D,A) are both
/// positively oriented.
struct Quad {
  int a, b, c, d;
};

struct ValidationReport {
  bool ok = true;
  std::string violation;

  explicit operator bool() const { return ok; }
  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string why) { return {false, std::move(why)}; }
};

class MarkedTriangulation {
 public:
  /// Builds from faces (0-based vertex indices). Faces are reoriented
  /// coherently starting from faces[0] as given. Throws InvalidTriangulation
  /// with the first violation.
  static MarkedTriangulation from_faces(int n, std::span<const Face> faces);

  static MarkedTriangulation tetrahedron();
  /// Poles 0 and 1, equator 2..n-1.
  static MarkedTriangulation bipyramid(int n);

  int vertex_count() const { return n_; }
  int edge_count() const { return 3 * n_ - 6; }
  int face_count() const { return 2 * n_ - 4; }

  /// Oriented faces, each rotated to start at its smallest vertex, sorted.
  std::vector<Face> faces() const;
  /// Sorted edge list.
  std::vector<Edge> edges() const;

  bool has_edge(int u, int v) const { return apex_[index(u, v)] >= 0; }
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }
  /// Third vertex of the face containing the directed edge u->v.
  int apex(int u, int v) const { return apex_[index(u, v)]; }
  int degree(int v) const;
  /// Neighbours of v in cyclic (positive) order, starting at the smallest.
  std::vector<int> link(int v) const;
  Quad quad(Edge e) const;

  /// Empty optional when legal, otherwise the reason.
  std::optional<std::string> flip_obstruction(Edge e) const;
  bool can_flip(Edge e) const { return !flip_obstruction(e).has_value(); }

  /// Flips in place and returns the new diagonal. Throws IllegalFlip.
  Edge flip(FlipMove move);
  MarkedTriangulation flipped(FlipMove move) const;

  /// Orientation-free identity, e.g. "4:1-2-3,1-2-4,1-3-4,2-3-4".
  std::string fingerprint() const;

  friend bool operator==(const MarkedTriangulation& a, const MarkedTriangulation& b) {
    return a.n_ == b.n_ && a.apex_ == b.apex_;
  }

 private:
  MarkedTriangulation(int n) : n_(n), apex_(static_cast<std::size_t>(n) * n, -1) {}
  std::size_t index(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }
  void set_face(int a, int b, int c);
  void clear_face(int a, int b, int c);

  int n_ = 0;
  std::vector<int> apex_;
};

/// Checks a face list against the sphere-triangulation invariants: closed,
/// orientable, vertex links are single cycles, Euler characteristic 2,
/// connected, simple (no loops, no parallel edges).
ValidationReport validate(int n, std::span<const Face> faces);
ValidationReport validate(const MarkedTriangulation& t);

struct FlipPath {
  std::string start;
  std::vector<FlipMove> moves;
};

/// Replays a path; throws IllegalFlip if a move is not legal when reached.
MarkedTriangulation apply_path(const MarkedTriangulation& t, const FlipPath& path);

/// Flip sequence to the canonical triangulation: vertex 0 coned to all
/// others, the residual polygon fanned from vertex 1, and the polygon order
/// 2, 3, ..., n-1. Each entry records the flipped edge and the new diagonal.
std::vector<std::pair<Edge, Edge>> canonicalizing_flips(MarkedTriangulation t);

MarkedTriangulation canonical_triangulation(int n);

/// Flip path from t1 to t2 through the canonical triangulation. Throws
/// LabelMismatch when the vertex counts differ.
FlipPath flip_path(const MarkedTriangulation& t1, const MarkedTriangulation& t2);

inline constexpr int kDefaultMaxFlipGraphVertices = 7;

struct FlipGraph {
  int n = 0;
  std::vector<std::string> nodes;           // sorted fingerprints
  std::vector<std::vector<int>> adjacency;  // sorted neighbour indices
  std::size_t edge_count = 0;
  bool connected = false;
};

/// Every labelled triangulation of the n-vertex sphere, by face-set
/// backtracking, independent of flips.
std::vector<MarkedTriangulation> enumerate_triangulations(int n);

/// Exhaustive flip graph. Throws ResourceBound when n > n_max.
FlipGraph flip_graph(int n, int n_max = kDefaultMaxFlipGraphVertices);

}  // namespace ideal
