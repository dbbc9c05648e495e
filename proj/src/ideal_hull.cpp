#include "ideal/ideal_hull.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ideal/errors.hpp"

namespace ideal {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

double orient(Complex a, Complex b, Complex c) { return cross(b - a, c - a); }

std::string label(int v) { return std::to_string(v + 1); }

// Connectivity of the vertex subset `mask` in an edge list graph.
bool connected_subset(int n, const std::vector<Edge>& edges, std::uint32_t mask) {
  if (mask == 0) return false;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : edges) {
    if ((mask >> e.u & 1u) && (mask >> e.v & 1u)) parent[find(e.u)] = find(e.v);
  }
  int root = -1;
  for (int v = 0; v < n; ++v) {
    if (!(mask >> v & 1u)) continue;
    if (root < 0) {
      root = find(v);
    } else if (find(v) != root) {
      return false;
    }
  }
  return true;
}

std::vector<CutSet> bonds(int n, const std::vector<Edge>& skeleton, int k_max) {
  if (k_max > kMaxCutsetSize) {
    throw ResourceBound("cutset enumeration limited to k_max <= " + std::to_string(kMaxCutsetSize));
  }
  if (n > 20) throw ResourceBound("cutset enumeration limited to N <= 20");
  std::vector<CutSet> out;
  const std::uint32_t full = (1u << n) - 1u;
  // Minimal cutsets are exactly the edge sets between the two sides of a
  // vertex bipartition whose sides both induce connected subgraphs.
  for (std::uint32_t side = 1; side < full; side += 2) {
    if (!connected_subset(n, skeleton, side) || !connected_subset(n, skeleton, full & ~side)) continue;
    CutSet c;
    for (const Edge& e : skeleton) {
      if (((side >> e.u) & 1u) != ((side >> e.v) & 1u)) c.edges.push_back(e);
    }
    if (static_cast<int>(c.edges.size()) > k_max) continue;
    for (int v = 0; v < n && !c.star; ++v) {
      const bool all = std::all_of(c.edges.begin(), c.edges.end(), [v](const Edge& e) { return e.u == v || e.v == v; });
      if (all) {
        c.star = true;
        c.star_vertex = v;
      }
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const CutSet& a, const CutSet& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  });
  return out;
}

// Finite position or throws; used where infinity has been excluded.
Complex at(const PointConfiguration& cfg, int v) { return cfg[v].value(); }

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

PointConfiguration::PointConfiguration(std::vector<SpherePoint> points) : points_(std::move(points)) {
  const int n = size();
  if (n < 4) throw InvalidConfiguration("need at least 4 points, got " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (i == kInfinityVertex && !points_[i].is_infinite()) {
      throw InvalidConfiguration("vertex 3 must be the point at infinity");
    }
    if (i != kInfinityVertex && points_[i].is_infinite()) {
      throw InvalidConfiguration("only vertex 3 may be at infinity (vertex " + label(i) + ")");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (chordal_distance(points_[i], points_[j]) < kSeparation) {
        throw InvalidConfiguration("separation violation between vertices " + label(i) + " and " + label(j));
      }
    }
  }
}

PointConfiguration PointConfiguration::normalized(const std::vector<SpherePoint>& points) {
  if (points.size() < 4) throw InvalidConfiguration("need at least 4 points");
  const MoebiusMap m = moebius_through(points[0], points[1], points[2]);
  std::vector<SpherePoint> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(m(p));
  out[0] = SpherePoint(0.0);
  out[1] = SpherePoint(1.0);
  out[2] = SpherePoint::infinity();
  return PointConfiguration(std::move(out));
}

bool PointConfiguration::is_pinned() const {
  return points_[0] == SpherePoint(0.0) && points_[1] == SpherePoint(1.0);
}

// ---------------------------------------------------------------------------
// Predicates

const char* to_string(CircleSide s) {
  switch (s) {
    case CircleSide::inside:
      return "inside";
    case CircleSide::on:
      return "on";
    case CircleSide::outside:
      return "outside";
  }
  return "?";
}

CircleSide incircle(const SpherePoint& A, const SpherePoint& B, const SpherePoint& C, const SpherePoint& D,
                    double tol) {
  detail::require_distinct({A, B, C, D});
  if (A.is_infinite() || B.is_infinite() || C.is_infinite()) {
    // The circle is a line traversed P -> Q -> inf; the disk is its left side.
    Complex p, q;
    if (A.is_infinite()) {
      p = B.value();
      q = C.value();
    } else if (B.is_infinite()) {
      p = C.value();
      q = A.value();
    } else {
      p = A.value();
      q = B.value();
    }
    const Complex d = D.value();
    const double scale = std::max(std::abs(q - p), std::abs(d - p));
    const double o = orient(p, q, d);
    if (std::abs(o) <= tol * scale * scale) return CircleSide::on;
    return o > 0 ? CircleSide::inside : CircleSide::outside;
  }
  const Complex a = A.value(), b = B.value(), c = C.value();
  const double tri_scale = std::max({std::abs(b - a), std::abs(c - a), std::abs(c - b)});
  const double o = orient(a, b, c);
  if (std::abs(o) <= kCollinearTolerance * tri_scale * tri_scale) throw DegenerateConfiguration("collinear triangle in incircle test");
  if (D.is_infinite()) return o > 0 ? CircleSide::outside : CircleSide::inside;

  const Complex d = D.value();
  const Complex ad = a - d, bd = b - d, cd = c - d;
  const double det = std::norm(ad) * cross(bd, cd) + std::norm(bd) * cross(cd, ad) + std::norm(cd) * cross(ad, bd);
  const double scale = std::max({std::abs(ad), std::abs(bd), std::abs(cd)});
  const double s4 = scale * scale * scale * scale;
  if (std::abs(det) <= tol * s4) return CircleSide::on;
  return det > 0 ? CircleSide::inside : CircleSide::outside;
}

double corner_angle(Complex p, Complex q, Complex r) {
  const Complex u = q - p, v = r - p;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

CircleSide incircle_by_angles(Complex A, Complex B, Complex C, Complex D, double tol) {
  const double sum = corner_angle(B, A, C) + corner_angle(D, A, C);
  if (sum > kPi + tol) return CircleSide::inside;
  if (sum < kPi - tol) return CircleSide::outside;
  return CircleSide::on;
}

Circle circumcircle(Complex A, Complex B, Complex C) {
  const Complex b = B - A, c = C - A;
  const double d = 2.0 * cross(b, c);
  if (d == 0.0) throw DegenerateConfiguration("collinear triangle has no circumcircle");
  const double ux = (c.imag() * std::norm(b) - b.imag() * std::norm(c)) / d;
  const double uy = (b.real() * std::norm(c) - c.real() * std::norm(b)) / d;
  const Complex u(ux, uy);
  return Circle{A + u, std::abs(u)};
}

CircleSide incircle_by_circumcenter(Complex A, Complex B, Complex C, Complex D, double tol) {
  const Circle k = circumcircle(A, B, C);
  const double dist = std::abs(D - k.center);
  if (dist < k.radius * (1.0 - tol)) return CircleSide::inside;
  if (dist > k.radius * (1.0 + tol)) return CircleSide::outside;
  return CircleSide::on;
}

double circle_intersection_dihedral(Complex A, Complex B, Complex C, Complex D) {
  const Circle k1 = circumcircle(A, B, C);
  const Circle k2 = circumcircle(A, C, D);
  // Signed angle between the radii at the common point A, measured from
  // B's side of AC toward D's side; the faces meet at pi minus it.
  const double side = orient(A, C, D) >= 0 ? 1.0 : -1.0;
  const Complex r1 = k1.center - A, r2 = k2.center - A;
  const double theta = std::atan2(side * cross(r1, r2), dot(r1, r2));
  return kPi - theta;
}

// ---------------------------------------------------------------------------
// Triangulation of the configuration

MarkedTriangulation initial_sphere_triangulation(const PointConfiguration& cfg) {
  const int n = cfg.size();
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    if (i != kInfinityVertex) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const Complex a = at(cfg, i), b = at(cfg, j);
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  // Leading collinear run.
  std::size_t k = 2;
  while (k < order.size() && orient(at(cfg, order[0]), at(cfg, order[1]), at(cfg, order[k])) == 0.0) ++k;
  if (k == order.size()) throw FlatConfiguration("all points lie on one circle of the sphere");

  std::vector<Face> faces;
  std::vector<int> hull;  // counter-clockwise
  const int apex = order[k];
  const bool left = orient(at(cfg, order[0]), at(cfg, order[1]), at(cfg, apex)) > 0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (left) {
      faces.push_back({order[i], order[i + 1], apex});
    } else {
      faces.push_back({order[i + 1], order[i], apex});
    }
  }
  if (left) {
    hull.assign(order.begin(), order.begin() + static_cast<long>(k));
  } else {
    hull.assign(order.rend() - static_cast<long>(k), order.rend());
  }
  hull.push_back(apex);

  for (std::size_t idx = k + 1; idx < order.size(); ++idx) {
    const int q = order[idx];
    const Complex pq = at(cfg, q);
    const std::size_t h = hull.size();
    std::vector<char> visible(h);
    for (std::size_t i = 0; i < h; ++i) {
      visible[i] = orient(at(cfg, hull[i]), at(cfg, hull[(i + 1) % h]), pq) < 0 ? 1 : 0;
    }
    std::size_t first = h;
    for (std::size_t i = 0; i < h; ++i) {
      if (visible[i] && !visible[(i + h - 1) % h]) {
        first = i;
        break;
      }
    }
    if (first == h) throw FlatConfiguration("degenerate hull while inserting vertex " + label(q));
    std::rotate(hull.begin(), hull.begin() + static_cast<long>(first), hull.end());
    std::rotate(visible.begin(), visible.begin() + static_cast<long>(first), visible.end());
    std::size_t m = 0;
    while (m < h && visible[m]) ++m;
    for (std::size_t i = 0; i < m; ++i) faces.push_back({hull[i + 1], hull[i], q});
    std::vector<int> next{hull[0], q};
    next.insert(next.end(), hull.begin() + static_cast<long>(m), hull.end());
    hull = std::move(next);
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    faces.push_back({hull[(i + 1) % hull.size()], hull[i], kInfinityVertex});
  }
  return MarkedTriangulation::from_faces(n, faces);
}

int legalize(const PointConfiguration& cfg, MarkedTriangulation& t, double tol) {
  std::vector<Edge> stack = t.edges();
  int flips = 0;
  const int n = cfg.size();
  const int guard = 4 * n * n + 16;
  while (!stack.empty()) {
    const Edge e = stack.back();
    stack.pop_back();
    if (!t.has_edge(e)) continue;
    const Quad q = t.quad(e);
    if (incircle(cfg[q.a], cfg[q.b], cfg[q.c], cfg[q.d], tol) != CircleSide::inside) continue;
    if (!t.can_flip(e)) continue;
    t.flip({e});
    if (++flips > guard) throw std::logic_error("legalize: flip budget exceeded");
    stack.emplace_back(q.a, q.b);
    stack.emplace_back(q.b, q.c);
    stack.emplace_back(q.c, q.d);
    stack.emplace_back(q.d, q.a);
  }
  return flips;
}

double dihedral_angle(const PointConfiguration& cfg, const MarkedTriangulation& t, Edge e) {
  const Quad q = t.quad(e);
  if (q.a == kInfinityVertex || q.c == kInfinityVertex) {
    const int v = q.a == kInfinityVertex ? q.c : q.a;
    return corner_angle(at(cfg, v), at(cfg, q.b), at(cfg, q.d));
  }
  const Complex a = at(cfg, q.a), c = at(cfg, q.c);
  double sum = 0.0;
  if (q.b != kInfinityVertex) sum += corner_angle(at(cfg, q.b), a, c);
  if (q.d != kInfinityVertex) sum += corner_angle(at(cfg, q.d), a, c);
  return sum;
}

double edge_shear(const PointConfiguration& cfg, const MarkedTriangulation& t, Edge e) {
  const Quad q = t.quad(e);
  return std::log(std::abs(dihedral_crossratio(cfg[q.a], cfg[q.b], cfg[q.c], cfg[q.d])));
}

HyperbolicStructure shears_from_positions(const PointConfiguration& cfg, const MarkedTriangulation& t) {
  const int n = t.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : t.edges()) m(e.u, e.v) = m(e.v, e.u) = edge_shear(cfg, t, e);
  return HyperbolicStructure(t, std::move(m));
}

IdealPolyhedron hull(const PointConfiguration& cfg, double tol) {
  MarkedTriangulation t = initial_sphere_triangulation(cfg);
  const int flips = legalize(cfg, t, tol);
  const int n = cfg.size();

  const auto flat_edge = [&](const MarkedTriangulation& tri, Edge e) {
    const Quad q = tri.quad(e);
    return incircle(cfg[q.a], cfg[q.b], cfg[q.c], cfg[q.d], tol) == CircleSide::on;
  };

  // Merge triangles across flat edges.
  const auto tris = t.faces();
  std::map<std::pair<int, int>, int> face_of;
  for (int f = 0; f < static_cast<int>(tris.size()); ++f) {
    for (int k = 0; k < 3; ++k) face_of[{tris[f][k], tris[f][(k + 1) % 3]}] = f;
  }
  std::vector<int> parent(tris.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool all_flat = true;
  for (const Edge& e : t.edges()) {
    if (flat_edge(t, e)) {
      parent[find(face_of[{e.u, e.v}])] = find(face_of[{e.v, e.u}]);
    } else {
      all_flat = false;
    }
  }
  if (all_flat) throw FlatConfiguration("all points lie on one circle of the sphere");

  std::map<int, std::map<int, int>> boundary;  // region -> (origin -> target)
  for (const auto& [he, f] : face_of) {
    const int twin = face_of.at({he.second, he.first});
    if (find(f) != find(twin)) boundary[find(f)][he.first] = he.second;
  }
  std::vector<std::vector<int>> polygons;
  std::vector<Face> fanned;
  for (auto& [region, next] : boundary) {
    int start = next.begin()->first;  // smallest label on the boundary
    std::vector<int> cycle{start};
    for (int v = next.at(start); v != start; v = next.at(v)) cycle.push_back(v);
    for (std::size_t i = 1; i + 1 < cycle.size(); ++i) fanned.push_back({cycle[0], cycle[i], cycle[i + 1]});
    polygons.push_back(std::move(cycle));
  }
  std::sort(polygons.begin(), polygons.end());
  // from_faces orients from fanned[0]; every fan triangle inherits the
  // positive orientation of its polygon.
  IdealPolyhedron p(cfg, MarkedTriangulation::from_faces(n, fanned));
  p.faces_ = std::move(polygons);
  p.flips_ = flips;
  p.angles_ = Eigen::MatrixXd::Zero(n, n);
  p.shears_ = Eigen::MatrixXd::Zero(n, n);
  p.flat_ = Eigen::MatrixXi::Zero(n, n);
  for (const Edge& e : p.triangulation_.edges()) {
    const double a = dihedral_angle(cfg, p.triangulation_, e);
    const double s = edge_shear(cfg, p.triangulation_, e);
    const int f = flat_edge(p.triangulation_, e) ? 1 : 0;
    p.angles_(e.u, e.v) = p.angles_(e.v, e.u) = a;
    p.shears_(e.u, e.v) = p.shears_(e.v, e.u) = s;
    p.flat_(e.u, e.v) = p.flat_(e.v, e.u) = f;
  }
  return p;
}

std::vector<Edge> IdealPolyhedron::polyhedron_edges() const {
  std::vector<Edge> out;
  for (const Edge& e : triangulation_.edges()) {
    if (!is_flat(e)) out.push_back(e);
  }
  return out;
}

std::map<Edge, double> dihedral_angles(const IdealPolyhedron& p) {
  std::map<Edge, double> out;
  for (const Edge& e : p.triangulation().edges()) out[e] = p.angle(e);
  return out;
}

std::map<Edge, double> shears_of(const IdealPolyhedron& p) {
  std::map<Edge, double> out;
  for (const Edge& e : p.triangulation().edges()) out[e] = p.shear(e);
  return out;
}

std::vector<LinkPolygon> links_of(const IdealPolyhedron& p) {
  return link_polygons(p.configuration(), p.triangulation());
}

std::vector<LinkPolygon> link_polygons(const PointConfiguration& cfg, const MarkedTriangulation& t) {
  std::vector<LinkPolygon> out;
  for (int v = 0; v < cfg.size(); ++v) {
    LinkPolygon link;
    link.vertex = v;
    link.neighbors = t.link(v);
    // Send v to infinity; the neighbours then trace the link polygon.
    std::vector<Complex> img;
    for (int u : link.neighbors) {
      if (cfg[v].is_infinite()) {
        img.push_back(at(cfg, u));
      } else if (cfg[u].is_infinite()) {
        img.emplace_back(0.0, 0.0);
      } else {
        img.push_back(1.0 / (at(cfg, u) - at(cfg, v)));
      }
    }
    const std::size_t m = img.size();
    double perimeter = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      link.sides.push_back(std::abs(img[(i + 1) % m] - img[i]));
      perimeter += link.sides.back();
      link.corners.push_back(corner_angle(img[i], img[(i + m - 1) % m], img[(i + 1) % m]));
    }
    for (double& s : link.sides) s /= perimeter;
    out.push_back(std::move(link));
  }
  return out;
}

double link_ratio_residual(const std::vector<LinkPolygon>& links, const Eigen::MatrixXd& shears) {
  double worst = 0.0;
  for (const LinkPolygon& link : links) {
    const std::size_t m = link.sides.size();
    for (std::size_t j = 0; j < m; ++j) {
      const double ratio = std::log(link.sides[j] / link.sides[(j + m - 1) % m]);
      worst = std::max(worst, std::abs(shears(link.vertex, link.neighbors[j]) - ratio));
    }
  }
  return worst;
}

double link_ratio_residual(const IdealPolyhedron& p) { return link_ratio_residual(links_of(p), p.shear_matrix()); }

HyperbolicStructure metric_of(const IdealPolyhedron& p) {
  return HyperbolicStructure(p.triangulation(), p.shear_matrix());
}

// ---------------------------------------------------------------------------
// Cutsets

std::vector<CutSet> minimal_cutsets(const IdealPolyhedron& p, int k_max) {
  return bonds(p.vertex_count(), p.polyhedron_edges(), k_max);
}

bool CertificateReport::passed() const {
  if (!convex) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CutsetCheck& c) { return c.passed; });
}

namespace {

void annulus_identities(const PointConfiguration& cfg, const MarkedTriangulation& t, CutsetCheck& check,
                        std::vector<std::string>& notes) {
  const int n = t.vertex_count();
  // Side containing infinity is the outer one.
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<Edge> cut(check.cutset.edges.begin(), check.cutset.edges.end());
  for (const Edge& e : t.edges()) {
    if (!cut.count(e)) parent[find(e.u)] = find(e.v);
  }
  const int outer = find(kInfinityVertex);

  double sum_a = 0, sum_b = 0, sum_g = 0;
  int strip = 0, card_outer = 0;
  std::set<int> outer_vertices;
  for (const Face& f : t.faces()) {
    int cut_edges = 0;
    for (int k = 0; k < 3; ++k) cut_edges += cut.count(Edge(f[k], f[(k + 1) % 3])) ? 1 : 0;
    if (cut_edges == 0) continue;
    if (std::find(f.begin(), f.end(), kInfinityVertex) != f.end()) {
      notes.push_back("annulus identities skipped: strip meets infinity");
      return;
    }
    ++strip;
    for (int k = 0; k < 3; ++k) {
      const int x = f[k], y = f[(k + 1) % 3], z = f[(k + 2) % 3];
      const double angle = corner_angle(at(cfg, z), at(cfg, x), at(cfg, y));
      if (cut.count(Edge(x, y))) {
        sum_g += angle;
      } else if (find(x) == outer) {
        sum_a += angle;
        ++card_outer;
        outer_vertices.insert(x);
        outer_vertices.insert(y);
      } else {
        sum_b += angle;
      }
    }
  }
  const int k = static_cast<int>(check.cutset.edges.size());
  if (strip != k) {
    notes.push_back("annulus identities skipped: strip is not a k-triangle annulus");
    return;
  }
  check.annulus_checked = true;
  check.sum_a = sum_a;
  check.sum_b = sum_b;
  check.sum_gamma = sum_g;
  check.eq_total_residual = sum_a + sum_b + sum_g - k * kPi;
  check.eq_dihedral_residual = sum_g - check.angle_sum;
  if (static_cast<int>(outer_vertices.size()) == card_outer) {
    check.eq_outer_residual = (card_outer - 2) * kPi - (sum_b + kPi * card_outer - sum_a);
  } else {
    notes.push_back("outer boundary of the annulus is not a simple cycle; outer identity skipped");
  }
}

CertificateReport certify(const MarkedTriangulation& t, const std::map<Edge, double>& angles,
                          const std::vector<Edge>& skeleton, int k_max, const PointConfiguration* cfg,
                          bool triangular) {
  CertificateReport r;
  for (const Edge& e : skeleton) {
    const auto it = angles.find(e);
    if (it == angles.end()) continue;
    if (!(it->second > 0.0) || it->second > kPi + kCuspTolerance) {
      r.convex = false;
      std::ostringstream os;
      os << "edge " << label(e.u) << "-" << label(e.v) << " has angle " << it->second << " outside (0, pi]";
      r.convexity_violations.push_back(os.str());
    }
  }
  for (CutSet& c : bonds(t.vertex_count(), skeleton, k_max)) {
    CutsetCheck check;
    const int k = static_cast<int>(c.edges.size());
    for (const Edge& e : c.edges) {
      const auto it = angles.find(e);
      if (it != angles.end()) check.angle_sum += it->second;
    }
    check.bound = (k - 2) * kPi;
    check.margin = check.bound - check.angle_sum;
    check.passed = c.star ? std::abs(check.margin) <= kCuspTolerance : check.margin > kCuspTolerance;
    check.cutset = std::move(c);
    if (cfg && triangular) annulus_identities(*cfg, t, check, r.notes);
    r.checks.push_back(std::move(check));
  }
  if (cfg && !triangular) r.notes.push_back("annulus identities skipped: tessellation has merged faces");
  std::sort(r.notes.begin(), r.notes.end());
  r.notes.erase(std::unique(r.notes.begin(), r.notes.end()), r.notes.end());
  return r;
}

}  // namespace

CertificateReport cutset_certificate(const IdealPolyhedron& p, int k_max) {
  const auto skeleton = p.polyhedron_edges();
  const bool triangular = skeleton.size() == p.triangulation().edges().size();
  return certify(p.triangulation(), dihedral_angles(p), skeleton, k_max, &p.configuration(), triangular);
}

CertificateReport cutset_certificate(const MarkedTriangulation& t, const std::map<Edge, double>& angles,
                                     const std::vector<Edge>& skeleton, int k_max) {
  return certify(t, angles, skeleton, k_max, nullptr, false);
}

std::vector<std::string> global_delaunay_violations(const PointConfiguration& cfg, const MarkedTriangulation& t) {
  std::vector<std::string> out;
  const auto name = [](const Face& f) { return label(f[0]) + "-" + label(f[1]) + "-" + label(f[2]); };
  for (const Face& f : t.faces()) {
    const auto inf = std::find(f.begin(), f.end(), kInfinityVertex);
    if (inf != f.end()) {
      // Rotate to (p, q, inf): the face is the half-plane right of p -> q.
      const auto pos = inf - f.begin();
      const int p = f[(pos + 1) % 3], q = f[(pos + 2) % 3];
      const Complex a = at(cfg, p), b = at(cfg, q);
      for (int v = 0; v < cfg.size(); ++v) {
        if (v == p || v == q || v == kInfinityVertex) continue;
        const Complex c = at(cfg, v);
        const double scale = std::max(std::abs(b - a), std::abs(c - a));
        if (orient(a, b, c) > kCocircularTolerance * scale * scale) out.push_back("face " + name(f) + " contains " + label(v));
      }
      continue;
    }
    const Complex a = at(cfg, f[0]), b = at(cfg, f[1]), c = at(cfg, f[2]);
    if (orient(a, b, c) <= 0) {
      out.push_back("face " + name(f) + " is not positively oriented");
      continue;
    }
    const Circle k = circumcircle(a, b, c);
    for (int v = 0; v < cfg.size(); ++v) {
      if (v == f[0] || v == f[1] || v == f[2] || v == kInfinityVertex) continue;
      if (std::abs(at(cfg, v) - k.center) < k.radius * (1.0 - kCocircularTolerance)) {
        out.push_back("face " + name(f) + " contains " + label(v));
      }
    }
  }
  return out;
}

}  // namespace ideal
