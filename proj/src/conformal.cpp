#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "ideal/errors.hpp"
#include "ideal/realize.hpp"

namespace ideal {

namespace {

constexpr double kPi = std::numbers::pi;

struct Corners {
  std::array<double, 3> angle{};  // angle at face[k]
  bool degenerate = false;
  int long_side = -1;  // corner opposite the violated triangle inequality
};

// Log edge lengths up to per-vertex scaling: for every edge AC with quad
// A,B,C,D, lam(AB) + lam(CD) - lam(BC) - lam(DA) equals its shear.
std::map<Edge, double> log_lengths(const HyperbolicStructure& h) {
  const auto& t = h.triangulation();
  const auto edges = t.edges();
  std::map<Edge, int> index;
  for (std::size_t i = 0; i < edges.size(); ++i) index[edges[i]] = static_cast<int>(i);
  const Eigen::Index m = static_cast<Eigen::Index>(edges.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd s(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Quad q = t.quad(edges[static_cast<std::size_t>(i)]);
    a(i, index.at(Edge(q.a, q.b))) += 1;
    a(i, index.at(Edge(q.c, q.d))) += 1;
    a(i, index.at(Edge(q.b, q.c))) -= 1;
    a(i, index.at(Edge(q.d, q.a))) -= 1;
    s(i) = h.shear(edges[static_cast<std::size_t>(i)]);
  }
  const Eigen::VectorXd lam = a.completeOrthogonalDecomposition().solve(s);
  std::map<Edge, double> out;
  for (std::size_t i = 0; i < edges.size(); ++i) out[edges[i]] = lam(static_cast<Eigen::Index>(i));
  return out;
}

bool is_finite(const Face& f) {
  return f[0] != kInfinityVertex && f[1] != kInfinityVertex && f[2] != kInfinityVertex;
}

class ConformalSolver {
 public:
  ConformalSolver(const HyperbolicStructure& target, const PointConfiguration& start)
      : t_(target.triangulation()), lam_(log_lengths(target)), n_(t_.vertex_count()),
        u_(static_cast<std::size_t>(n_), 0.0) {
    refresh();
    fit_scales(start);
  }

  // Alternates Newton solves with flips of non-Delaunay edges.
  bool solve() {
    const int max_rounds = 4 * static_cast<int>(lam_.size());
    for (int round = 0; round < max_rounds; ++round) {
      newton();
      const std::optional<Edge> bad = worst_violation();
      if (!bad) return defect(u_).norm() <= 1e-9 && nondegenerate();
      ptolemy_flip(*bad);
    }
    return false;
  }

  std::optional<PointConfiguration> layout() const;
  const std::vector<Edge>& flips() const { return flips_; }
  const MarkedTriangulation& triangulation() const { return t_; }

 private:
  MarkedTriangulation t_;
  std::map<Edge, double> lam_;
  int n_;
  std::vector<double> u_;
  std::vector<int> slot_;
  std::vector<Edge> flips_;
  std::vector<Face> faces_;
  int m_ = 0;

  // Neighbours of infinity have their scale fixed by their edge to
  // infinity (horosphere at infinity at height 1); the rest are unknowns.
  void refresh() {
    slot_.assign(static_cast<std::size_t>(n_), -1);
    std::vector<char> rim(static_cast<std::size_t>(n_), 0);
    for (int v : t_.link(kInfinityVertex)) {
      rim[v] = 1;
      u_[v] = -2.0 * lam_.at(Edge(v, kInfinityVertex));
    }
    m_ = 0;
    for (int v = 0; v < n_; ++v) {
      if (v != kInfinityVertex && !rim[v]) slot_[v] = m_++;
    }
    faces_.clear();
    for (const Face& f : t_.faces()) {
      if (is_finite(f)) faces_.push_back(f);
    }
  }

  double length(const std::vector<double>& s, int i, int j) const {
    return std::exp(lam_.at(Edge(i, j)) + 0.5 * (s[i] + s[j]));
  }

  // Corner angles, extended by 0, 0, pi past the triangle inequality.
  Corners corners(const std::vector<double>& s, const Face& f) const {
    Corners c;
    std::array<double, 3> opposite{};
    for (int k = 0; k < 3; ++k) opposite[k] = length(s, f[(k + 1) % 3], f[(k + 2) % 3]);
    for (int k = 0; k < 3; ++k) {
      if (opposite[k] >= opposite[(k + 1) % 3] + opposite[(k + 2) % 3]) {
        c.angle[k] = kPi;
        c.degenerate = true;
        c.long_side = k;
        return c;
      }
    }
    for (int k = 0; k < 3; ++k) {
      const double a = opposite[k], b = opposite[(k + 1) % 3], d = opposite[(k + 2) % 3];
      c.angle[k] = std::acos(std::clamp((b * b + d * d - a * a) / (2 * b * d), -1.0, 1.0));
    }
    return c;
  }

  // Angle sum defect at every unknown vertex.
  Eigen::VectorXd defect(const std::vector<double>& s) const {
    Eigen::VectorXd g = Eigen::VectorXd::Constant(m_, -2 * kPi);
    for (const Face& f : faces_) {
      const Corners c = corners(s, f);
      for (int k = 0; k < 3; ++k) {
        if (slot_[f[k]] >= 0) g(slot_[f[k]]) += c.angle[k];
      }
    }
    return g;
  }

  // Scale factors that best explain the given positions.
  void fit_scales(const PointConfiguration& start) {
    if (m_ == 0) return;
    const auto edges = t_.edges();
    Eigen::MatrixXd fit = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(edges.size()), m_);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(edges.size()));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge e = edges[i];
      if (e.u == kInfinityVertex || e.v == kInfinityVertex) continue;
      const Eigen::Index r = static_cast<Eigen::Index>(i);
      rhs(r) = 2.0 * (std::log(std::abs(start[e.u].value() - start[e.v].value())) - lam_.at(e));
      for (int w : {e.u, e.v}) {
        if (slot_[w] >= 0) {
          fit(r, slot_[w]) += 1.0;
        } else {
          rhs(r) -= u_[w];
        }
      }
    }
    const Eigen::VectorXd u0 = fit.colPivHouseholderQr().solve(rhs);
    for (int v = 0; v < n_; ++v) {
      if (slot_[v] >= 0) u_[v] = u0(slot_[v]);
    }
  }

  // Newton on the convex energy whose gradient is the defect; the Hessian
  // is the cotangent Laplacian, shifted when steps get cut short.
  void newton() {
    if (m_ == 0) return;
    double shift = 1e-8;
    for (int it = 0; it < 300; ++it) {
      const Eigen::VectorXd g = defect(u_);
      if (g.norm() <= 1e-13) return;
      Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m_, m_);
      for (const Face& f : faces_) {
        const Corners c = corners(u_, f);
        if (c.degenerate) continue;
        for (int k = 0; k < 3; ++k) {
          const int i = f[k], j = f[(k + 1) % 3];
          const double w = 0.5 / std::tan(c.angle[(k + 2) % 3]);
          if (slot_[i] >= 0) lap(slot_[i], slot_[i]) += w;
          if (slot_[j] >= 0) lap(slot_[j], slot_[j]) += w;
          if (slot_[i] >= 0 && slot_[j] >= 0) {
            lap(slot_[i], slot_[j]) -= w;
            lap(slot_[j], slot_[i]) -= w;
          }
        }
      }
      lap.diagonal().array() += shift;
      Eigen::VectorXd du = lap.ldlt().solve(g);
      if (!du.allFinite()) return;
      // Scale factors far beyond this move collapse triangles anyway.
      const double big = du.cwiseAbs().maxCoeff();
      if (big > 2.0) du *= 2.0 / big;
      const auto moved = [&](double step) {
        std::vector<double> s = u_;
        for (int v = 0; v < n_; ++v) {
          if (slot_[v] >= 0) s[v] += step * du(slot_[v]);
        }
        return s;
      };
      // Exact line search: the energy is convex along du, so bisect on the
      // sign of its slope.
      const auto slope = [&](double step) { return -defect(moved(step)).dot(du); };
      double step = 1.0;
      if (slope(1.0) > 0) {
        double lo = 0.0, hi = 1.0;
        for (int b = 0; b < 40; ++b) {
          const double mid = 0.5 * (lo + hi);
          (slope(mid) > 0 ? hi : lo) = mid;
        }
        step = 0.5 * (lo + hi);
      }
      u_ = moved(step);
      shift = step < 0.5 ? std::min(shift * 10, 1e4) : std::max(shift / 10, 1e-12);
    }
  }

  double corner_at(const Face& f, int v) const {
    const Corners c = corners(u_, f);
    for (int k = 0; k < 3; ++k) {
      if (f[k] == v) return c.angle[k];
    }
    return 0.0;
  }

  // Edge with the largest excess over the Delaunay condition: opposite
  // angles summing past pi for finite edges, a reflex neighbour of
  // infinity for edges to infinity.
  std::optional<Edge> worst_violation() const {
    // An unknown vertex whose angle sum stays off 2 pi lies outside the
    // hull: join it to infinity across the rim edge it sees widest.
    const Eigen::VectorXd g = defect(u_);
    for (int v = 0; v < n_; ++v) {
      if (slot_[v] < 0 || std::abs(g(slot_[v])) <= 1e-9) continue;
      std::optional<Edge> best;
      double widest = -1.0;
      for (const Face& f : faces_) {
        for (int k = 0; k < 3; ++k) {
          if (f[k] != v) continue;
          const Edge side(f[(k + 1) % 3], f[(k + 2) % 3]);
          const Quad q = t_.quad(side);
          if (q.b != kInfinityVertex && q.d != kInfinityVertex) continue;
          const double angle = corners(u_, f).angle[k];
          if (angle > widest && t_.can_flip(side)) {
            widest = angle;
            best = side;
          }
        }
      }
      if (best) return best;
    }
    // A collapsed face has to lose its long side first.
    for (const Face& f : faces_) {
      const Corners c = corners(u_, f);
      if (!c.degenerate) continue;
      const Edge side(f[(c.long_side + 1) % 3], f[(c.long_side + 2) % 3]);
      if (t_.can_flip(side)) return side;
    }
    std::optional<Edge> worst;
    double excess = 1e-12;
    for (const auto& [e, value] : lam_) {
      if (!t_.can_flip(e)) continue;
      const Quad q = t_.quad(e);
      double sum = 0.0;
      if (e.u == kInfinityVertex || e.v == kInfinityVertex) {
        const int v = e.u == kInfinityVertex ? e.v : e.u;
        for (const Face& f : faces_) {
          if (f[0] == v || f[1] == v || f[2] == v) sum += corner_at(f, v);
        }
      } else {
        const Face abc{q.a, q.b, q.c}, cda{q.c, q.d, q.a};
        if (is_finite(abc)) sum += corner_at(abc, q.b);
        if (is_finite(cda)) sum += corner_at(cda, q.d);
        if (!is_finite(abc) || !is_finite(cda)) continue;
      }
      if (sum - kPi > excess) {
        excess = sum - kPi;
        worst = e;
      }
    }
    return worst;
  }

  void ptolemy_flip(Edge e) {
    const Quad q = t_.quad(e);
    const double ab = lam_.at(Edge(q.a, q.b)), bc = lam_.at(Edge(q.b, q.c));
    const double cd = lam_.at(Edge(q.c, q.d)), da = lam_.at(Edge(q.d, q.a));
    const double ac = lam_.at(e);
    const double hi = std::max(ab + cd, bc + da), lo = std::min(ab + cd, bc + da);
    lam_.erase(e);
    flips_.push_back(e);
    const Edge added = t_.flip({e});
    lam_[added] = hi + std::log1p(std::exp(lo - hi)) - ac;
    refresh();
  }

  bool nondegenerate() const {
    for (const Face& f : faces_) {
      const Corners c = corners(u_, f);
      if (c.degenerate) return false;
      for (double a : c.angle) {
        if (a <= 1e-12 || a >= kPi - 1e-12) return false;
      }
    }
    return !faces_.empty();
  }
};

// Lays the triangles out across shared edges; faces are counter-clockwise.
std::optional<PointConfiguration> ConformalSolver::layout() const {
  std::vector<Complex> z(static_cast<std::size_t>(n_));
  std::vector<char> placed(static_cast<std::size_t>(n_), 0);
  const Face& first = faces_.front();
  z[first[0]] = 0.0;
  z[first[1]] = length(u_, first[0], first[1]);
  z[first[2]] = std::polar(length(u_, first[0], first[2]), corners(u_, first).angle[0]);
  for (int v : first) placed[v] = 1;
  for (bool progress = true; progress;) {
    progress = false;
    for (const Face& f : faces_) {
      if (placed[f[0]] + placed[f[1]] + placed[f[2]] != 2) continue;
      int k = 0;
      while (placed[f[k]]) ++k;
      const int q = f[k], y = f[(k + 1) % 3], x = f[(k + 2) % 3];
      const Complex dir = (z[x] - z[y]) / std::abs(z[x] - z[y]);
      z[q] = z[y] + length(u_, y, q) * std::polar(1.0, corners(u_, f).angle[(k + 1) % 3]) * dir;
      placed[q] = 1;
      progress = true;
    }
  }
  const Complex z0 = z[0], z1 = z[1];
  std::vector<SpherePoint> pts;
  for (int v = 0; v < n_; ++v) {
    pts.push_back(v == kInfinityVertex ? SpherePoint::infinity() : SpherePoint((z[v] - z0) / (z1 - z0)));
  }
  pts[0] = SpherePoint(Complex(0.0, 0.0));
  pts[1] = SpherePoint(Complex(1.0, 0.0));
  try {
    return PointConfiguration(std::move(pts));
  } catch (const InvalidConfiguration&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<ConformalLayout> conformal_layout(const HyperbolicStructure& target, const PointConfiguration& start) {
  ConformalSolver solver(target, start);
  if (!solver.solve()) return std::nullopt;
  auto positions = solver.layout();
  if (!positions) return std::nullopt;
  return ConformalLayout{std::move(*positions), solver.flips(), solver.triangulation()};
}

}  // namespace ideal
