#include "ideal/shear_metric.hpp"

#include <algorithm>
#include <cmath>

#include "ideal/errors.hpp"

namespace ideal {

namespace {

// log(1 + e^s) without overflow.
double softplus(double s) { return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

double logistic(double s) { return 1.0 / (1.0 + std::exp(-s)); }

}  // namespace

HyperbolicStructure::HyperbolicStructure(MarkedTriangulation t, Eigen::MatrixXd shear)
    : triangulation_(std::move(t)), shear_(std::move(shear)) {
  const int n = triangulation_.vertex_count();
  if (shear_.rows() != n || shear_.cols() != n) {
    throw InvalidTriangulation("shear matrix size does not match the vertex count");
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (!std::isfinite(shear_(u, v))) throw InvalidTriangulation("non-finite shear");
      if (!triangulation_.has_edge(u, v) && shear_(u, v) != 0.0) {
        throw InvalidTriangulation("shear on a non-edge");
      }
      if (shear_(u, v) != shear_(v, u)) throw InvalidTriangulation("asymmetric shear matrix");
    }
  }
}

HyperbolicStructure HyperbolicStructure::zero(MarkedTriangulation t) {
  const int n = t.vertex_count();
  return HyperbolicStructure(std::move(t), Eigen::MatrixXd::Zero(n, n));
}

HyperbolicStructure HyperbolicStructure::from_edges(MarkedTriangulation t, const std::map<Edge, double>& shear) {
  const int n = t.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [e, s] : shear) {
    if (!t.has_edge(e)) {
      throw InvalidTriangulation("shear given for non-edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1));
    }
    m(e.u, e.v) = m(e.v, e.u) = s;
  }
  for (const Edge& e : t.edges()) {
    if (!shear.count(e)) {
      throw InvalidTriangulation("missing shear for edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1));
    }
  }
  return HyperbolicStructure(std::move(t), std::move(m));
}

void HyperbolicStructure::set_shear(Edge e, double value) {
  if (!triangulation_.has_edge(e)) throw InvalidTriangulation("shear on a non-edge");
  shear_(e.u, e.v) = shear_(e.v, e.u) = value;
}

Eigen::VectorXd HyperbolicStructure::coordinates() const {
  const auto edges = triangulation_.edges();
  Eigen::VectorXd x(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) x(static_cast<Eigen::Index>(i)) = shear(edges[i]);
  return x;
}

bool HyperbolicStructure::is_complete(double eps) const { return cusp_sums().cwiseAbs().maxCoeff() <= eps; }

ShearChart chart_of(const HyperbolicStructure& h) {
  return ShearChart{h.triangulation().fingerprint(), h.triangulation().edges(), h.coordinates()};
}

Eigen::MatrixXd cusp_constraint_matrix(const MarkedTriangulation& t) {
  const auto edges = t.edges();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t.vertex_count(), static_cast<Eigen::Index>(edges.size()));
  for (std::size_t j = 0; j < edges.size(); ++j) {
    m(edges[j].u, static_cast<Eigen::Index>(j)) = 1.0;
    m(edges[j].v, static_cast<Eigen::Index>(j)) = 1.0;
  }
  return m;
}

Eigen::VectorXd cusp_sums(const HyperbolicStructure& h) { return h.cusp_sums(); }

HyperbolicStructure flip_transition(const HyperbolicStructure& h, FlipMove move) {
  const MarkedTriangulation& t = h.triangulation();
  if (auto why = t.flip_obstruction(move.edge)) throw IllegalFlip(*why);
  const Quad q = t.quad(move.edge);
  const double s = h.shear(move.edge);
  const double grow = softplus(s);     // log(1 + x)
  const double shrink = softplus(-s);  // log(1 + 1/x)

  Eigen::MatrixXd m = h.shear_matrix();
  const auto bump = [&](int a, int b, double delta) {
    m(a, b) += delta;
    m(b, a) = m(a, b);
  };
  bump(q.a, q.b, grow);
  bump(q.c, q.d, grow);
  bump(q.b, q.c, -shrink);
  bump(q.d, q.a, -shrink);
  m(q.a, q.c) = m(q.c, q.a) = 0.0;
  m(q.b, q.d) = m(q.d, q.b) = -s;
  return HyperbolicStructure(t.flipped(move), std::move(m));
}

Eigen::MatrixXd flip_transition_jacobian(const HyperbolicStructure& h, FlipMove move) {
  const MarkedTriangulation& t = h.triangulation();
  if (auto why = t.flip_obstruction(move.edge)) throw IllegalFlip(*why);
  const Quad q = t.quad(move.edge);
  const MarkedTriangulation after = t.flipped(move);
  const auto before_edges = t.edges();
  const auto after_edges = after.edges();
  const auto column = [&](Edge e) {
    return static_cast<Eigen::Index>(std::lower_bound(before_edges.begin(), before_edges.end(), e) - before_edges.begin());
  };
  const Eigen::Index diag = column(move.edge);
  const double s = h.shear(move.edge);

  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(after_edges.size()),
                                            static_cast<Eigen::Index>(before_edges.size()));
  for (std::size_t r = 0; r < after_edges.size(); ++r) {
    const Edge e = after_edges[r];
    const auto row = static_cast<Eigen::Index>(r);
    if (e == Edge(q.b, q.d)) {
      j(row, diag) = -1.0;
      continue;
    }
    j(row, column(e)) = 1.0;
    if (e == Edge(q.a, q.b) || e == Edge(q.c, q.d)) j(row, diag) = logistic(s);
    if (e == Edge(q.b, q.c) || e == Edge(q.d, q.a)) j(row, diag) = logistic(-s);
  }
  return j;
}

HyperbolicStructure transition_along(const HyperbolicStructure& h, const FlipPath& path) {
  HyperbolicStructure out = h;
  for (const FlipMove& m : path.moves) out = flip_transition(out, m);
  return out;
}

HyperbolicStructure transition_map(const HyperbolicStructure& h, const MarkedTriangulation& target) {
  return transition_along(h, flip_path(h.triangulation(), target));
}

int chart_dimension(int n) {
  if (n < 4) throw TooFewCusps("need at least 4 cusps, got " + std::to_string(n));
  return 2 * n - 6;
}

}  // namespace ideal
