#include "ideal/realize.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>

#include "ideal/errors.hpp"

namespace ideal {

namespace {

constexpr int kFree = 3;  // first free vertex index

double orient(Complex a, Complex b, Complex c) {
  const Complex u = b - a, v = c - a;
  return u.real() * v.imag() - u.imag() * v.real();
}

// Every finite face of t is counter-clockwise at these positions.
bool faces_positive(const std::vector<Complex>& z, const MarkedTriangulation& t) {
  for (const Face& f : t.faces()) {
    if (f[0] == kInfinityVertex || f[1] == kInfinityVertex || f[2] == kInfinityVertex) continue;
    const Complex a = z[f[0]], b = z[f[1]], c = z[f[2]];
    const double scale = std::max({std::abs(b - a), std::abs(c - a), std::abs(c - b)});
    if (!(orient(a, b, c) > kSliverTolerance * scale * scale)) return false;
  }
  return true;
}

std::vector<Complex> finite_values(const PointConfiguration& c) {
  std::vector<Complex> z(static_cast<std::size_t>(c.size()));
  for (int i = 0; i < c.size(); ++i) {
    if (i != kInfinityVertex) z[i] = c[i].value();
  }
  return z;
}

PointConfiguration from_values(const std::vector<Complex>& z) {
  std::vector<SpherePoint> pts;
  for (std::size_t i = 0; i < z.size(); ++i) {
    pts.push_back(static_cast<int>(i) == kInfinityVertex ? SpherePoint::infinity() : SpherePoint(z[i]));
  }
  return PointConfiguration(std::move(pts));
}

std::vector<Edge> locally_illegal(const PointConfiguration& c, const MarkedTriangulation& t) {
  std::vector<Edge> out;
  for (const Edge& e : t.edges()) {
    const Quad q = t.quad(e);
    if (incircle(c[q.a], c[q.b], c[q.c], c[q.d]) == CircleSide::inside) out.push_back(e);
  }
  return out;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

struct Attempt {
  PointConfiguration positions;
  MarkedTriangulation working;
  HyperbolicStructure target;
  double residual_norm;
  int iterations = 0;
  RealizationStatus status = RealizationStatus::stalled;
  std::vector<WorkingFlip> flips;
  std::string diagnostic;
};

Attempt solve_from(PointConfiguration start, const HyperbolicStructure& target, const RealizationConfig& cfg,
                   const std::vector<Edge>& warm_flips = {}) {
  const int n = start.size();
  Attempt a{start, target.triangulation(), target, 0.0, 0, RealizationStatus::stalled, {}, {}};
  for (const Edge& e : warm_flips) {
    const Quad q = a.working.quad(e);
    a.target = flip_transition(a.target, {e});
    a.working = a.target.triangulation();
    a.flips.push_back({0, e, Edge(q.b, q.d)});
  }
  Eigen::VectorXd x = free_coordinates(start);
  Eigen::VectorXd r = residual(a.positions, a.working, a.target);
  double lambda = cfg.damping;
  std::map<Edge, int> illegal_streak;
  bool last_rejection_degenerate = false;

  const auto flip_working = [&](Edge e, int iteration) {
    const Quad q = a.working.quad(e);
    a.target = flip_transition(a.target, {e});
    a.working = a.target.triangulation();
    a.flips.push_back({iteration, e, Edge(q.b, q.d)});
  };

  for (int it = 0; it < cfg.max_iterations; ++it) {
    a.iterations = it + 1;
    if (r.norm() <= cfg.tolerance) {
      // A fixed point with a folded face is a non-convex pleating of the
      // target; no flip can repair it from here.
      if (!faces_positive(finite_values(a.positions), a.working)) {
        a.diagnostic = "fixed point with a folded working face";
        a.residual_norm = r.norm();
        return a;
      }
      // At a fixed point every working edge must be locally convex; flip the
      // rest immediately and keep iterating against the transported target.
      bool flipped = false;
      for (const Edge& e : locally_illegal(a.positions, a.working)) {
        if (a.working.has_edge(e) && a.working.can_flip(e)) {
          flip_working(e, it);
          flipped = true;
        }
      }
      if (!flipped) break;
      illegal_streak.clear();
      r = residual(a.positions, a.working, a.target);
      continue;
    }
    const Eigen::MatrixXd J = residual_jacobian(a.positions, a.working);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    Eigen::MatrixXd lhs = JtJ;
    lhs.diagonal() += lambda * (JtJ.diagonal().array() + 1e-12).matrix();
    const Eigen::VectorXd step = lhs.ldlt().solve(-g);
    const Eigen::VectorXd xn = x + step;

    bool accept = false;
    std::optional<PointConfiguration> trial;
    try {
      trial.emplace(with_free_coordinates(n, xn));
      last_rejection_degenerate = false;
    } catch (const InvalidConfiguration&) {
      last_rejection_degenerate = true;
    }
    // Faces may fold while the solver travels; convexity is only judged
    // once every working face is positive again.
    Eigen::VectorXd rn;
    if (trial) {
      try {
        rn = residual(*trial, a.working, a.target);
        accept = rn.norm() < r.norm();
      } catch (const DegenerateConfiguration&) {
        last_rejection_degenerate = true;
      }
    }
    if (!accept) {
      lambda *= 10.0;
      if (lambda > 1e16) break;
      continue;
    }
    lambda = std::max(lambda / 10.0, 1e-15);
    x = xn;
    a.positions = *trial;
    r = rn;

    // Hysteresis: an edge is flipped only after failing the local test on
    // consecutive accepted steps.
    if (!faces_positive(finite_values(a.positions), a.working)) {
      illegal_streak.clear();
      continue;
    }
    const auto illegal = locally_illegal(a.positions, a.working);
    std::map<Edge, int> streak;
    for (const Edge& e : illegal) streak[e] = illegal_streak.count(e) ? illegal_streak[e] + 1 : 1;
    illegal_streak = std::move(streak);
    bool flipped = false;
    for (const auto& [e, count] : illegal_streak) {
      if (count >= cfg.flip_hysteresis && a.working.has_edge(e) && a.working.can_flip(e)) {
        flip_working(e, it);
        flipped = true;
      }
    }
    if (flipped) {
      illegal_streak.clear();
      r = residual(a.positions, a.working, a.target);
    }
  }
  a.residual_norm = r.norm();
  if (a.residual_norm > cfg.tolerance) {
    a.status = last_rejection_degenerate ? RealizationStatus::degenerate : RealizationStatus::stalled;
    a.diagnostic = "residual " + std::to_string(a.residual_norm) + " above tolerance";
    return a;
  }
  if (const auto v = global_delaunay_violations(a.positions, a.working); !v.empty()) {
    a.diagnostic = "working triangulation not Delaunay: " + v.front();
    return a;
  }
  // Compare the polyhedron's own metric with the target. The hull may fan
  // merged faces differently from the working triangulation; those
  // diagonals are flat, so position shears on the working triangulation
  // are the same metric in the target's chart.
  try {
    const IdealPolyhedron p = hull(a.positions);
    const bool same = p.triangulation() == a.working;
    const HyperbolicStructure own = same ? metric_of(p) : shears_from_positions(a.positions, a.working);
    const double gap = max_abs(own.coordinates() - a.target.coordinates());
    const double allowed = same ? cfg.tolerance : std::max(cfg.tolerance, 1e-8);
    if (gap > allowed) {
      a.diagnostic = "hull metric differs from target by " + std::to_string(gap);
      return a;
    }
  } catch (const Error& e) {
    a.diagnostic = std::string("hull of solution failed: ") + e.what();
    return a;
  }
  a.status = RealizationStatus::converged;
  return a;
}

}  // namespace

const char* to_string(RealizationStatus s) {
  switch (s) {
    case RealizationStatus::converged:
      return "converged";
    case RealizationStatus::stalled:
      return "stalled";
    case RealizationStatus::degenerate:
      return "degenerate";
  }
  return "?";
}

Eigen::VectorXd free_coordinates(const PointConfiguration& c) {
  Eigen::VectorXd x(2 * (c.size() - kFree));
  for (int v = kFree; v < c.size(); ++v) {
    x(2 * (v - kFree)) = c[v].value().real();
    x(2 * (v - kFree) + 1) = c[v].value().imag();
  }
  return x;
}

PointConfiguration with_free_coordinates(int n, const Eigen::VectorXd& x) {
  std::vector<Complex> z(static_cast<std::size_t>(n));
  z[0] = 0.0;
  z[1] = 1.0;
  for (int v = kFree; v < n; ++v) z[v] = Complex(x(2 * (v - kFree)), x(2 * (v - kFree) + 1));
  return from_values(z);
}

Eigen::VectorXd residual(const PointConfiguration& positions, const MarkedTriangulation& working,
                         const HyperbolicStructure& target_in_working) {
  if (!(target_in_working.triangulation() == working)) {
    throw LabelMismatch("target is not expressed in the working triangulation");
  }
  const auto edges = working.edges();
  Eigen::VectorXd r(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    r(static_cast<Eigen::Index>(i)) = edge_shear(positions, working, edges[i]) - target_in_working.shear(edges[i]);
  }
  return r;
}

Eigen::MatrixXd residual_jacobian(const PointConfiguration& positions, const MarkedTriangulation& working) {
  const auto edges = working.edges();
  const int n = positions.size();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(edges.size()), 2 * (n - kFree));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Quad q = working.quad(edges[i]);
    const int idx[4] = {q.a, q.b, q.c, q.d};
    const auto g = dihedral_log_gradient(positions[q.a], positions[q.b], positions[q.c], positions[q.d]);
    for (int k = 0; k < 4; ++k) {
      if (idx[k] < kFree) continue;
      // d log|f| / dx = Re(f'/f), d log|f| / dy = -Im(f'/f)
      J(static_cast<Eigen::Index>(i), 2 * (idx[k] - kFree)) += g[k].real();
      J(static_cast<Eigen::Index>(i), 2 * (idx[k] - kFree) + 1) -= g[k].imag();
    }
  }
  return J;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_threshold) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double cut = rel_threshold * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > cut ? 1 : 0;
  return rank;
}

PointConfiguration initial_guess(const HyperbolicStructure& target, std::uint64_t seed) {
  const MarkedTriangulation& t = target.triangulation();
  const int n = t.vertex_count();
  // A nonzero seed randomizes the rim spacing and the edge weights; any
  // positive weights still give a counter-clockwise embedding.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto weight = [&]() { return seed == 0 ? 1.0 : std::exp(std::log(4.0) * (2 * unit(rng) - 1)); };

  // The link of infinity runs clockwise in the plane.
  const std::vector<int> rim = t.link(kInfinityVertex);
  const int m = static_cast<int>(rim.size());
  std::vector<double> spacing(static_cast<std::size_t>(m), 1.0);
  if (seed != 0) {
    for (double& g : spacing) g = 0.5 + unit(rng);
  }
  double total = 0;
  for (double g : spacing) total += g;
  std::vector<Complex> z(static_cast<std::size_t>(n));
  double angle = 0;
  for (int j = 0; j < m; ++j) {
    z[rim[j]] = std::polar(1.0, -angle);
    angle += 2.0 * std::numbers::pi * spacing[j] / total;
  }

  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  std::vector<char> fixed(static_cast<std::size_t>(n), 0);
  fixed[kInfinityVertex] = 1;
  for (int v : rim) fixed[v] = 1;
  int interior = 0;
  for (int v = 0; v < n; ++v) {
    if (!fixed[v]) slot[v] = interior++;
  }
  if (interior > 0) {
    std::map<Edge, double> w;
    for (const Edge& e : t.edges()) w[e] = weight();
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(interior, interior);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(interior);
    for (int v = 0; v < n; ++v) {
      if (slot[v] < 0) continue;
      for (int u : t.link(v)) {
        const double wu = w[Edge(u, v)];
        L(slot[v], slot[v]) += wu;
        if (slot[u] >= 0) {
          L(slot[v], slot[u]) -= wu;
        } else {
          b(slot[v]) += wu * z[u];
        }
      }
    }
    const Eigen::VectorXcd sol = L.partialPivLu().solve(b);
    for (int v = 0; v < n; ++v) {
      if (slot[v] >= 0) z[v] = sol(slot[v]);
    }
  }
  // Affine pin: orientation and barycentric averages are preserved.
  const Complex z0 = z[0], z1 = z[1];
  for (int v = 0; v < n; ++v) {
    if (v != kInfinityVertex) z[v] = (z[v] - z0) / (z1 - z0);
  }
  z[0] = 0.0;
  z[1] = 1.0;
  return from_values(z);
}

RealizationResult realize(const RealizationProblem& p) {
  const HyperbolicStructure& target = p.target;
  const int n = target.triangulation().vertex_count();
  if (n < 4) throw TooFewCusps("need at least 4 cusps");
  if (!target.is_complete()) {
    throw IncompleteStructure("incomplete structure: max cusp sum " + std::to_string(max_abs(target.cusp_sums())));
  }
  const RealizationConfig& cfg = p.config;
  RealizationResult best{initial_guess(target, cfg.seed), std::numeric_limits<double>::infinity(), 0, 0, {},
                         RealizationStatus::stalled, target.triangulation(), {}};
  for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
    // Restart seeds are derived from the base seed; attempt 0 uses it as is.
    const std::uint64_t seed = attempt == 0 ? cfg.seed : cfg.seed * 1000003ULL + static_cast<std::uint64_t>(attempt);
    PointConfiguration start = initial_guess(target, seed);
    std::vector<Edge> warm_flips;
    if (cfg.conformal_start) {
      if (auto warm = conformal_layout(target, start)) {
        start = std::move(warm->positions);
        warm_flips = std::move(warm->flips);
      } else {
        best.diagnostics.push_back("attempt " + std::to_string(attempt) + ": no conformal layout, starting from Tutte");
      }
    }
    Attempt a = solve_from(std::move(start), target, cfg, warm_flips);
    best.iterations += a.iterations;
    best.attempts = attempt + 1;
    if (!a.diagnostic.empty()) best.diagnostics.push_back("attempt " + std::to_string(attempt) + ": " + a.diagnostic);
    const bool better = a.status == RealizationStatus::converged || a.residual_norm < best.residual_norm;
    if (better) {
      best.configuration = a.positions;
      best.residual_norm = a.residual_norm;
      best.flip_log = std::move(a.flips);
      best.status = a.status;
      best.working = a.working;
    }
    if (a.status == RealizationStatus::converged) break;
  }
  return best;
}

}  // namespace ideal
