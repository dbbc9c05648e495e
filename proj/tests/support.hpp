#pragma once

// Shared fixtures for the test binaries: seeded random configurations and
// small geometric helpers that do not go through the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "ideal/ideal_hull.hpp"

namespace testing_support {

using ideal::Complex;
using ideal::SpherePoint;

constexpr double kPi = std::numbers::pi;

inline Complex gaussian_point(std::mt19937_64& rng, double sigma = 1.0) {
  std::normal_distribution<double> n(0.0, sigma);
  const double x = n(rng);
  return {x, n(rng)};
}

/// v1 = 0, v2 = 1, v3 = inf and n - 3 Gaussian points, with every pair of
/// finite points at least min_gap apart so the geometry stays well scaled.
inline ideal::PointConfiguration random_configuration(int n, std::mt19937_64& rng, double min_gap = 0.05) {
  std::vector<Complex> finite{Complex(0, 0), Complex(1, 0)};
  while (static_cast<int>(finite.size()) < n - 1) {
    const Complex z = gaussian_point(rng);
    bool ok = true;
    for (const Complex& w : finite) ok = ok && std::abs(z - w) >= min_gap;
    if (ok) finite.push_back(z);
  }
  std::vector<SpherePoint> pts{finite[0], finite[1], SpherePoint::infinity()};
  for (std::size_t i = 2; i < finite.size(); ++i) pts.emplace_back(finite[i]);
  return ideal::PointConfiguration(std::move(pts));
}

/// Unsigned angle at p via the law of cosines (no atan2).
inline double cosine_angle(Complex p, Complex q, Complex r) {
  const double a = std::abs(q - p), b = std::abs(r - p), c = std::abs(q - r);
  const double cosv = std::clamp((a * a + b * b - c * c) / (2 * a * b), -1.0, 1.0);
  return std::acos(cosv);
}

inline double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

/// Counter-clockwise strictly convex quadrilateral A, B, C, D.
inline std::array<Complex, 4> random_convex_quad(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::array<double, 4> t{};
    for (double& x : t) x = 2 * kPi * u(rng);
    std::sort(t.begin(), t.end());
    std::array<Complex, 4> q{};
    for (int i = 0; i < 4; ++i) q[i] = std::polar(0.6 + 0.8 * u(rng), t[i]) + Complex(u(rng), u(rng));
    bool convex = true;
    for (int i = 0; i < 4; ++i) {
      const Complex a = q[i], b = q[(i + 1) % 4], c = q[(i + 2) % 4];
      convex = convex && cross(b - a, c - b) > 0.05;
    }
    if (convex) return q;
  }
}

}  // namespace testing_support

namespace testing_support {

/// Random walk of legal flips from the canonical triangulation.
inline ideal::MarkedTriangulation random_triangulation(int n, std::mt19937_64& rng, int steps = 200) {
  ideal::MarkedTriangulation t = ideal::canonical_triangulation(n);
  for (int s = 0; s < steps; ++s) {
    const auto edges = t.edges();
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const ideal::Edge e = edges[pick(rng)];
    if (t.can_flip(e)) t.flip({e});
  }
  return t;
}

}  // namespace testing_support

namespace testing_support {

/// Five flips around the pentagon formed by edge a and the quad side from
/// a's first corner to its second; returns to the start triangulation.
/// Empty when some flip in the cycle is not allowed.
inline std::vector<ideal::FlipMove> pentagon_loop(const ideal::MarkedTriangulation& t, ideal::Edge a) {
  if (!t.can_flip(a)) return {};
  const ideal::Quad q = t.quad(a);
  ideal::MarkedTriangulation u = t;
  ideal::Edge x = a, y(q.a, q.b);
  std::vector<ideal::FlipMove> moves;
  for (int k = 0; k < 5; ++k) {
    if (!u.can_flip(x)) return {};
    const ideal::Edge added = u.flip({x});
    moves.push_back({x});
    x = y;
    y = added;
  }
  return u == t ? moves : std::vector<ideal::FlipMove>{};
}

/// Two flippable edges whose quads share no edge; flipping them in either
/// order commutes.
inline std::optional<std::pair<ideal::Edge, ideal::Edge>> disjoint_flips(const ideal::MarkedTriangulation& t) {
  const auto quad_edges = [&](ideal::Edge e) {
    const ideal::Quad q = t.quad(e);
    return std::set<ideal::Edge>{e, {q.a, q.b}, {q.b, q.c}, {q.c, q.d}, {q.d, q.a}};
  };
  const auto edges = t.edges();
  for (const ideal::Edge& e : edges) {
    if (!t.can_flip(e)) continue;
    const auto qe = quad_edges(e);
    for (const ideal::Edge& f : edges) {
      if (!(e < f) || !t.can_flip(f)) continue;
      const auto qf = quad_edges(f);
      bool shared = false;
      for (const ideal::Edge& g : qf) shared = shared || qe.count(g);
      if (shared) continue;
      ideal::MarkedTriangulation u = t;
      u.flip({e});
      if (u.can_flip(f)) return std::make_pair(e, f);
    }
  }
  return std::nullopt;
}

}  // namespace testing_support
