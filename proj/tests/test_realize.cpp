#include <doctest.h>

#include <cmath>
#include <random>

#include "ideal/errors.hpp"
#include "ideal/realize.hpp"
#include "support.hpp"

using namespace ideal;
using testing_support::kPi;

namespace {

double position_gap(const PointConfiguration& a, const PointConfiguration& b) {
  double worst = 0;
  for (int i = 0; i < a.size(); ++i) {
    if (a[i].is_infinite() || b[i].is_infinite()) {
      if (a[i].is_infinite() != b[i].is_infinite()) return INFINITY;
      continue;
    }
    worst = std::max(worst, std::abs(a[i].value() - b[i].value()));
  }
  return worst;
}

RealizationResult solve(const HyperbolicStructure& target, std::uint64_t seed = 0) {
  RealizationConfig config;
  config.seed = seed;
  return realize({target, config});
}

}  // namespace

TEST_CASE("regular tetrahedron from zero shears") {
  const auto target = HyperbolicStructure::zero(MarkedTriangulation::tetrahedron());
  const PointConfiguration exact({Complex(0, 0), Complex(1, 0), SpherePoint::infinity(), std::polar(1.0, kPi / 3)});
  CHECK(residual(exact, target.triangulation(), target).norm() <= 1e-14);

  const auto r = solve(target);
  CHECK(r.status == RealizationStatus::converged);
  CHECK(r.residual_norm <= 1e-10);
  CHECK(std::abs(r.configuration[3].value() - std::polar(1.0, kPi / 3)) <= 1e-9);
  CHECK(std::string(to_string(r.status)) == "converged");
}

TEST_CASE("residual jacobian against finite differences") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + trial % 5;
    const auto cfg = testing_support::random_configuration(n, rng);
    const auto t = testing_support::random_triangulation(n, rng, 40);
    const auto target = HyperbolicStructure::zero(t);
    const Eigen::MatrixXd jac = residual_jacobian(cfg, t);
    const Eigen::VectorXd x = free_coordinates(cfg);
    REQUIRE(jac.cols() == x.size());
    REQUIRE(jac.rows() == t.edge_count());
    const double step = 1e-6;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      Eigen::VectorXd plus = x, minus = x;
      plus(j) += step;
      minus(j) -= step;
      const Eigen::VectorXd fd = (residual(with_free_coordinates(n, plus), t, target) -
                                  residual(with_free_coordinates(n, minus), t, target)) /
                                 (2 * step);
      const double scale = std::max(1.0, jac.col(j).cwiseAbs().maxCoeff());
      CHECK((fd - jac.col(j)).cwiseAbs().maxCoeff() <= 1e-6 * scale);
    }
  }
}

TEST_CASE("free coordinates round trip") {
  std::mt19937_64 rng(18);
  const auto cfg = testing_support::random_configuration(7, rng);
  const Eigen::VectorXd x = free_coordinates(cfg);
  CHECK(x.size() == 8);
  CHECK(position_gap(with_free_coordinates(7, x), cfg) == 0.0);
}

TEST_CASE("initial guess") {
  std::mt19937_64 rng(19);
  for (int n = 4; n <= 10; ++n) {
    const auto t = testing_support::random_triangulation(n, rng);
    const auto target = HyperbolicStructure::zero(t);
    const auto g0 = initial_guess(target);
    const auto g1 = initial_guess(target, 1);
    CHECK(g0.is_pinned());
    CHECK(g1.is_pinned());
    CHECK(position_gap(g0, initial_guess(target)) == 0.0);
    if (n > 4) CHECK(position_gap(g0, g1) > 0.0);
    // Every finite face is counter-clockwise in the embedding.
    for (const auto& g : {g0, g1}) {
      for (const Face& f : t.faces()) {
        if (f[0] == kInfinityVertex || f[1] == kInfinityVertex || f[2] == kInfinityVertex) continue;
        const Complex a = g[f[0]].value(), b = g[f[1]].value(), c = g[f[2]].value();
        CHECK(testing_support::cross(b - a, c - a) > 0);
      }
    }
  }
  // With three neighbours of infinity the free vertex is their barycentre.
  const auto tet = initial_guess(HyperbolicStructure::zero(MarkedTriangulation::tetrahedron()));
  const Complex z = tet[3].value();
  CHECK(z.imag() != 0.0);
  CHECK(std::abs(z - Complex(0.5, z.imag())) <= 1e-12);
}

TEST_CASE("conformal layout recovers positions") {
  std::mt19937_64 rng(22);
  for (int n = 4; n <= 12; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto cfg = testing_support::random_configuration(n, rng);
      const auto target = metric_of(hull(cfg));
      const auto layout = conformal_layout(target, initial_guess(target, static_cast<std::uint64_t>(trial)));
      REQUIRE(layout.has_value());
      CHECK(layout->flips.empty());
      CHECK(layout->triangulation == target.triangulation());
      CHECK(position_gap(layout->positions, cfg) <= 1e-9);
    }
  }
  // One flip away: the solve flips its way back to the hull triangulation.
  const auto cfg = testing_support::random_configuration(8, rng);
  const auto own = metric_of(hull(cfg));
  for (const Edge& e : own.triangulation().edges()) {
    if (!own.triangulation().can_flip(e) || e.u == kInfinityVertex || e.v == kInfinityVertex) continue;
    const auto layout = conformal_layout(flip_transition(own, {e}), initial_guess(own));
    REQUIRE(layout.has_value());
    CHECK_FALSE(layout->flips.empty());
    CHECK(layout->triangulation == own.triangulation());
    CHECK(position_gap(layout->positions, cfg) <= 1e-9);
  }
}

TEST_CASE("round trips from random polyhedra") {
  std::mt19937_64 rng(20);
  for (int n = 4; n <= 10; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto cfg = testing_support::random_configuration(n, rng);
      const auto target = metric_of(hull(cfg));
      CHECK(residual(cfg, target.triangulation(), target).norm() <= 1e-12);

      const auto a = solve(target, 0);
      const auto b = solve(target, 7);
      REQUIRE(a.status == RealizationStatus::converged);
      REQUIRE(b.status == RealizationStatus::converged);
      CHECK(a.residual_norm <= 1e-10);
      CHECK(position_gap(a.configuration, cfg) <= 1e-6);
      CHECK(position_gap(a.configuration, b.configuration) <= 1e-6);
      CHECK(numerical_rank(residual_jacobian(a.configuration, a.working)) == chart_dimension(n));
    }
  }
}

TEST_CASE("targets in non-Delaunay charts") {
  std::mt19937_64 rng(21);
  int flipped = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6 + trial % 3;
    const auto cfg = testing_support::random_configuration(n, rng);
    const auto own = metric_of(hull(cfg));
    // One flip away from the Delaunay triangulation.
    for (const Edge& e : own.triangulation().edges()) {
      if (!own.triangulation().can_flip(e)) continue;
      const auto target = flip_transition(own, {e});
      const auto r = solve(target);
      CHECK(r.status == RealizationStatus::converged);
      CHECK(position_gap(r.configuration, cfg) <= 1e-6);
      flipped += !r.flip_log.empty();
      break;
    }
  }
  CHECK(flipped > 0);
}

TEST_CASE("incomplete targets are refused") {
  auto target = HyperbolicStructure::zero(MarkedTriangulation::bipyramid(5));
  target.set_shear(Edge(2, 3), 0.3);
  CHECK_THROWS_AS(solve(target), IncompleteStructure);
  CHECK_THROWS_AS(residual(initial_guess(HyperbolicStructure::zero(MarkedTriangulation::bipyramid(6))),
                           MarkedTriangulation::bipyramid(6), target),
                  LabelMismatch);
}
