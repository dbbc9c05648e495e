#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "ideal/complex_sphere.hpp"
#include "ideal/errors.hpp"
#include "support.hpp"

using namespace ideal;
using testing_support::kPi;

namespace {

const SpherePoint inf = SpherePoint::infinity();

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// The glossary formula, evaluated directly on finite values.
Complex finite_cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4) {
  return (z1 - z3) * (z2 - z4) / ((z1 - z2) * (z3 - z4));
}

MoebiusMap random_map(std::mt19937_64& rng) {
  for (;;) {
    const Complex a = testing_support::gaussian_point(rng), b = testing_support::gaussian_point(rng);
    const Complex c = testing_support::gaussian_point(rng), d = testing_support::gaussian_point(rng);
    if (std::abs(a * d - b * c) > 0.1) return MoebiusMap(a, b, c, d);
  }
}

}  // namespace

TEST_CASE("sphere points keep infinity as a tag") {
  CHECK(inf.is_infinite());
  CHECK_FALSE(SpherePoint(1e300).is_infinite());
  CHECK_THROWS_AS(SpherePoint(std::nan("")), DegenerateConfiguration);
  CHECK_THROWS_AS(SpherePoint(std::numeric_limits<double>::infinity()), DegenerateConfiguration);
  CHECK_THROWS_AS(inf.value(), DegenerateConfiguration);
  CHECK(inf == SpherePoint::infinity());
  CHECK_FALSE(inf == SpherePoint(0.0));
}

TEST_CASE("chordal distance") {
  CHECK(chordal_distance(SpherePoint(0.0), inf) == doctest::Approx(2.0));
  CHECK(chordal_distance(SpherePoint(1.0), inf) == doctest::Approx(std::sqrt(2.0)));
  CHECK(chordal_distance(SpherePoint(1.0), SpherePoint(-1.0)) == doctest::Approx(2.0));
  CHECK(chordal_distance(inf, inf) == 0.0);
}

TEST_CASE("cross ratio values") {
  CHECK(close(cross_ratio(SpherePoint(2.0), SpherePoint(3.0), SpherePoint(4.0), SpherePoint(5.0)), 4.0, 1e-15));
  const Complex i(0, 1);
  CHECK(close(cross_ratio(SpherePoint(0.0), SpherePoint(1.0), inf, SpherePoint(i)), 1.0 - i, 1e-15));
  CHECK(close(cross_ratio(SpherePoint(0.0), SpherePoint(1.0), SpherePoint(i), inf), i, 1e-15));
  CHECK_THROWS_AS(cross_ratio(SpherePoint(0.0), SpherePoint(0.0), SpherePoint(1.0), inf), DegenerateConfiguration);
  CHECK_THROWS_AS(cross_ratio(inf, SpherePoint(0.0), SpherePoint(1.0), inf), DegenerateConfiguration);
}

TEST_CASE("infinite arguments are the limit of large finite ones") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<Complex, 4> z{};
    for (auto& w : z) w = testing_support::gaussian_point(rng);
    const Complex far = std::polar(1e9, 2 * kPi * trial / 200.0);
    for (int slot = 0; slot < 4; ++slot) {
      std::array<SpherePoint, 4> p{z[0], z[1], z[2], z[3]};
      std::array<Complex, 4> q = z;
      p[slot] = inf;
      q[slot] = far;
      const Complex exact = cross_ratio(p[0], p[1], p[2], p[3]);
      CHECK(close(exact, finite_cross_ratio(q[0], q[1], q[2], q[3]), 1e-7));
    }
  }
}

TEST_CASE("Moebius maps") {
  const Complex i(0, 1);
  const MoebiusMap id = moebius_through(SpherePoint(0.0), SpherePoint(1.0), inf);
  for (Complex z : {Complex(0.3, -2), i, Complex(5, 5)}) CHECK(close(apply(id, SpherePoint(z)).value(), z, 1e-15));
  CHECK(apply(id, inf).is_infinite());

  const MoebiusMap flip = moebius_through(SpherePoint(1.0), SpherePoint(0.0), inf);
  for (Complex z : {Complex(0.3, -2), i, Complex(5, 5)}) CHECK(close(apply(flip, SpherePoint(z)).value(), 1.0 - z, 1e-15));

  const MoebiusMap recip(0, 1, 1, 0);
  CHECK(apply(recip, SpherePoint(0.0)).is_infinite());
  CHECK(apply(recip, inf).value() == Complex(0, 0));

  CHECK_THROWS_AS(MoebiusMap(1, 2, 2, 4), DegenerateConfiguration);
  CHECK_THROWS_AS(moebius_through(SpherePoint(1.0), SpherePoint(1.0), inf), DegenerateConfiguration);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::array<SpherePoint, 3> p{testing_support::gaussian_point(rng), testing_support::gaussian_point(rng),
                                 testing_support::gaussian_point(rng)};
    if (trial % 4 == 1) p[trial % 3] = inf;
    const MoebiusMap m = moebius_through(p[0], p[1], p[2]);
    CHECK(std::abs(apply(m, p[0]).value()) < 1e-9);
    CHECK(close(apply(m, p[1]).value(), 1.0, 1e-9));
    CHECK(apply(m, p[2]).is_infinite());
    // inverse and composition
    const SpherePoint z = testing_support::gaussian_point(rng);
    CHECK(close(apply(m.inverse(), apply(m, z)).value(), z.value(), 1e-9));
    const MoebiusMap k = random_map(rng);
    CHECK(close(apply(k * m, z).value(), apply(k, apply(m, z)).value(), 1e-9));
  }
}

TEST_CASE("cross ratio is Moebius invariant") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<SpherePoint, 4> z{testing_support::gaussian_point(rng), testing_support::gaussian_point(rng),
                                 testing_support::gaussian_point(rng), testing_support::gaussian_point(rng)};
    if (trial % 5 == 0) z[trial % 4] = inf;
    const MoebiusMap m = random_map(rng);
    const Complex before = cross_ratio(z[0], z[1], z[2], z[3]);
    const Complex after = cross_ratio(apply(m, z[0]), apply(m, z[1]), apply(m, z[2]), apply(m, z[3]));
    CHECK(close(after, before, 1e-9));
  }
}

TEST_CASE("permuting arguments acts by the six-element group") {
  std::mt19937_64 rng(8);
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    // Which orbit element a permutation produces must not depend on the tuple.
    int which = -1;
    for (int trial = 0; trial < 50; ++trial) {
      std::array<SpherePoint, 4> z{testing_support::gaussian_point(rng), testing_support::gaussian_point(rng),
                                   testing_support::gaussian_point(rng), testing_support::gaussian_point(rng)};
      const Complex w = cross_ratio(z[0], z[1], z[2], z[3]);
      const std::array<Complex, 6> orbit{w, 1.0 - w, 1.0 / w, 1.0 / (1.0 - w), (w - 1.0) / w, w / (w - 1.0)};
      const Complex v = cross_ratio(z[perm[0]], z[perm[1]], z[perm[2]], z[perm[3]]);
      int hit = -1;
      for (int k = 0; k < 6; ++k) {
        if (close(v, orbit[k], 1e-9)) hit = k;
      }
      REQUIRE(hit >= 0);
      if (which < 0) which = hit;
      CHECK(hit == which);
    }
    if (perm == std::array<int, 4>{0, 1, 3, 2}) CHECK(which == 1);  // w -> 1 - w
    if (perm == std::array<int, 4>{0, 2, 1, 3}) CHECK(which == 2);  // w -> 1 / w
    if (perm == std::array<int, 4>{0, 1, 2, 3}) CHECK(which == 0);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("horocyclic gauge and vertical distance") {
  CHECK(horocyclic_gauge(1.0) == 1.0);
  CHECK(horocyclic_gauge(2.0) == 0.5);
  CHECK_THROWS_AS(horocyclic_gauge(0.0), InvalidHeight);
  CHECK_THROWS_AS(horocyclic_gauge(-1.0), InvalidHeight);
  CHECK(vertical_distance(1.0, 1.0) == 0.0);
  CHECK(vertical_distance(1.0, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(vertical_distance(0.0, 1.0), InvalidHeight);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double y1 = u(rng), y2 = u(rng);
    CHECK(vertical_distance(y1, y2) == vertical_distance(y2, y1));
    const double via_gauge = std::abs(std::log(horocyclic_gauge(y1) / horocyclic_gauge(y2)));
    CHECK(via_gauge == doctest::Approx(vertical_distance(y1, y2)).epsilon(1e-12));
  }
}

TEST_CASE("quad shear and the dihedral cross ratio") {
  CHECK(quad_shear(inf, SpherePoint(1.0), SpherePoint(0.0), SpherePoint(2.0)) == doctest::Approx(std::log(2.0)));
  const SpherePoint e3 = std::polar(1.0, kPi / 3);
  CHECK(std::abs(quad_shear(inf, SpherePoint(1.0), SpherePoint(0.0), e3)) < 1e-15);

  for (Complex z : {Complex(2, 0), Complex(0.3, 1.7), std::polar(1.0, kPi / 3)}) {
    CHECK(close(dihedral_crossratio(inf, SpherePoint(1.0), SpherePoint(0.0), SpherePoint(z)), z, 1e-15));
  }
  const Complex c = dihedral_crossratio(inf, SpherePoint(1.0), SpherePoint(0.0), e3);
  CHECK(std::arg(c) == doctest::Approx(kPi / 3).epsilon(1e-14));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<SpherePoint, 4> p{testing_support::gaussian_point(rng), testing_support::gaussian_point(rng),
                                 testing_support::gaussian_point(rng), testing_support::gaussian_point(rng)};
    if (trial % 3 == 0) p[trial % 4] = inf;
    const double s = quad_shear(p[0], p[1], p[2], p[3]);
    CHECK(std::abs(s - std::log(std::abs(dihedral_crossratio(p[0], p[1], p[2], p[3])))) <= 1e-12 * std::max(1.0, std::abs(s)));
    const MoebiusMap m = random_map(rng);
    CHECK(std::abs(quad_shear(apply(m, p[0]), apply(m, p[1]), apply(m, p[2]), apply(m, p[3])) - s) < 1e-9);
  }
}

TEST_CASE("dihedral argument is the sum of opposite inscribed angles") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto q = testing_support::random_convex_quad(rng);
    const Complex c = dihedral_crossratio(SpherePoint(q[0]), SpherePoint(q[1]), SpherePoint(q[2]), SpherePoint(q[3]));
    const double inscribed = testing_support::cosine_angle(q[1], q[0], q[2]) + testing_support::cosine_angle(q[3], q[0], q[2]);
    // Equal modulo 2 pi; the principal value is positive exactly when the
    // quad is locally Delaunay.
    const double gap = std::remainder(std::arg(c) - inscribed, 2 * kPi);
    CHECK(std::abs(gap) < 1e-9);
    if (inscribed < kPi) CHECK(std::arg(c) > 0);
  }
}

TEST_CASE("log-gradient matches central differences") {
  std::mt19937_64 rng(12);
  const double h = 1e-6;
  for (int trial = 0; trial < 200; ++trial) {
    std::array<Complex, 4> z{};
    for (auto& w : z) w = testing_support::gaussian_point(rng);
    const auto f = [&](const std::array<Complex, 4>& p) {
      return std::log(std::abs(dihedral_crossratio(SpherePoint(p[0]), SpherePoint(p[1]), SpherePoint(p[2]), SpherePoint(p[3]))));
    };
    const auto g = dihedral_log_gradient(SpherePoint(z[0]), SpherePoint(z[1]), SpherePoint(z[2]), SpherePoint(z[3]));
    for (int k = 0; k < 4; ++k) {
      for (const Complex dir : {Complex(1, 0), Complex(0, 1)}) {
        auto plus = z, minus = z;
        plus[k] += h * dir;
        minus[k] -= h * dir;
        const double fd = (f(plus) - f(minus)) / (2 * h);
        // d log|f| along dir = Re(g * dir)
        const double analytic = (g[k] * dir).real();
        CHECK(std::abs(fd - analytic) <= 1e-6 * std::max(1.0, std::abs(analytic)));
      }
    }
  }
}
