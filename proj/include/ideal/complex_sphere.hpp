#pragma once

// Arithmetic on the Riemann sphere: points, Moebius maps, cross-ratios and
// the elementary hyperbolic-plane quantities built on them.
//
// The point at infinity is a tag, never a large number. Every formula that
// can see infinity resolves it by cancelling the two difference factors that
// contain it.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <ostream>
#include <utility>

#include "ideal/errors.hpp"
#include "ideal/tolerances.hpp"

namespace ideal {

template <typename Scalar>
class BasicSpherePoint {
 public:
  using Complex = std::complex<Scalar>;

  BasicSpherePoint() = default;
  BasicSpherePoint(Complex z) : value_(z) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DegenerateConfiguration("sphere point must be finite or the tagged infinity");
    }
  }
  BasicSpherePoint(Scalar re, Scalar im = Scalar(0)) : BasicSpherePoint(Complex(re, im)) {}  // NOLINT

  static BasicSpherePoint infinity() {
    BasicSpherePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Finite value; throws for the point at infinity.
  Complex value() const {
    if (infinite_) throw DegenerateConfiguration("point at infinity has no finite value");
    return value_;
  }

  friend bool operator==(const BasicSpherePoint& a, const BasicSpherePoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicSpherePoint& p) {
    if (p.infinite_) return os << "inf";
    return os << p.value_;
  }

 private:
  Complex value_{0, 0};
  bool infinite_ = false;
};

using SpherePoint = BasicSpherePoint<double>;
using Complex = std::complex<double>;

/// Chordal distance on the unit sphere (values in [0, 2]).
template <typename Scalar>
Scalar chordal_distance(const BasicSpherePoint<Scalar>& p, const BasicSpherePoint<Scalar>& q) {
  if (p.is_infinite() && q.is_infinite()) return Scalar(0);
  if (p.is_infinite() || q.is_infinite()) {
    const auto z = p.is_infinite() ? q.value() : p.value();
    return Scalar(2) / std::sqrt(Scalar(1) + std::norm(z));
  }
  const auto z = p.value();
  const auto w = q.value();
  return Scalar(2) * std::abs(z - w) /
         std::sqrt((Scalar(1) + std::norm(z)) * (Scalar(1) + std::norm(w)));
}

namespace detail {

// Ratio (a0-b0)(a1-b1) / ((c0-d0)(c1-d1)) where one point may be infinite.
// The infinite point occurs in exactly one numerator and one denominator
// factor; those two factors tend to +-1 and are dropped.
template <typename Scalar>
std::complex<Scalar> difference_ratio(
    const std::array<std::pair<BasicSpherePoint<Scalar>, BasicSpherePoint<Scalar>>, 2>& num,
    const std::array<std::pair<BasicSpherePoint<Scalar>, BasicSpherePoint<Scalar>>, 2>& den) {
  std::complex<Scalar> top(1), bottom(1);
  Scalar sign(1);
  for (const auto& [a, b] : num) {
    if (a.is_infinite()) continue;
    if (b.is_infinite()) {
      sign = -sign;
      continue;
    }
    top *= a.value() - b.value();
  }
  for (const auto& [a, b] : den) {
    if (a.is_infinite()) continue;
    if (b.is_infinite()) {
      sign = -sign;
      continue;
    }
    bottom *= a.value() - b.value();
  }
  return sign * top / bottom;
}

template <typename Scalar>
void require_distinct(std::initializer_list<BasicSpherePoint<Scalar>> pts) {
  int infinities = 0;
  for (auto it = pts.begin(); it != pts.end(); ++it) {
    if (it->is_infinite()) ++infinities;
    for (auto jt = std::next(it); jt != pts.end(); ++jt) {
      if (*it == *jt) throw DegenerateConfiguration("coincident points");
    }
  }
  if (infinities > 1) throw DegenerateConfiguration("coincident points at infinity");
}

}  // namespace detail

/// [z1, z2, z3, z4] = (z1-z3)(z2-z4) / ((z1-z2)(z3-z4)).
template <typename Scalar>
std::complex<Scalar> cross_ratio(const BasicSpherePoint<Scalar>& z1, const BasicSpherePoint<Scalar>& z2,
                                 const BasicSpherePoint<Scalar>& z3, const BasicSpherePoint<Scalar>& z4) {
  detail::require_distinct({z1, z2, z3, z4});
  return detail::difference_ratio<Scalar>({{{z1, z3}, {z2, z4}}}, {{{z1, z2}, {z3, z4}}});
}

/// Cross-ratio whose argument is the dihedral angle along AC and whose
/// log-modulus is the shear along AC, for faces ABC and CDA (both
/// positively oriented) glued along AC. Equals [B, C, A, D].
template <typename Scalar>
std::complex<Scalar> dihedral_crossratio(const BasicSpherePoint<Scalar>& A, const BasicSpherePoint<Scalar>& B,
                                         const BasicSpherePoint<Scalar>& C, const BasicSpherePoint<Scalar>& D) {
  return cross_ratio(B, C, A, D);
}

/// Shear between triangles ABC and ADC along AC: log |[C, B, D, A]|.
template <typename Scalar>
Scalar quad_shear(const BasicSpherePoint<Scalar>& A, const BasicSpherePoint<Scalar>& B,
                  const BasicSpherePoint<Scalar>& C, const BasicSpherePoint<Scalar>& D) {
  return std::log(std::abs(cross_ratio(C, B, D, A)));
}

/// Complex derivatives d log(c)/dz for c = dihedral_crossratio(A, B, C, D),
/// one entry per argument. Infinite arguments get 0. Since c is holomorphic,
/// d log|c| / dx = Re(g) and d log|c| / dy = -Im(g).
template <typename Scalar>
std::array<std::complex<Scalar>, 4> dihedral_log_gradient(const BasicSpherePoint<Scalar>& A,
                                                          const BasicSpherePoint<Scalar>& B,
                                                          const BasicSpherePoint<Scalar>& C,
                                                          const BasicSpherePoint<Scalar>& D) {
  detail::require_distinct({A, B, C, D});
  const auto inv = [](const BasicSpherePoint<Scalar>& p, const BasicSpherePoint<Scalar>& q) {
    if (p.is_infinite() || q.is_infinite()) return std::complex<Scalar>(0);
    return std::complex<Scalar>(1) / (p.value() - q.value());
  };
  // log c = log(B-A) + log(C-D) - log(B-C) - log(A-D)
  std::array<std::complex<Scalar>, 4> g{
      -inv(B, A) - inv(A, D),
      inv(B, A) - inv(B, C),
      inv(C, D) + inv(B, C),
      -inv(C, D) + inv(A, D),
  };
  if (A.is_infinite()) g[0] = 0;
  if (B.is_infinite()) g[1] = 0;
  if (C.is_infinite()) g[2] = 0;
  if (D.is_infinite()) g[3] = 0;
  return g;
}

/// z -> (a z + b) / (c z + d), stored as a 2x2 complex matrix acting on
/// homogeneous coordinates.
template <typename Scalar>
class BasicMoebiusMap {
 public:
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, 2, 2>;

  BasicMoebiusMap() : m_(Matrix::Identity()) {}
  BasicMoebiusMap(Complex a, Complex b, Complex c, Complex d) {
    m_ << a, b, c, d;
    check();
  }
  explicit BasicMoebiusMap(const Matrix& m) : m_(m) { check(); }

  static BasicMoebiusMap identity() { return BasicMoebiusMap(); }

  const Matrix& matrix() const { return m_; }
  Complex a() const { return m_(0, 0); }
  Complex b() const { return m_(0, 1); }
  Complex c() const { return m_(1, 0); }
  Complex d() const { return m_(1, 1); }

  BasicSpherePoint<Scalar> operator()(const BasicSpherePoint<Scalar>& p) const {
    Eigen::Matrix<Complex, 2, 1> h;
    if (p.is_infinite()) {
      h << Complex(1), Complex(0);
    } else {
      h << p.value(), Complex(1);
    }
    const Eigen::Matrix<Complex, 2, 1> r = m_ * h;
    if (r(1) == Complex(0)) return BasicSpherePoint<Scalar>::infinity();
    return BasicSpherePoint<Scalar>(r(0) / r(1));
  }

  BasicMoebiusMap operator*(const BasicMoebiusMap& other) const { return BasicMoebiusMap(Matrix(m_ * other.m_)); }

  BasicMoebiusMap inverse() const {
    Matrix inv;
    inv << d(), -b(), -c(), a();
    return BasicMoebiusMap(inv);
  }

 private:
  void check() const {
    const Scalar scale = m_.cwiseAbs().maxCoeff();
    const Complex det = m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0);
    if (!(std::abs(det) > Scalar(kDeterminantTolerance) * scale * scale)) {
      throw DegenerateConfiguration("Moebius map with vanishing determinant");
    }
  }

  Matrix m_;
};

using MoebiusMap = BasicMoebiusMap<double>;

template <typename Scalar>
BasicSpherePoint<Scalar> apply(const BasicMoebiusMap<Scalar>& m, const BasicSpherePoint<Scalar>& p) {
  return m(p);
}

/// The Moebius map sending p1 -> 0, p2 -> 1, p3 -> infinity.
template <typename Scalar>
BasicMoebiusMap<Scalar> moebius_through(const BasicSpherePoint<Scalar>& p1, const BasicSpherePoint<Scalar>& p2,
                                        const BasicSpherePoint<Scalar>& p3) {
  detail::require_distinct({p1, p2, p3});
  using C = std::complex<Scalar>;
  // z -> (z - p1)(p2 - p3) / ((z - p3)(p2 - p1)), with infinite factors dropped.
  if (p1.is_infinite()) {
    const C k = p2.value() - p3.value();
    return BasicMoebiusMap<Scalar>(C(0), k, C(1), -p3.value());
  }
  if (p2.is_infinite()) {
    return BasicMoebiusMap<Scalar>(C(1), -p1.value(), C(1), -p3.value());
  }
  if (p3.is_infinite()) {
    return BasicMoebiusMap<Scalar>(C(1), -p1.value(), C(0), p2.value() - p1.value());
  }
  const C k = p2.value() - p3.value();
  const C l = p2.value() - p1.value();
  return BasicMoebiusMap<Scalar>(k, -p1.value() * k, l, -p3.value() * l);
}

/// Horocyclic gauge of the point x + iy on the geodesic from 0 to infinity,
/// measured from the horocycle at infinity.
template <typename Scalar>
Scalar horocyclic_gauge(Scalar y) {
  if (!(y > Scalar(0))) throw InvalidHeight("height must be positive");
  return Scalar(1) / y;
}

/// Hyperbolic distance between x + i y1 and x + i y2.
template <typename Scalar>
Scalar vertical_distance(Scalar y1, Scalar y2) {
  if (!(y1 > Scalar(0)) || !(y2 > Scalar(0))) throw InvalidHeight("height must be positive");
  return std::log(std::max(y1, y2) / std::min(y1, y2));
}

}  // namespace ideal
