#pragma once

/// Forward-mode derivative scalar carrying value, gradient, Hessian and
/// third derivatives with respect to up to three seeded directions.
/// Truncated Taylor arithmetic; composition satisfies the chain rule to
/// third order exactly, so chart metrics differentiate to rounding with no
/// finite-difference noise.
///
/// Third order is the ceiling: the Cotton tensor needs three metric
/// derivatives and nothing else in the library needs more.  Curvature
/// components are assembled direction-pair by direction-pair (k <= 3
/// simultaneous seeds) instead of a full multivariate Taylor expansion.

#include <array>
#include <cmath>
#include <stdexcept>

namespace qcr {

struct Jet3 {
  static constexpr int kMax = 3;

  double v{0};
  std::array<double, kMax> d1{};
  std::array<std::array<double, kMax>, kMax> d2{};
  std::array<std::array<std::array<double, kMax>, kMax>, kMax> d3{};

  Jet3() = default;
  Jet3(double value) : v(value) {}  // NOLINT(google-explicit-constructor)

  /// Coordinate seed: value with unit first derivative in direction `dir`.
  static Jet3 seed(double value, int dir) {
    Jet3 j(value);
    j.d1[dir] = 1.0;
    return j;
  }

  Jet3 operator-() const {
    Jet3 r;
    r.v = -v;
    for (int a = 0; a < kMax; ++a) {
      r.d1[a] = -d1[a];
      for (int b = 0; b < kMax; ++b) {
        r.d2[a][b] = -d2[a][b];
        for (int c = 0; c < kMax; ++c) r.d3[a][b][c] = -d3[a][b][c];
      }
    }
    return r;
  }

  Jet3 operator+(const Jet3& o) const {
    Jet3 r;
    r.v = v + o.v;
    for (int a = 0; a < kMax; ++a) {
      r.d1[a] = d1[a] + o.d1[a];
      for (int b = 0; b < kMax; ++b) {
        r.d2[a][b] = d2[a][b] + o.d2[a][b];
        for (int c = 0; c < kMax; ++c) r.d3[a][b][c] = d3[a][b][c] + o.d3[a][b][c];
      }
    }
    return r;
  }
  Jet3 operator-(const Jet3& o) const { return *this + (-o); }

  Jet3 operator*(const Jet3& o) const {
    Jet3 r;
    r.v = v * o.v;
    for (int a = 0; a < kMax; ++a)
      r.d1[a] = d1[a] * o.v + v * o.d1[a];
    for (int a = 0; a < kMax; ++a)
      for (int b = 0; b < kMax; ++b)
        r.d2[a][b] = d2[a][b] * o.v + d1[a] * o.d1[b] + d1[b] * o.d1[a] + v * o.d2[a][b];
    for (int a = 0; a < kMax; ++a)
      for (int b = 0; b < kMax; ++b)
        for (int c = 0; c < kMax; ++c)
          r.d3[a][b][c] = d3[a][b][c] * o.v
                        + d2[a][b] * o.d1[c] + d2[a][c] * o.d1[b] + d2[b][c] * o.d1[a]
                        + d1[a] * o.d2[b][c] + d1[b] * o.d2[a][c] + d1[c] * o.d2[a][b]
                        + v * o.d3[a][b][c];
    return r;
  }

  Jet3& operator+=(const Jet3& o) { return *this = *this + o; }
  Jet3& operator-=(const Jet3& o) { return *this = *this - o; }
  Jet3& operator*=(const Jet3& o) { return *this = *this * o; }

  /// Composition with a scalar function given its derivatives at v
  /// (third-order Faa di Bruno).
  Jet3 compose(double f0, double f1, double f2, double f3) const {
    Jet3 r;
    r.v = f0;
    for (int a = 0; a < kMax; ++a) r.d1[a] = f1 * d1[a];
    for (int a = 0; a < kMax; ++a)
      for (int b = 0; b < kMax; ++b)
        r.d2[a][b] = f2 * d1[a] * d1[b] + f1 * d2[a][b];
    for (int a = 0; a < kMax; ++a)
      for (int b = 0; b < kMax; ++b)
        for (int c = 0; c < kMax; ++c)
          r.d3[a][b][c] = f3 * d1[a] * d1[b] * d1[c]
                        + f2 * (d1[a] * d2[b][c] + d1[b] * d2[a][c] + d1[c] * d2[a][b])
                        + f1 * d3[a][b][c];
    return r;
  }
};

inline Jet3 operator*(double s, const Jet3& j) { return Jet3(s) * j; }
inline Jet3 operator+(double s, const Jet3& j) { return Jet3(s) + j; }
inline Jet3 operator-(double s, const Jet3& j) { return Jet3(s) - j; }

inline Jet3 reciprocal(const Jet3& u) {
  if (std::abs(u.v) <= 1e-12) throw std::domain_error("Jet3: division by near-zero value");
  const double iv = 1.0 / u.v;
  return u.compose(iv, -iv * iv, 2.0 * iv * iv * iv, -6.0 * iv * iv * iv * iv);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }
inline Jet3 operator/(const Jet3& a, double s) { return a * Jet3(1.0 / s); }

inline Jet3 sqrt(const Jet3& u) {
  if (u.v <= 1e-12) throw std::domain_error("Jet3: sqrt of near-zero or negative value");
  const double s = std::sqrt(u.v);
  return u.compose(s, 0.5 / s, -0.25 / (s * u.v), 0.375 / (s * u.v * u.v));
}

}  // namespace qcr
