#pragma once

/// Quaternion algebra H, the unit group Sp(1), and the adjoint
/// double cover Sp(1) -> SO(3).
///
/// Coefficient order is fixed as (w, x, y, z) <-> (1, i, j, k) everywhere;
/// the realifications used by the tensor modules depend on this order.

#include <array>
#include <cmath>
#include <iosfwd>
#include <stdexcept>

namespace qcr {

struct Quaternion {
  double w{0}, x{0}, y{0}, z{0};

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}
  // Real scalars embed as w + 0i + 0j + 0k.
  constexpr Quaternion(double real) : w(real) {}  // NOLINT(google-explicit-constructor)

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }
  /// Imaginary units indexed 1,2,3.
  static constexpr Quaternion unit(int a) {
    return a == 1 ? i() : (a == 2 ? j() : k());
  }

  constexpr Quaternion operator+(const Quaternion& o) const {
    return {w + o.w, x + o.x, y + o.y, z + o.z};
  }
  constexpr Quaternion operator-(const Quaternion& o) const {
    return {w - o.w, x - o.x, y - o.y, z - o.z};
  }
  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  // Hamilton product, ij = k.
  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
  constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }

  constexpr Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
  constexpr Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
  constexpr Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_sq()); }

  constexpr double re() const { return w; }
  constexpr Quaternion im() const { return {0, x, y, z}; }
  /// Coefficient of e_a (a = 1,2,3).
  constexpr double im_part(int a) const { return a == 1 ? x : (a == 2 ? y : z); }

  Quaternion inverse() const {
    const double n2 = norm_sq();
    return conj() / n2;
  }

  constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

inline double abs(const Quaternion& q) { return q.norm(); }

/// Commutator [q, r] = qr - rq.
constexpr Quaternion commutator(const Quaternion& q, const Quaternion& r) {
  return q * r - r * q;
}

/// A quaternion constrained to |q| = 1.  Construction renormalizes when the
/// deviation is at most 1e-9 and throws otherwise, so norm drift cannot
/// accumulate silently.
class UnitQuaternion {
 public:
  explicit UnitQuaternion(const Quaternion& q) : q_(q) {
    const double n = q.norm();
    if (std::abs(n - 1.0) > 1e-9)
      throw std::domain_error("UnitQuaternion: norm deviates from 1 by more than 1e-9");
    q_ = q / n;
  }
  static UnitQuaternion one() { return UnitQuaternion(Quaternion(1)); }

  const Quaternion& q() const { return q_; }
  UnitQuaternion operator*(const UnitQuaternion& o) const {
    return UnitQuaternion(q_ * o.q_);
  }
  UnitQuaternion conj() const { return UnitQuaternion(q_.conj()); }

 private:
  Quaternion q_;
};

/// 3x3 real matrix, used for SO(3) elements and the omega-component
/// transfer matrices.
struct Mat3 {
  std::array<std::array<double, 3>, 3> a{};

  static constexpr Mat3 identity() {
    Mat3 m;
    for (int i = 0; i < 3; ++i) m.a[i][i] = 1.0;
    return m;
  }
  double& operator()(int i, int j) { return a[i][j]; }
  double operator()(int i, int j) const { return a[i][j]; }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += a[i][k] * o.a[k][j];
        r.a[i][j] = s;
      }
    return r;
  }
  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.a[i][j] = a[j][i];
    return r;
  }
  double det() const {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  }
  /// max_ij |A^T A - I| combined with |det - 1|; zero for SO(3) members.
  double so3_residual() const;
};

/// Rotation matrix wrapper: AA^T = I, det A = +1 within 1e-12 enforced.
class Rot3 {
 public:
  explicit Rot3(const Mat3& m) : m_(m) {
    if (m.so3_residual() > 1e-12 * 32)
      throw std::domain_error("Rot3: matrix is not in SO(3)");
  }
  static Rot3 identity() { return Rot3(Mat3::identity()); }
  const Mat3& m() const { return m_; }
  Rot3 operator*(const Rot3& o) const { return Rot3(m_ * o.m_); }
  Rot3 transposed() const { return Rot3(m_.transposed()); }

 private:
  Mat3 m_;
};

/// The matrix A of the adjoint action: a e_b abar = sum_c A_{bc} e_c,
/// i.e. a (i,j,k)^T abar = A (i,j,k)^T.  Surjects onto SO(3) with
/// ad(a) = ad(-a).
Rot3 ad_matrix(const UnitQuaternion& a);

/// Rejects non-unit input beyond 1e-9 before applying ad_matrix.
Rot3 ad_matrix_checked(const Quaternion& a);

/// Polar decomposition lambda = u * a with u = |lambda| > 0, |a| = 1.
struct Polar {
  double u;
  UnitQuaternion a;
};
Polar decompose_polar(const Quaternion& lambda);

/// Recover +-a from A = ad_matrix(a); returns the representative with
/// nonnegative w (ties broken toward +x, +y, +z).
UnitQuaternion ad_matrix_inverse(const Rot3& A);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qcr
