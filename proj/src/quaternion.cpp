#include "qcrlab/quaternion.hpp"

#include <algorithm>
#include <ostream>

namespace qcr {

double Mat3::so3_residual() const {
  const Mat3 t = transposed();
  const Mat3 p = (*this) * t;
  double r = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r = std::max(r, std::abs(p.a[i][j] - (i == j ? 1.0 : 0.0)));
  return std::max(r, std::abs(det() - 1.0));
}

Rot3 ad_matrix(const UnitQuaternion& a) {
  Mat3 m;
  const Quaternion& q = a.q();
  for (int b = 1; b <= 3; ++b) {
    const Quaternion img = q * Quaternion::unit(b) * q.conj();
    for (int c = 1; c <= 3; ++c) m(b - 1, c - 1) = img.im_part(c);
  }
  return Rot3(m);
}

Rot3 ad_matrix_checked(const Quaternion& a) {
  if (std::abs(a.norm() - 1.0) > 1e-9)
    throw std::domain_error("ad_matrix: input is not a unit quaternion");
  return ad_matrix(UnitQuaternion(a));
}

Polar decompose_polar(const Quaternion& lambda) {
  const double u = lambda.norm();
  if (u == 0.0) throw std::domain_error("decompose_polar: zero quaternion");
  return Polar{u, UnitQuaternion(lambda / u)};
}

UnitQuaternion ad_matrix_inverse(const Rot3& A) {
  // Shepperd's method on the transposed convention: our A satisfies
  // a e_b abar = sum_c A_{bc} e_c, so A^T is the usual rotation matrix of
  // the map v -> a v abar acting on column vectors.
  const Mat3 R = A.m().transposed();
  const double tr = R(0, 0) + R(1, 1) + R(2, 2);
  double w, x, y, z;
  if (tr >= 0) {
    w = 0.5 * std::sqrt(1.0 + tr);
    const double s = 0.25 / w;
    x = (R(2, 1) - R(1, 2)) * s;
    y = (R(0, 2) - R(2, 0)) * s;
    z = (R(1, 0) - R(0, 1)) * s;
  } else if (R(0, 0) >= R(1, 1) && R(0, 0) >= R(2, 2)) {
    x = 0.5 * std::sqrt(1.0 + R(0, 0) - R(1, 1) - R(2, 2));
    const double s = 0.25 / x;
    w = (R(2, 1) - R(1, 2)) * s;
    y = (R(0, 1) + R(1, 0)) * s;
    z = (R(0, 2) + R(2, 0)) * s;
  } else if (R(1, 1) >= R(2, 2)) {
    y = 0.5 * std::sqrt(1.0 - R(0, 0) + R(1, 1) - R(2, 2));
    const double s = 0.25 / y;
    w = (R(0, 2) - R(2, 0)) * s;
    x = (R(0, 1) + R(1, 0)) * s;
    z = (R(1, 2) + R(2, 1)) * s;
  } else {
    z = 0.5 * std::sqrt(1.0 - R(0, 0) - R(1, 1) + R(2, 2));
    const double s = 0.25 / z;
    w = (R(1, 0) - R(0, 1)) * s;
    x = (R(0, 2) + R(2, 0)) * s;
    y = (R(1, 2) + R(2, 1)) * s;
  }
  Quaternion q{w, x, y, z};
  const bool flip = q.w < 0 || (q.w == 0 && (q.x < 0 || (q.x == 0 && (q.y < 0 || (q.y == 0 && q.z < 0)))));
  if (flip) q = -q;
  return UnitQuaternion(q);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "(" << q.w << " + " << q.x << "i + " << q.y << "j + " << q.z << "k)";
}

}  // namespace qcr
