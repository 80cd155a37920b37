#include <doctest.h>

#include "qcrlab/quaternion.hpp"
#include "qcrlab/rng.hpp"

using namespace qcr;

namespace {

double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

double mat_dist(const Mat3& a, const Mat3& b) {
  double r = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(a(i, j) - b(i, j)));
  return r;
}

}  // namespace

TEST_CASE("hamilton product defining relations") {
  CHECK(dist(Quaternion::i() * Quaternion::j(), Quaternion::k()) == 0.0);
  CHECK(dist(Quaternion::j() * Quaternion::k(), Quaternion::i()) == 0.0);
  CHECK(dist(Quaternion::k() * Quaternion::i(), Quaternion::j()) == 0.0);
  CHECK(dist(Quaternion::i() * Quaternion::i(), Quaternion(-1)) == 0.0);

  // (1+i)(1-i) = 2 by direct expansion.
  const Quaternion a{1, 1, 0, 0}, b{1, -1, 0, 0};
  CHECK(dist(a * b, Quaternion(2)) == 0.0);
}

TEST_CASE("inverse, norm multiplicativity, conjugation anti-homomorphism") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const Quaternion q = rng.quaternion_box(2.0) + Quaternion(0.1);
    const Quaternion r = rng.quaternion_box(2.0);
    CHECK(dist(q * q.inverse(), Quaternion(1)) < 1e-14);
    CHECK(std::abs((q * r).norm() - q.norm() * r.norm()) < 1e-12);
    CHECK(dist((q * r).conj(), r.conj() * q.conj()) < 1e-14);
    // Trace property Re(qr) = Re(rq).
    CHECK(std::abs((q * r).re() - (r * q).re()) < 1e-13);
    CHECK(std::abs((q * q.conj()).re() - q.norm_sq()) < 1e-12);
  }
}

TEST_CASE("associativity and distributivity") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Quaternion a = rng.quaternion_box(1.5), b = rng.quaternion_box(1.5),
                     c = rng.quaternion_box(1.5);
    CHECK(dist((a * b) * c, a * (b * c)) < 1e-13);
    CHECK(dist(a * (b + c), a * b + a * c) < 1e-13);
  }
}

TEST_CASE("ad_matrix canonical values") {
  CHECK(mat_dist(ad_matrix(UnitQuaternion::one()).m(), Mat3::identity()) == 0.0);

  // a = i: diag(1, -1, -1).
  Mat3 want{};
  want(0, 0) = 1;
  want(1, 1) = -1;
  want(2, 2) = -1;
  CHECK(mat_dist(ad_matrix(UnitQuaternion(Quaternion::i())).m(), want) < 1e-15);

  // a = (1+i)/sqrt2: rows (1,0,0), (0,0,1), (0,-1,0) since a j abar = k and
  // a k abar = -j.
  const UnitQuaternion a(Quaternion{1, 1, 0, 0} / std::sqrt(2.0));
  Mat3 w2{};
  w2(0, 0) = 1;
  w2(1, 2) = 1;
  w2(2, 1) = -1;
  CHECK(mat_dist(ad_matrix(a).m(), w2) < 1e-15);
}

TEST_CASE("ad_matrix intertwines multiplication and is a two-fold cover") {
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    const UnitQuaternion a = rng.unit_quaternion(), b = rng.unit_quaternion();
    // Row convention (basis vectors in rows): composition reverses,
    // ad(ab) = ad(b) ad(a); equivalently ad(ab)^T = ad(a)^T ad(b)^T.
    CHECK(mat_dist(ad_matrix(a * b).m(), (ad_matrix(b) * ad_matrix(a)).m()) < 1e-12);
    CHECK(mat_dist(ad_matrix(a).m(), ad_matrix(UnitQuaternion(-a.q())).m()) < 1e-15);
    CHECK(ad_matrix(a).m().so3_residual() < 1e-12);
  }
}

TEST_CASE("ad_matrix rejects non-unit input") {
  CHECK_THROWS_AS(ad_matrix_checked(Quaternion(2)), std::domain_error);
}

TEST_CASE("ad_matrix_inverse recovers a up to sign") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const UnitQuaternion a = rng.unit_quaternion();
    const UnitQuaternion rec = ad_matrix_inverse(ad_matrix(a));
    const double d = std::min(dist(rec.q(), a.q()), dist(rec.q(), -a.q()));
    CHECK(d < 1e-9);
  }
}

TEST_CASE("polar decomposition") {
  {
    const Polar r = decompose_polar(Quaternion::i() * 2.0);
    CHECK(r.u == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dist(r.a.q(), Quaternion::i()) < 1e-15);
  }
  {
    const Polar r = decompose_polar(Quaternion(1));
    CHECK(r.u == doctest::Approx(1.0));
    CHECK(dist(r.a.q(), Quaternion(1)) < 1e-15);
  }
  {
    // lambda = 3(1+i)/sqrt2 has |lambda| = 3.
    const Quaternion lam = Quaternion{1, 1, 0, 0} * (3.0 / std::sqrt(2.0));
    const Polar r = decompose_polar(lam);
    CHECK(r.u == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(dist(r.a.q() * r.u, lam) < 1e-13);
  }
  CHECK_THROWS_AS(decompose_polar(Quaternion{}), std::domain_error);
}

TEST_CASE("unit quaternion guard") {
  CHECK_NOTHROW(UnitQuaternion(Quaternion{1 + 5e-10, 0, 0, 0}));
  CHECK_THROWS_AS(UnitQuaternion(Quaternion{1.1, 0, 0, 0}), std::domain_error);
}
