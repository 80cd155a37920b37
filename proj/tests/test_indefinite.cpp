#include <doctest.h>

#include "qcrlab/indefinite.hpp"
#include "qcrlab/rng.hpp"

using namespace qcr;

namespace {

QVector random_vec(Signature sig, Rng& rng, double w = 1.0) {
  QVector v = QVector::zero(sig);
  for (int i = 0; i < sig.dim(); ++i) v[i] = rng.quaternion_box(w);
  return v;
}

}  // namespace

TEST_CASE("herm basic values") {
  const Signature s20(2, 0);
  QVector x = QVector::zero(s20), y = QVector::zero(s20);
  x[0] = Quaternion(1);
  y[0] = Quaternion::j();
  CHECK((herm(x, y) - Quaternion::j()).norm() == 0.0);

  const Signature s11(1, 1);
  QVector iso = QVector::zero(s11);
  iso[0] = Quaternion(1);
  iso[1] = Quaternion(1);
  CHECK(herm(iso, iso).norm() == 0.0);
}

TEST_CASE("herm sesquilinearity and conjugate symmetry") {
  Rng rng(3);
  const Signature sig(2, 1);
  for (int t = 0; t < 30; ++t) {
    const QVector x = random_vec(sig, rng), y = random_vec(sig, rng);
    const Quaternion lam = rng.quaternion_box(1.0);
    CHECK((herm(x * lam, y) - lam.conj() * herm(x, y)).norm() < 1e-13);
    CHECK((herm(x, y * lam) - herm(x, y) * lam).norm() < 1e-13);
    CHECK((herm(x, y) - herm(y, x).conj()).norm() < 1e-14);
    // herm with k slot: <x k, y> = kbar <x,y>
    CHECK((herm(x * Quaternion::k(), y) - Quaternion::k().conj() * herm(x, y)).norm() < 1e-13);
  }
}

TEST_CASE("re_form properties") {
  Rng rng(5);
  const Signature sig(1, 2);
  QVector e0 = QVector::basis(sig, 0);
  CHECK(re_form(e0, e0) == 1.0);
  CHECK(re_form(QVector::basis(sig, 1), QVector::basis(sig, 1)) == -1.0);

  for (int t = 0; t < 30; ++t) {
    const QVector x = random_vec(sig, rng), y = random_vec(sig, rng);
    // re_form(x, x i) = 0 since <x,x> is real.
    CHECK(std::abs(re_form(x, x * Quaternion::i())) < 1e-13);
    CHECK(std::abs(re_form(x, y) - herm(x, y).re()) < 1e-14);
    // invariance under simultaneous right unit multiplication
    const Quaternion a = rng.unit_quaternion().q();
    CHECK(std::abs(re_form(x * a, y * a) - re_form(x, y)) < 1e-12);
  }

  // Gram matrix of the real coordinate basis is diag(+-1) exactly.
  for (int i = 0; i < sig.dim(); ++i)
    for (int t = 0; t < 4; ++t) {
      QVector b = QVector::zero(sig);
      b[i] = t == 0   ? Quaternion(1)
             : t == 1 ? Quaternion::i()
             : t == 2 ? Quaternion::j()
                      : Quaternion::k();
      CHECK(re_form(b, b) == sig.eta(i));
    }
}

TEST_CASE("is_sp membership") {
  const Signature sig(1, 1);
  CHECK(is_sp(QMatrix::identity(sig), 1e-15));

  QMatrix dj = QMatrix::zero(sig);
  dj(0, 0) = Quaternion::j();
  dj(1, 1) = Quaternion::j();
  CHECK(is_sp(dj, 1e-15));

  // 2x2 real boost on signature (1,1).
  const double t = 0.7;
  QMatrix boost = QMatrix::zero(sig);
  boost(0, 0) = Quaternion(std::cosh(t));
  boost(0, 1) = Quaternion(std::sinh(t));
  boost(1, 0) = Quaternion(std::sinh(t));
  boost(1, 1) = Quaternion(std::cosh(t));
  CHECK(is_sp(boost, 1e-14));

  QMatrix bad = QMatrix::identity(sig);
  bad(0, 0) = Quaternion(2);
  CHECK(!is_sp(bad, 1e-9));
}

TEST_CASE("sp_algebra_project lands in the algebra and fixes members") {
  Rng rng(9);
  const Signature sig(2, 1);
  CHECK(sp_algebra_project(QMatrix::zero(sig)).max_entry_norm() == 0.0);

  // 1x1 positive: X = (i) is already in the algebra.
  const Signature s10(1, 0);
  QMatrix xi = QMatrix::zero(s10);
  xi(0, 0) = Quaternion::i();
  CHECK((sp_algebra_project(xi) - xi).max_entry_norm() < 1e-15);

  for (int t = 0; t < 20; ++t) {
    QMatrix X = QMatrix::zero(sig);
    for (int i = 0; i < sig.dim(); ++i)
      for (int j = 0; j < sig.dim(); ++j) X(i, j) = rng.quaternion_box(1.0);
    const QMatrix Y = sp_algebra_project(X);
    CHECK(sp_algebra_residual(Y) < 1e-14);
    CHECK((sp_algebra_project(Y) - Y).max_entry_norm() < 1e-14);
  }
}

TEST_CASE("sp_exp scalar series and group membership") {
  const Signature s10(1, 0);
  CHECK((sp_exp(QMatrix::zero(s10)) - QMatrix::identity(s10)).max_entry_norm() < 1e-15);

  const double t = 0.9;
  QMatrix X = QMatrix::zero(s10);
  X(0, 0) = Quaternion::i() * t;
  const QMatrix E = sp_exp(X);
  CHECK((E(0, 0) - Quaternion{std::cos(t), std::sin(t), 0, 0}).norm() < 1e-14);

  Rng rng(21);
  for (auto sig : {Signature(2, 0), Signature(1, 1), Signature(2, 1)}) {
    for (int k = 0; k < 10; ++k) {
      const QMatrix M = random_sp(sig, rng);
      CHECK(is_sp(M, 1e-9));
    }
  }
  CHECK_THROWS_AS(sp_exp(QMatrix::identity(s10)), std::domain_error);
}

TEST_CASE("group closure under multiplication") {
  Rng rng(23);
  const Signature sig(1, 1);
  for (int t = 0; t < 15; ++t) {
    const QMatrix M = random_sp(sig, rng), N = random_sp(sig, rng);
    CHECK(sp_residual(M) < 1e-12);
    CHECK(is_sp(M * N, 1e-9));
  }
}
