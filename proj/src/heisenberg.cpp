#include "qcrlab/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcr {

namespace {

Quaternion im_part(const Quaternion& h) { return (h - h.conj()) * 0.5; }

}  // namespace

HeisPoint heis_mul(const HeisPoint& m1, const HeisPoint& m2) {
  return HeisPoint(m1.a + m2.a - im_part(herm(m1.y, m2.y)), m1.y + m2.y);
}

HeisPoint heis_inverse(const HeisPoint& m) { return HeisPoint(-m.a, -m.y); }

SimElement::SimElement(const QMatrix& A_, const UnitQuaternion& g_, double t_,
                       const HeisPoint& trans_)
    : A(A_), g(g_), t(t_), trans(trans_) {
  if (t <= 0) throw std::domain_error("SimElement: dilation must be positive");
  if (!is_sp(A, 1e-10)) throw std::domain_error("SimElement: A is not in Sp(p,q)");
}

HeisPoint sim_linear(const SimElement& s, const HeisPoint& m) {
  const Quaternion gq = s.g.q();
  return HeisPoint((s.t * s.t) * (gq * m.a * gq.conj()), (s.A * m.y) * gq.conj() * s.t);
}

HeisPoint sim_action(const SimElement& s, const HeisPoint& m) {
  return heis_mul(s.trans, sim_linear(s, m));
}

SimElement random_sim(Signature sig, Rng& rng) {
  const QMatrix A = random_sp(sig, rng);
  const UnitQuaternion g = rng.unit_quaternion();
  const double t = std::exp(rng.uniform(-0.5, 0.5));
  QVector y = QVector::zero(sig);
  for (int i = 0; i < sig.dim(); ++i) y[i] = rng.quaternion_box(0.7);
  const HeisPoint trans(rng.quaternion_box(0.7).im(), y);
  return SimElement(A, g, t, trans);
}

ProjPoint ProjPoint::normalize(const QVector& x) {
  const Signature sig = x.sig();
  double neg = 0;
  for (int i = sig.r; i < sig.dim(); ++i) neg += x[i].norm_sq();
  const double nn = std::sqrt(neg);
  if (nn < 1e-12) throw std::domain_error("ProjPoint: zero or z_minus-degenerate vector");
  const Quaternion h = herm(x, x);
  if (h.norm() > 1e-9 * std::max(1.0, x.euclid_norm() * x.euclid_norm()))
    throw std::domain_error("ProjPoint: vector is not null");
  return ProjPoint(x * (1.0 / nn));
}

bool proj_equal(const ProjPoint& P1, const ProjPoint& P2, double tol) {
  const QVector &x1 = P1.x(), &x2 = P2.x();
  int pivot = 0;
  double best = -1;
  for (int i = 0; i < x1.dim(); ++i)
    if (x1[i].norm() > best) {
      best = x1[i].norm();
      pivot = i;
    }
  if (best < 1e-12) return false;
  const Quaternion lambda = x1[pivot].inverse() * x2[pivot];
  double res = 0;
  for (int i = 0; i < x1.dim(); ++i) res = std::max(res, (x1[i] * lambda - x2[i]).norm());
  return res <= tol;
}

ProjPoint embed_heis(const HeisPoint& m) {
  const Signature hsig = m.y.sig();
  const int p = hsig.r, q = hsig.s, n = p + q;
  const Signature esig(p + 1, q + 1);
  const double s = herm(m.y, m.y).re() * 0.5;  // (|z+|^2 - |z-|^2)/2
  QVector out = QVector::zero(esig);
  out[0] = Quaternion(s - 1.0) + m.a;
  for (int i = 0; i < p; ++i) out[1 + i] = m.y[i] * std::sqrt(2.0);
  for (int i = 0; i < q; ++i) out[p + 1 + i] = m.y[p + i] * std::sqrt(2.0);
  out[n + 1] = Quaternion(s + 1.0) + m.a;
  return ProjPoint::normalize(out);
}

ProjPoint embed_sigma(const QuadricPoint& x) {
  const Signature sig = x.sig();
  const Signature esig(sig.r, sig.s + 1);
  QVector out = QVector::zero(esig);
  for (int i = 0; i < sig.r; ++i) out[i] = x.x()[i];
  for (int i = 0; i < sig.s; ++i) out[sig.r + i] = x.x()[sig.r + i];
  out[sig.dim()] = Quaternion(1);
  return ProjPoint::normalize(out);
}

ProjPoint psp_action(const QMatrix& M, const ProjPoint& P) {
  if (!is_sp(M, 1e-10)) throw std::domain_error("psp_action: matrix is not in Sp(p+1,q+1)");
  return ProjPoint::normalize(M * P.x());
}

double hcan_residual(const ProjPoint& P, const QVector& v) { return herm(P.x(), v).norm(); }

bool hcan_member(const ProjPoint& P, const QVector& v, double tol) {
  return hcan_residual(P, v) <= tol;
}

ProjPoint infinity_point(int p, int q) {
  const Signature esig(p + 1, q + 1);
  QVector x = QVector::zero(esig);
  x[0] = Quaternion(1);
  x[esig.dim() - 1] = Quaternion(1);
  return ProjPoint::normalize(x);
}

// ---------------------------------------------------------------------------
// Stabilizer matrices in null-pair coordinates (alpha, m, beta) with
// x = p_plus alpha + m + p_minus beta, p_plus = e_0 + e_{n+1},
// p_minus = -e_0 + e_{n+1}.  There B(x,x') = <m,m'> - 2(albar beta' +
// bebar alpha'), and the three stabilizer factors are
//   translation N(b,z):  alpha' = alpha + <z,y> + (<z,z>/2 + bhat) beta,
//                        m' = m + sqrt2 z beta,  beta' = beta  (y = m/sqrt2)
//   rotation  R(A,g):    diag(g, A, g)   (projectively equal to the
//                        (g . gbar)-conjugated action)
//   dilation  D(t):      diag(t, Id, 1/t).

namespace {

QMatrix change_of_basis(int p, int q) {
  const int n = p + q;
  const Signature esig(p + 1, q + 1);
  QMatrix C = QMatrix::zero(esig);
  C(0, 0) = Quaternion(1);
  C(0, n + 1) = Quaternion(-1);
  for (int i = 0; i < n; ++i) C(1 + i, 1 + i) = Quaternion(1);
  C(n + 1, 0) = Quaternion(1);
  C(n + 1, n + 1) = Quaternion(1);
  return C;
}

QMatrix change_of_basis_inverse(int p, int q) {
  const int n = p + q;
  const Signature esig(p + 1, q + 1);
  QMatrix Ci = QMatrix::zero(esig);
  Ci(0, 0) = Quaternion(0.5);
  Ci(0, n + 1) = Quaternion(0.5);
  for (int i = 0; i < n; ++i) Ci(1 + i, 1 + i) = Quaternion(1);
  Ci(n + 1, 0) = Quaternion(-0.5);
  Ci(n + 1, n + 1) = Quaternion(0.5);
  return Ci;
}

}  // namespace

QMatrix sim_to_matrix(const SimElement& s) {
  const Signature hsig = s.trans.y.sig();
  const int p = hsig.r, q = hsig.s, n = p + q;
  const Signature esig(p + 1, q + 1);
  const double rt2 = std::sqrt(2.0);

  // Coordinate order inside the middle block matches the Heisenberg layout:
  // positive slots then negative slots, with eta_pq signs.
  auto middle_eta = [&](int i) { return i < p ? 1.0 : -1.0; };

  QMatrix N = QMatrix::identity(esig);
  const QVector& z = s.trans.y;
  for (int i = 0; i < n; ++i) N(0, 1 + i) = z[i].conj() * (middle_eta(i) / rt2);
  N(0, n + 1) = Quaternion(herm(z, z).re() * 0.5) + s.trans.a;
  for (int i = 0; i < n; ++i) N(1 + i, n + 1) = z[i] * rt2;

  QMatrix R = QMatrix::zero(esig);
  R(0, 0) = s.g.q();
  R(n + 1, n + 1) = s.g.q();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(1 + i, 1 + j) = s.A(i, j);

  QMatrix D = QMatrix::identity(esig);
  D(0, 0) = Quaternion(s.t);
  D(n + 1, n + 1) = Quaternion(1.0 / s.t);

  const QMatrix C = change_of_basis(p, q);
  const QMatrix Ci = change_of_basis_inverse(p, q);
  return C * (N * (R * D)) * Ci;
}

// ---------------------------------------------------------------------------
// omega_0 pullback checks.

namespace {

struct TangentBasis {
  std::vector<QVector> vecs;  // xi_1..xi_3, frame
};

TangentBasis tangent_basis(const QuadricPoint& x, const DFrame& frame) {
  TangentBasis b;
  for (int a = 1; a <= 3; ++a) b.vecs.push_back(xi_field(x, a).v());
  for (const auto& e : frame.e) b.vecs.push_back(e);
  return b;
}

}  // namespace

PullbackOutcome pullback_exact_check(const QMatrix& A, const UnitQuaternion& a,
                                     const QuadricPoint& x, const DFrame& frame,
                                     const CalibrationConstants& cal, double tol) {
  PullbackOutcome out;
  const Quaternion aq = a.q();
  const QuadricPoint hx((A * x.x()) * aq.conj());
  double worst = 0;
  for (const QVector& v : tangent_basis(x, frame).vecs) {
    const QVector hv = (A * v) * aq.conj();
    const Quaternion lhs = omega0(hx, hv, cal);
    const Quaternion rhs = aq * omega0(x, v, cal) * aq.conj();
    worst = std::max(worst, (lhs - rhs).norm());
  }
  out.residual = worst;
  out.pass = worst <= tol;
  out.scale = 1.0;
  return out;
}

PullbackOutcome pullback_sim_check(const QMatrix& M, const QuadricPoint& x, const DFrame& frame,
                                   const CalibrationConstants& cal, double tol) {
  PullbackOutcome out;
  const int n = x.n();
  const Signature esig(x.sig().r, x.sig().s + 1);

  // zeta = M (x, 1); the image point on Sigma is zeta_top zeta_last^{-1}.
  QVector lift = QVector::zero(esig);
  for (int i = 0; i < x.sig().dim(); ++i) lift[i] = x.x()[i];
  lift[n + 1] = Quaternion(1);
  const QVector zeta = M * lift;
  const Quaternion zl = zeta[n + 1];
  if (zl.norm() < 1e-6) {
    out.skipped = 1;
    out.details = "image outside the Sigma chart";
    return out;
  }
  const Quaternion zli = zl.inverse();
  QVector img = QVector::zero(x.sig());
  for (int i = 0; i < x.sig().dim(); ++i) img[i] = zeta[i] * zli;
  const QuadricPoint hx(img);

  const TangentBasis basis = tangent_basis(x, frame);
  // Differential: d(zeta_top zl^{-1}) = dzeta_top zl^{-1}
  //               - zeta_top zl^{-1} dzl zl^{-1}.
  auto push = [&](const QVector& v) {
    QVector vlift = QVector::zero(esig);
    for (int i = 0; i < x.sig().dim(); ++i) vlift[i] = v[i];
    const QVector dz = M * vlift;
    const Quaternion dzl = dz[n + 1];
    QVector dv = QVector::zero(x.sig());
    for (int i = 0; i < x.sig().dim(); ++i)
      dv[i] = dz[i] * zli - zeta[i] * (zli * dzl * zli);
    return dv;
  };

  // Transfer matrix S_{ab} = (h* omega)_a(xi_b); residual taken over the
  // full basis, including the frame vectors where omega vanishes.
  Mat3 S;
  std::vector<Quaternion> pulled;
  pulled.reserve(basis.vecs.size());
  for (const QVector& v : basis.vecs) pulled.push_back(omega0(hx, push(v), cal));
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) S(a - 1, b - 1) = pulled[b - 1].im_part(a);

  double worst = 0;
  for (size_t kk = 0; kk < basis.vecs.size(); ++kk) {
    const Quaternion om = omega0(x, basis.vecs[kk], cal);
    for (int a = 1; a <= 3; ++a) {
      double expect = 0;
      for (int b = 1; b <= 3; ++b) expect += S(a - 1, b - 1) * om.im_part(b);
      worst = std::max(worst, std::abs(pulled[kk].im_part(a) - expect));
    }
  }

  // S must be u^2 times a rotation.
  const double det = S.det();
  if (det <= 0) {
    out.residual = 1.0;
    out.details = "transfer matrix has non-positive determinant";
    return out;
  }
  const double u2 = std::cbrt(det);
  Mat3 Q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Q(i, j) = S(i, j) / u2;
  worst = std::max(worst, Q.so3_residual());

  out.residual = worst;
  out.scale = u2;
  out.pass = worst <= tol;
  return out;
}

}  // namespace qcr
