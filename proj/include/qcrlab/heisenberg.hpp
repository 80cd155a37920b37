#pragma once

/// The quaternionic Heisenberg group M(p,q) = R^3 x H^n with twisted
/// product, its similarity group Sim(M), the projective null quadric
/// P(V_0) in H^{n+2} of signature (p+1, q+1), the canonical distribution
/// H^can, and the embedding / equivariance checks tying the curved model
/// Sigma to the flat boundary model.

#include <optional>
#include <string>

#include "qcrlab/indefinite.hpp"
#include "qcrlab/model_quadric.hpp"
#include "qcrlab/quaternion.hpp"

namespace qcr {

/// (a, y) with a purely imaginary (the R^3 center coordinate) and y in H^n
/// of signature (p, q).
struct HeisPoint {
  Quaternion a;  // Im H
  QVector y;

  HeisPoint(const Quaternion& a_, const QVector& y_) : a(a_), y(y_) {
    if (std::abs(a.w) > 1e-14) throw std::domain_error("HeisPoint: center must be imaginary");
  }
  static HeisPoint origin(Signature sig) { return HeisPoint(Quaternion{}, QVector::zero(sig)); }
};

/// (a,y) . (b,z) = (a + b - Im<y,z>, y + z).
HeisPoint heis_mul(const HeisPoint& m1, const HeisPoint& m2);
HeisPoint heis_inverse(const HeisPoint& m);

/// Element of Sim(M) = M x| (Sp(p,q).Sp(1) x R+).
struct SimElement {
  QMatrix A;          // Sp(p,q), is_sp at 1e-10
  UnitQuaternion g;
  double t;           // > 0
  HeisPoint trans;    // left-translation part

  SimElement(const QMatrix& A_, const UnitQuaternion& g_, double t_, const HeisPoint& trans_);
};

/// Linear part only: (A.g, t) o (a, y) = (t^2 g a g^-1, t A y g^-1).
HeisPoint sim_linear(const SimElement& s, const HeisPoint& m);
/// Full action: left translation by s.trans after the linear part.
HeisPoint sim_action(const SimElement& s, const HeisPoint& m);

SimElement random_sim(Signature sig, Rng& rng);

/// Point of the projective null quadric: herm(x,x) = 0, stored with the
/// negative-slot block normalized to norm 1.
class ProjPoint {
 public:
  /// Normalizes [x] -> [x / |z_minus|]; rejects zero and non-null input.
  static ProjPoint normalize(const QVector& x);
  const QVector& x() const { return x_; }
  const Signature& sig() const { return x_.sig(); }

 private:
  explicit ProjPoint(const QVector& x) : x_(x) {}
  QVector x_;
};

/// [x1] = [x2] as points of P(V_0): solves the right scalar from the
/// largest-magnitude coordinate and checks all coordinates within tol.
bool proj_equal(const ProjPoint& P1, const ProjPoint& P2, double tol = 1e-9);

/// The embedding iota of M(p,q) into P(V_0): center part a i + b j + c k,
/// horizontal part (z_+, z_-) split by signature; image is null.
ProjPoint embed_heis(const HeisPoint& m);

/// Sigma -> P(V_0): (z, w) -> [(z, w, 1)].
ProjPoint embed_sigma(const QuadricPoint& x);

/// Projective action of Sp(p+1, q+1).
ProjPoint psp_action(const QMatrix& M, const ProjPoint& P);

/// Membership in H^can_{[x]} = P_*(x^perp): |herm(x, v)| <= tol.
bool hcan_member(const ProjPoint& P, const QVector& v, double tol);
double hcan_residual(const ProjPoint& P, const QVector& v);

/// Matrix of a SimElement inside Sp(p+1, q+1).  Assembled from the
/// stabilizer decomposition (nilpotent translation x rotation x dilation in
/// null-pair coordinates); realizes Sim(M) up to anti-isomorphism, which the
/// fixed-point and pullback checks pin down.
QMatrix sim_to_matrix(const SimElement& s);

/// The point at infinity [1, 0, ..., 0, 1] fixed by the stabilizer.
ProjPoint infinity_point(int p, int q);

/// Pullback of omega_0 under a projective transformation, evaluated on a
/// tangent basis at x.  Exact mode compares h* omega_0 with a omega_0 abar
/// for h = (A, a) in Sp(p+1,q) . Sp(1); the fit mode recovers the 3x3
/// transfer matrix S = u^2 (rotation) for a Sim element.
struct PullbackOutcome {
  bool pass{false};
  double residual{0};
  double scale{0};     // recovered u^2 (fit mode)
  int skipped{0};      // samples outside the chart
  std::string details;
};

PullbackOutcome pullback_exact_check(const QMatrix& A, const UnitQuaternion& a,
                                     const QuadricPoint& x, const DFrame& frame,
                                     const CalibrationConstants& cal, double tol);

PullbackOutcome pullback_sim_check(const QMatrix& M, const QuadricPoint& x, const DFrame& frame,
                                   const CalibrationConstants& cal, double tol);

}  // namespace qcr
