#include "qcrlab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcr {

namespace {

// 4x4 real matrix of right multiplication v -> v q in (w,x,y,z) order.
Eigen::Matrix4d right_mult(const Quaternion& q) {
  Eigen::Matrix4d R;
  R << q.w, -q.x, -q.y, -q.z,
       q.x,  q.w,  q.z, -q.y,
       q.y, -q.z,  q.w,  q.x,
       q.z,  q.y, -q.x,  q.w;
  return R;
}

// 4x4 real matrix of left multiplication v -> q v.
Eigen::Matrix4d left_mult(const Quaternion& q) {
  Eigen::Matrix4d L;
  L << q.w, -q.x, -q.y, -q.z,
       q.x,  q.w, -q.z,  q.y,
       q.y,  q.z,  q.w, -q.x,
       q.z, -q.y,  q.x,  q.w;
  return L;
}

// Realification of v -> U' v abar on H^n (the SO(4p,4q) element of the
// coframe action).
Eigen::MatrixXd realify_sp_sp1(const QMatrix& Uprime, const UnitQuaternion& a) {
  const int n = Uprime.dim();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  const Eigen::Matrix4d Rab = right_mult(a.q().conj());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      M.block<4, 4>(4 * i, 4 * j) = Rab * left_mult(Uprime(i, j));
  return M;
}

}  // namespace

double fiber_residual(const FiberData& f) {
  double r = 0;
  for (int a = 1; a <= 3; ++a) {
    // sigma_a(J_a X, Y) = (J_a X)^T sigma_a Y; symmetry of J_a^T sigma_a.
    const Eigen::MatrixXd m = f.triple.at(a).transpose() * f.sigma[a - 1];
    r = std::max(r, (m - m.transpose()).cwiseAbs().maxCoeff());
    if (std::abs(f.sigma[a - 1].determinant()) < 1e-10) r = std::max(r, 1.0);
  }
  return r;
}

FiberData synth_fiber(int p, int q, Rng& rng) {
  auto [g, triple] = standard_triple(p, q);
  // sigma_a = g J_a, matching the model convention d omega_a(X,Y) =
  // g(J_a X, Y) for the axiom triple.
  std::array<Eigen::MatrixXd, 3> sigma{g * triple.I, g * triple.J, g * triple.K};

  const Signature sig(p, q);
  const QMatrix Up = random_sp(sig, rng);
  const Eigen::MatrixXd S = realify_sp_sp1(Up, rng.unit_quaternion());
  FiberData out{S.transpose() * g * S,
                {S.transpose() * sigma[0] * S, S.transpose() * sigma[1] * S,
                 S.transpose() * sigma[2] * S},
                TripleMatrices{S.inverse() * triple.I * S, S.inverse() * triple.J * S,
                               S.inverse() * triple.K * S}};
  return out;
}

TransformedOmega transform_omega(const Quaternion& omega_value, double s,
                                 const UnitQuaternion& a) {
  const Quaternion via_conj = s * (a.q() * omega_value * a.q().conj());
  const Rot3 A = ad_matrix(a);
  Quaternion via_matrix{};
  // Row-vector action: omega'_a = s sum_b omega_b A_{ba}.
  for (int c = 1; c <= 3; ++c) {
    double acc = 0;
    for (int b = 1; b <= 3; ++b) acc += omega_value.im_part(b) * A.m()(b - 1, c - 1);
    via_matrix += Quaternion::unit(c) * (s * acc);
  }
  via_matrix.w = s * omega_value.w;  // real part unused for Im H values
  return TransformedOmega{via_conj, (via_conj - via_matrix).norm()};
}

TripleMatrices j_from_sigma(const std::array<Eigen::MatrixXd, 3>& sigma) {
  auto solve = [&](int beta, int alpha) {
    return Eigen::MatrixXd(sigma[beta - 1].partialPivLu().solve(sigma[alpha - 1]));
  };
  TripleMatrices J{solve(3, 2), solve(1, 3), solve(2, 1)};
  const int d = static_cast<int>(sigma[0].rows());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  double r = 0;
  for (int a = 1; a <= 3; ++a)
    r = std::max(r, (J.at(a) * J.at(a) + id).cwiseAbs().maxCoeff());
  r = std::max(r, (J.I * J.J - J.K).cwiseAbs().maxCoeff());
  if (r > 1e-6) throw std::domain_error("not a quaternionic-CR fiber");
  return J;
}

Eigen::MatrixXd metric_from_sigma(const std::array<Eigen::MatrixXd, 3>& sigma,
                                  const TripleMatrices& J, int alpha) {
  // g(X,Y) = sigma_alpha(J_alpha X, Y) = X^T J_alpha^T sigma_alpha Y.
  return J.at(alpha).transpose() * sigma[alpha - 1];
}

GaugeOutcome gauge_consistency_check(const FiberData& f, int trials, std::uint64_t seed,
                                     double tol) {
  GaugeOutcome out;
  const TripleMatrices J0 = j_from_sigma(f.sigma);
  const Eigen::MatrixXd g0 = metric_from_sigma(f.sigma, J0, 1);
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
    const double s = std::exp(rng.uniform(-0.7, 0.7));
    const UnitQuaternion a = rng.unit_quaternion();
    const Rot3 A = ad_matrix(a);

    // sigma'_alpha = s sum_beta A_{beta,alpha} sigma_beta  (column action,
    // matching omega'_alpha = s sum_beta A_{beta,alpha} omega_beta).
    std::array<Eigen::MatrixXd, 3> sig2{f.sigma[0], f.sigma[1], f.sigma[2]};
    for (int alpha = 1; alpha <= 3; ++alpha) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(f.g.rows(), f.g.cols());
      for (int beta = 1; beta <= 3; ++beta)
        acc += A.m()(beta - 1, alpha - 1) * f.sigma[beta - 1];
      sig2[alpha - 1] = s * acc;
    }
    const TripleMatrices J2 = j_from_sigma(sig2);
    const TripleMatrices Jrot = rotate_triple(A, J0);
    for (int alpha = 1; alpha <= 3; ++alpha)
      out.j_rotation_residual = std::max(
          out.j_rotation_residual, (J2.at(alpha) - Jrot.at(alpha)).cwiseAbs().maxCoeff());

    std::array<Eigen::MatrixXd, 3> g2;
    for (int alpha = 1; alpha <= 3; ++alpha) g2[alpha - 1] = metric_from_sigma(sig2, J2, alpha);
    out.metric_scale_residual =
        std::max(out.metric_scale_residual, (g2[0] - s * g0).cwiseAbs().maxCoeff());
    out.alpha_independence_residual = std::max(
        {out.alpha_independence_residual, (g2[0] - g2[1]).cwiseAbs().maxCoeff(),
         (g2[1] - g2[2]).cwiseAbs().maxCoeff()});
    for (int alpha = 1; alpha <= 3; ++alpha)
      out.q_invariance_residual = std::max(
          out.q_invariance_residual,
          (J2.at(alpha).transpose() * g2[0] * J2.at(alpha) - g2[0]).cwiseAbs().maxCoeff());
  }
  out.pass = out.j_rotation_residual <= tol && out.metric_scale_residual <= tol &&
             out.alpha_independence_residual <= tol && out.q_invariance_residual <= tol;
  return out;
}

// ---------------------------------------------------------------------------
// The real structure group G.

GParams::GParams(double u_, const UnitQuaternion& a_, const QMatrix& Up, const QVector& v)
    : u(u_), a(a_), Uprime(Up), vtil(v) {
  if (u <= 0) throw std::domain_error("GParams: u must be positive");
  if (!is_sp(Up, 1e-9)) throw std::domain_error("GParams: U' is not in Sp(p,q)");
}

namespace {

// V^j block of eq-(G) shape from the quaternion components of vtil^j.
Eigen::Matrix<double, 4, 3> vblock(const Quaternion& v) {
  Eigen::Matrix<double, 4, 3> V;
  V << -v.x, -v.y, -v.z,
        v.w, -v.z,  v.y,
        v.z,  v.w, -v.x,
       -v.y,  v.x,  v.w;
  return V;
}

}  // namespace

Eigen::MatrixXd build_g_matrix(const GParams& p) {
  const int n = p.Uprime.dim();
  const int d = 4 * n + 3;
  const Eigen::Matrix3d At = [&] {
    Eigen::Matrix3d m;
    const Mat3 A = ad_matrix(p.a).m();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = A(j, i);
    return m;
  }();

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(d, d);
  G.block<3, 3>(0, 0) = p.u * p.u * At;
  G.block(3, 3, 4 * n, 4 * n) = p.u * realify_sp_sp1(p.Uprime, p.a);
  Eigen::Matrix4d B = Eigen::Matrix4d::Identity();
  B.block<3, 3>(1, 1) = At;
  for (int j = 0; j < n; ++j)
    G.block<4, 3>(3 + 4 * j, 0) = p.u * p.u * B * vblock(p.vtil[j]);
  return G;
}

namespace {

GParams recover_g_params(const Eigen::MatrixXd& G, int p, int q) {
  const int n = p + q;
  const Eigen::Matrix3d TL = G.block<3, 3>(0, 0);
  const double det = TL.determinant();
  if (det <= 0) throw std::domain_error("recover_g_params: top-left determinant not positive");
  const double u = std::pow(det, 1.0 / 6.0);
  Mat3 Am;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Am(i, j) = TL(j, i) / (u * u);
  const Rot3 A(Am);
  const UnitQuaternion a = ad_matrix_inverse(A);

  // Lower-right blocks factor as R_abar L_{U'_ij}; left and right
  // multiplications commute and R_abar^{-1} = R_a, so L_{U'_ij} =
  // LR_block R_a, whose first column is U'_ij.
  QMatrix Up = QMatrix::zero(Signature(p, q));
  const Eigen::MatrixXd LR = G.block(3, 3, 4 * n, 4 * n) / u;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Eigen::Matrix4d Lq = LR.block<4, 4>(4 * i, 4 * j) * right_mult(a.q());
      Up(i, j) = Quaternion{Lq(0, 0), Lq(1, 0), Lq(2, 0), Lq(3, 0)};
    }

  Eigen::Matrix3d Aplain;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Aplain(i, j) = A.m()(i, j);
  Eigen::Matrix4d Binv = Eigen::Matrix4d::Identity();
  Binv.block<3, 3>(1, 1) = Aplain;  // (diag(1, A^T))^{-1} = diag(1, A)
  QVector vtil = QVector::zero(Up.sig());
  for (int j = 0; j < n; ++j) {
    const Eigen::Matrix<double, 4, 3> V = Binv * G.block<4, 3>(3 + 4 * j, 0) / (u * u);
    vtil[j] = Quaternion{V(1, 0), -V(0, 0), -V(0, 1), -V(0, 2)};
  }
  return GParams(u, a, Up, vtil);
}

}  // namespace

ClosureOutcome g_closure_check(int p, int q, int trials, std::uint64_t seed, double tol) {
  ClosureOutcome out;
  const Signature sig(p, q);
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
    auto draw = [&] {
      QVector v = QVector::zero(sig);
      for (int i = 0; i < sig.dim(); ++i) v[i] = rng.quaternion_box(0.8);
      return GParams(std::exp(rng.uniform(-0.5, 0.5)), rng.unit_quaternion(),
                     random_sp(sig, rng), v);
    };
    const GParams g1 = draw(), g2 = draw();
    const Eigen::MatrixXd P = build_g_matrix(g1) * build_g_matrix(g2);
    const GParams rec = recover_g_params(P, p, q);
    const Eigen::MatrixXd rebuilt = build_g_matrix(rec);
    out.recovery_residual =
        std::max(out.recovery_residual, (P - rebuilt).cwiseAbs().maxCoeff());
  }
  out.pass = out.recovery_residual <= tol;
  return out;
}

// ---------------------------------------------------------------------------
// Anti-isomorphism onto Sim(H^n).

GQuat g_compose(const GQuat& g1, const GQuat& g2) {
  const Quaternion lam = g1.lambda * g2.lambda;
  // Lower-left column of the product: lam1 v1 lam2 + U'_1 (lam2 v2).
  QVector col = QVector::zero(g1.vtil.sig());
  for (int i = 0; i < col.dim(); ++i) {
    Quaternion acc = g1.lambda * g1.vtil[i] * g2.lambda;
    for (int j = 0; j < col.dim(); ++j)
      acc += g1.Uprime(i, j) * (g2.lambda * g2.vtil[j]);
    col[i] = acc;
  }
  QVector vtil = QVector::zero(g1.vtil.sig());
  const Quaternion li = lam.inverse();
  for (int i = 0; i < col.dim(); ++i) vtil[i] = li * col[i];
  return GQuat{lam, vtil, g1.Uprime * g2.Uprime};
}

SimHn sim_hn_compose(const SimHn& f1, const SimHn& f2) {
  // (w1, X1.mu1) o (w2, X2.mu2): v -> X1 (X2 v mu2bar + w2) mu1bar + w1.
  QVector w = f1.w;
  const QVector xw = f1.X * f2.w;
  for (int i = 0; i < w.dim(); ++i) w[i] = w[i] + xw[i] * f1.mu.conj();
  return SimHn{w, f1.X * f2.X, f1.mu * f2.mu};
}

SimHn g_to_sim(const GQuat& g) {
  // Projective affine action of the inverse element: the induced map on the
  // affine patch v = x' x_0^{-1} is T_g(v) = U' v lam^{-1} + lam vtil
  // lam^{-1}; g -> T_{g^{-1}} reverses composition order.
  // U'^{-1} = eta U'* eta for U' in Sp(p,q).
  const Signature sig = g.vtil.sig();
  QMatrix Uinv = g.Uprime.star();
  for (int i = 0; i < Uinv.dim(); ++i)
    for (int j = 0; j < Uinv.dim(); ++j)
      Uinv(i, j) = Uinv(i, j) * (sig.eta(i) * sig.eta(j));
  // T_{g^{-1}}(v) = U'^{-1} v lam - U'^{-1}(lam vtil):
  // linear part v -> X v mubar with X = U'^{-1}, mu = lambar.
  QVector lv = QVector::zero(sig);
  for (int i = 0; i < sig.dim(); ++i) lv[i] = g.lambda * g.vtil[i];
  const QVector w = -(Uinv * lv);
  return SimHn{w, Uinv, g.lambda.conj()};
}

double sim_hn_distance(const SimHn& f1, const SimHn& f2) {
  double r = (f1.mu - f2.mu).norm();
  r = std::max(r, (f1.w - f2.w).euclid_norm());
  r = std::max(r, (f1.X - f2.X).max_entry_norm());
  return r;
}

GQuat random_gquat(int p, int q, Rng& rng) {
  const Signature sig(p, q);
  QVector v = QVector::zero(sig);
  for (int i = 0; i < sig.dim(); ++i) v[i] = rng.quaternion_box(0.8);
  return GQuat{rng.quaternion_box(1.0) + Quaternion(2.0),  // bounded away from 0
               v, random_sp(sig, rng)};
}

}  // namespace qcr
