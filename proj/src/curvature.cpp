#include "qcrlab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcr {

namespace {

// Natural lowering of an endomorphism: M_{ij} = g_{im} M^m_j.
Eigen::MatrixXd lower(const Eigen::MatrixXd& g, const Eigen::MatrixXd& M) { return g * M; }

}  // namespace

double triple_residual(const TripleMatrices& t, const Eigen::MatrixXd& g) {
  const int d = static_cast<int>(g.rows());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  double r = 0;
  for (int a = 1; a <= 3; ++a) {
    r = std::max(r, (t.at(a) * t.at(a) + id).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd low = lower(g, t.at(a));
    r = std::max(r, (low + low.transpose()).cwiseAbs().maxCoeff());
  }
  r = std::max(r, (t.I * t.J - t.K).cwiseAbs().maxCoeff());
  r = std::max(r, (t.J * t.K - t.I).cwiseAbs().maxCoeff());
  r = std::max(r, (t.K * t.I - t.J).cwiseAbs().maxCoeff());
  return r;
}

std::pair<Eigen::MatrixXd, TripleMatrices> standard_triple(int p, int q) {
  const int n = p + q;
  if (n < 1) throw std::domain_error("standard_triple: needs n >= 1");
  const int d = 4 * n;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  for (int m = 0; m < n; ++m)
    for (int t = 0; t < 4; ++t) g(4 * m + t, 4 * m + t) = (m < p) ? 1.0 : -1.0;

  // Right multiplication by i, j, k per quaternionic slot in the (w,x,y,z)
  // order; the triple carries the overall minus sign so that IJ = K.
  TripleMatrices tr{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d),
                    Eigen::MatrixXd::Zero(d, d)};
  for (int m = 0; m < n; ++m) {
    const int o = 4 * m;
    auto set = [&](Eigen::MatrixXd& M, int r, int c, double v) { M(o + r, o + c) = -v; };
    // v * i: (w,x,y,z) -> (-x, w, z, -y)
    set(tr.I, 0, 1, -1); set(tr.I, 1, 0, 1); set(tr.I, 2, 3, 1); set(tr.I, 3, 2, -1);
    // v * j: (w,x,y,z) -> (-y, -z, w, x)
    set(tr.J, 0, 2, -1); set(tr.J, 1, 3, -1); set(tr.J, 2, 0, 1); set(tr.J, 3, 1, 1);
    // v * k: (w,x,y,z) -> (-z, y, -x, w)
    set(tr.K, 0, 3, -1); set(tr.K, 1, 2, 1); set(tr.K, 2, 1, -1); set(tr.K, 3, 0, 1);
  }
  return {g, tr};
}

Riemann4 r_hp(const Eigen::MatrixXd& g, const TripleMatrices& triple) {
  const int d = static_cast<int>(g.rows());
  std::array<Eigen::MatrixXd, 3> low;
  for (int a = 1; a <= 3; ++a) low[a - 1] = lower(g, triple.at(a));

  Riemann4 lowered(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = g(j, l) * g(i, k) - g(j, k) * g(i, l);
          for (const auto& J : low)
            s += J(j, l) * J(i, k) - J(j, k) * J(i, l) + 2.0 * J(i, j) * J(k, l);
          lowered(i, j, k, l) = s;
        }
  return raise_first(lowered, g);
}

Riemann4 t_tensor(const Riemann4& R, const Eigen::MatrixXd& g, const TripleMatrices& triple) {
  const int d = R.dim();
  if (d % 4 != 0 || d < 8)
    throw std::domain_error("t_tensor: needs fiber dimension 4n with n >= 2");
  if (g.rows() != d) throw std::invalid_argument("t_tensor: dimension mismatch");
  return R - r_hp(g, triple);
}

Riemann4 t_tensor_dim4(const Riemann4& R, const Eigen::MatrixXd& g) {
  if (R.dim() != 4) throw std::domain_error("t_tensor_dim4: dimension must be 4");
  return R - constant_curvature(g, 4.0);
}

Riemann4 weyl4(const Riemann4& R, const Eigen::MatrixXd& g) {
  const int d = R.dim();
  if (d != 4) throw std::domain_error("weyl4: dimension must be 4");
  const Eigen::MatrixXd h = g.inverse();
  const Eigen::MatrixXd ric = ricci(R);
  const double sigma = (h * ric).trace();
  const Eigen::MatrixXd schouten = (ric - (sigma / (2.0 * (d - 1))) * g) / (d - 2.0);

  const Riemann4 Rlow = lower_first(R, g);
  Riemann4 Wlow(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          Wlow(i, j, k, l) = Rlow(i, j, k, l) -
                             (g(i, k) * schouten(j, l) - g(i, l) * schouten(j, k) +
                              g(j, l) * schouten(i, k) - g(j, k) * schouten(i, l));
  return raise_first(Wlow, g);
}

TripleMatrices rotate_triple(const Rot3& A, const TripleMatrices& triple) {
  TripleMatrices out = triple;
  for (int a = 1; a <= 3; ++a) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(triple.I.rows(), triple.I.cols());
    // Row a of A^T is column a of A.
    for (int b = 1; b <= 3; ++b) acc += A.m()(b - 1, a - 1) * triple.at(b);
    out.at(a) = acc;
  }
  return out;
}

Riemann4 random_algebraic_curvature(const Eigen::MatrixXd& g, Rng& rng) {
  const int d = static_cast<int>(g.rows());
  Riemann4 raw(d);
  for (auto& v : raw.data()) v = rng.uniform(-1.0, 1.0);

  // Symmetrize the lowered array over the Riemann symmetry group, then
  // project onto the kernel of the first Bianchi cyclic sum.
  Riemann4 sym(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          sym(i, j, k, l) = 0.125 * (raw(i, j, k, l) - raw(j, i, k, l) - raw(i, j, l, k) +
                                     raw(j, i, l, k) + raw(k, l, i, j) - raw(l, k, i, j) -
                                     raw(k, l, j, i) + raw(l, k, j, i));
  Riemann4 proj(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double b = sym(i, j, k, l) + sym(i, k, l, j) + sym(i, l, j, k);
          proj(i, j, k, l) = sym(i, j, k, l) - b / 3.0;
        }
  return raise_first(proj, g);
}

Riemann4 einstein_normalize(const Riemann4& R, const Eigen::MatrixXd& g, double c) {
  const int d = R.dim();
  const Eigen::MatrixXd h = g.inverse();
  const Eigen::MatrixXd ric = ricci(R);
  const Eigen::MatrixXd B = c * g - ric;
  const double trB = (h * B).trace();
  const Eigen::MatrixXd hcorr = (B - (trB / (2.0 * d - 2.0)) * g) / (d - 2.0);

  // Kulkarni-Nomizu product of g and hcorr, first index raised; its Ricci
  // is (d-2) hcorr + tr(hcorr) g.
  const Eigen::MatrixXd hmix = h * hcorr;  // hcorr^i_j
  Riemann4 out = R;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          out(i, j, k, l) += hcorr(j, l) * (i == k) - hcorr(j, k) * (i == l) +
                             g(j, l) * hmix(i, k) - g(j, k) * hmix(i, l);
  return out;
}

Riemann4 conjugate_riemann(const Riemann4& R, const Eigen::MatrixXd& S) {
  const int d = R.dim();
  const Eigen::MatrixXd Sinv = S.inverse();
  // One index per pass keeps this O(d^5).
  Riemann4 t1(d), t2(d), t3(d), out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0;
          for (int m = 0; m < d; ++m) s += Sinv(i, m) * R(m, j, k, l);
          t1(i, j, k, l) = s;
        }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0;
          for (int m = 0; m < d; ++m) s += t1(i, m, k, l) * S(m, j);
          t2(i, j, k, l) = s;
        }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0;
          for (int m = 0; m < d; ++m) s += t2(i, j, m, l) * S(m, k);
          t3(i, j, k, l) = s;
        }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0;
          for (int m = 0; m < d; ++m) s += t3(i, j, k, m) * S(m, l);
          out(i, j, k, l) = s;
        }
  return out;
}

InvarianceOutcome t_invariance_check(const Riemann4& R, const Eigen::MatrixXd& g,
                                     const TripleMatrices& triple, int trials,
                                     std::uint64_t seed, double tol_rot, double tol_cov) {
  InvarianceOutcome out;
  const Riemann4 T = t_tensor(R, g, triple);
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
    const Rot3 A = ad_matrix(rng.unit_quaternion());
    const Riemann4 Trot = t_tensor(R, g, rotate_triple(A, triple));
    out.rotation_residual = std::max(out.rotation_residual, (T - Trot).max_abs());
  }
  const int d = R.dim();
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed ^ 0x5eedbeef, static_cast<std::uint64_t>(t));
    // Well-conditioned basis change (condition number < 10): identity plus
    // a random part scaled to keep the perturbation norm below 1/2.
    Eigen::MatrixXd S;
    while (true) {
      S = Eigen::MatrixXd::Identity(d, d);
      const double amp = 0.3 / std::sqrt(static_cast<double>(d));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) S(i, j) += amp * rng.uniform(-1.0, 1.0);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(S);
      if (svd.singularValues()(0) / svd.singularValues()(d - 1) < 10.0) break;
    }
    const Eigen::MatrixXd Sinv = S.inverse();
    const Eigen::MatrixXd gS = S.transpose() * g * S;
    TripleMatrices tS{Sinv * triple.I * S, Sinv * triple.J * S, Sinv * triple.K * S};
    const Riemann4 RS = conjugate_riemann(R, S);
    const Riemann4 TS = t_tensor(RS, gS, tS);
    const Riemann4 T_conj = conjugate_riemann(T, S);
    out.covariance_residual = std::max(out.covariance_residual, (TS - T_conj).max_abs());
  }
  out.pass = out.rotation_residual <= tol_rot && out.covariance_residual <= tol_cov;
  return out;
}

}  // namespace qcr
