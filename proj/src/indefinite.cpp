#include "qcrlab/indefinite.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace qcr {

Quaternion herm(const QVector& x, const QVector& y) {
  x.check_sig(y);
  Quaternion acc;
  for (int i = 0; i < x.dim(); ++i)
    acc += x.sig().eta(i) * (x[i].conj() * y[i]);
  return acc;
}

double re_form(const QVector& x, const QVector& y) {
  x.check_sig(y);
  double acc = 0;
  for (int i = 0; i < x.dim(); ++i) {
    const Quaternion &a = x[i], &b = y[i];
    acc += x.sig().eta(i) * (a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z);
  }
  return acc;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (!(sig_ == o.sig_)) throw std::invalid_argument("QMatrix: signature mismatch");
  QMatrix r = zero(sig_);
  for (int i = 0; i < m_; ++i)
    for (int k = 0; k < m_; ++k) {
      const Quaternion& a = (*this)(i, k);
      if (a == Quaternion{}) continue;
      for (int j = 0; j < m_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

QVector QMatrix::operator*(const QVector& v) const {
  if (!(sig_ == v.sig())) throw std::invalid_argument("QMatrix: signature mismatch");
  QVector r = QVector::zero(sig_);
  for (int i = 0; i < m_; ++i) {
    Quaternion acc;
    for (int j = 0; j < m_; ++j) acc += (*this)(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  QMatrix r = *this;
  for (int i = 0; i < m_ * m_; ++i) r.e_[i] += o.e_[i];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  QMatrix r = *this;
  for (int i = 0; i < m_ * m_; ++i) r.e_[i] -= o.e_[i];
  return r;
}

QMatrix QMatrix::scaled(double s) const {
  QMatrix r = *this;
  for (auto& q : r.e_) q = q * s;
  return r;
}

QMatrix QMatrix::star() const {
  QMatrix r = zero(sig_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) r(i, j) = (*this)(j, i).conj();
  return r;
}

double QMatrix::max_entry_norm() const {
  double m = 0;
  for (const auto& q : e_) m = std::max(m, q.norm());
  return m;
}

namespace {

QMatrix eta_conjugate(const QMatrix& X) {
  // eta X eta with eta = diag(+-1).
  QMatrix r = X;
  for (int i = 0; i < X.dim(); ++i)
    for (int j = 0; j < X.dim(); ++j)
      r(i, j) = X(i, j) * (X.sig().eta(i) * X.sig().eta(j));
  return r;
}

}  // namespace

double sp_residual(const QMatrix& M) {
  // M* eta M - eta, max entry norm.
  const int m = M.dim();
  const QMatrix Ms = M.star();
  double res = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Quaternion acc;
      for (int k = 0; k < m; ++k) acc += Ms(i, k) * M(k, j) * M.sig().eta(k);
      if (i == j) acc -= Quaternion(M.sig().eta(i));
      res = std::max(res, acc.norm());
    }
  return res;
}

bool is_sp(const QMatrix& M, double tol) { return sp_residual(M) <= tol; }

QMatrix sp_algebra_project(const QMatrix& X) {
  return (X - eta_conjugate(X.star())).scaled(0.5);
}

double sp_algebra_residual(const QMatrix& X) {
  const int m = X.dim();
  const QMatrix Xs = X.star();
  double res = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      // (X* eta + eta X)_{ij}
      const Quaternion acc = Xs(i, j) * X.sig().eta(j) + X(i, j) * X.sig().eta(i);
      res = std::max(res, acc.norm());
    }
  return res;
}

namespace {

// Realification M_m(H) -> M_{4m}(R): each entry q becomes the 4x4 matrix of
// left multiplication by q in the (w,x,y,z) coordinate order.  This is an
// R-algebra homomorphism, so exp commutes with it.
Eigen::MatrixXd realify(const QMatrix& X) {
  const int m = X.dim();
  Eigen::MatrixXd R(4 * m, 4 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Quaternion& q = X(i, j);
      R.block<4, 4>(4 * i, 4 * j) << q.w, -q.x, -q.y, -q.z,
                                     q.x,  q.w, -q.z,  q.y,
                                     q.y,  q.z,  q.w, -q.x,
                                     q.z, -q.y,  q.x,  q.w;
    }
  return R;
}

QMatrix derealify(const Eigen::MatrixXd& R, Signature sig) {
  QMatrix X = QMatrix::zero(sig);
  for (int i = 0; i < sig.dim(); ++i)
    for (int j = 0; j < sig.dim(); ++j)
      X(i, j) = Quaternion{R(4 * i, 4 * j), R(4 * i + 1, 4 * j),
                           R(4 * i + 2, 4 * j), R(4 * i + 3, 4 * j)};
  return X;
}

}  // namespace

QMatrix sp_exp(const QMatrix& X) {
  if (sp_algebra_residual(X) > 1e-12)
    throw std::domain_error("sp_exp: argument is not in the Lie algebra sp(r,s)");
  Eigen::MatrixXd A = realify(X);
  int squarings = 0;
  double n = A.cwiseAbs().rowwise().sum().maxCoeff();
  while (n > 0.5) {
    n *= 0.5;
    ++squarings;
  }
  A /= std::pow(2.0, squarings);
  const int dim = static_cast<int>(A.rows());
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = (term * A) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return derealify(sum, X.sig());
}

QMatrix random_sp(Signature sig, Rng& rng) {
  QMatrix X = QMatrix::zero(sig);
  for (int i = 0; i < sig.dim(); ++i)
    for (int j = 0; j < sig.dim(); ++j) X(i, j) = rng.quaternion_box(1.0) * 0.5;
  return sp_exp(sp_algebra_project(X));
}

}  // namespace qcr
