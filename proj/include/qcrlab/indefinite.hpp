#pragma once

/// Quaternionic vectors and matrices carrying an indefinite Hermitian form
///   <x,y> = sum_{+} xbar_i y_i - sum_{-} xbar_j y_j
/// of signature (r, s), plus membership tests and generators for Sp(r, s).
///
/// Matrices act on column vectors from the left; scalars multiply from the
/// right.  eta = diag(+1 x r, -1 x s) with positive slots first.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qcrlab/quaternion.hpp"
#include "qcrlab/rng.hpp"

namespace qcr {

struct Signature {
  int r{0};  // positive slots
  int s{0};  // negative slots

  Signature(int r_, int s_) : r(r_), s(s_) {
    if (r < 0 || s < 0 || r + s < 1) throw std::domain_error("Signature: need r,s >= 0, r+s >= 1");
  }
  int dim() const { return r + s; }
  /// eta entry for slot i.
  double eta(int i) const { return i < r ? 1.0 : -1.0; }
  bool operator==(const Signature&) const = default;
};

class QVector {
 public:
  QVector(Signature sig, std::vector<Quaternion> coords)
      : sig_(sig), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != sig_.dim())
      throw std::invalid_argument("QVector: coordinate count does not match signature");
  }
  static QVector zero(Signature sig) {
    return QVector(sig, std::vector<Quaternion>(sig.dim()));
  }
  static QVector basis(Signature sig, int i) {
    QVector v = zero(sig);
    v.c_[i] = Quaternion(1);
    return v;
  }

  const Signature& sig() const { return sig_; }
  int dim() const { return sig_.dim(); }
  const Quaternion& operator[](int i) const { return c_[i]; }
  Quaternion& operator[](int i) { return c_[i]; }

  QVector operator+(const QVector& o) const {
    check_sig(o);
    QVector r = *this;
    for (int i = 0; i < dim(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  QVector operator-(const QVector& o) const {
    check_sig(o);
    QVector r = *this;
    for (int i = 0; i < dim(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  QVector operator-() const {
    QVector r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }
  /// Right scalar multiplication x * lambda.
  QVector operator*(const Quaternion& lambda) const {
    QVector r = *this;
    for (auto& q : r.c_) q = q * lambda;
    return r;
  }
  QVector operator*(double s) const {
    QVector r = *this;
    for (auto& q : r.c_) q = q * s;
    return r;
  }

  /// Euclidean norm of the 4m real coordinates (a residual norm, not the
  /// indefinite form).
  double euclid_norm() const {
    double n = 0;
    for (const auto& q : c_) n += q.norm_sq();
    return std::sqrt(n);
  }

  void check_sig(const QVector& o) const {
    if (!(sig_ == o.sig_)) throw std::invalid_argument("QVector: signature mismatch");
  }

 private:
  Signature sig_;
  std::vector<Quaternion> c_;
};

/// <x,y> = sum eta_i xbar_i y_i.  Conjugate-linear in x, linear in y:
/// <x lam, y> = lambar <x,y>, <x, y lam> = <x,y> lam.
Quaternion herm(const QVector& x, const QVector& y);

/// Re<x,y>: the nondegenerate symmetric real bilinear form g^H.
double re_form(const QVector& x, const QVector& y);

class QMatrix {
 public:
  QMatrix(Signature sig, std::vector<Quaternion> entries)
      : sig_(sig), m_(sig.dim()), e_(std::move(entries)) {
    if (static_cast<int>(e_.size()) != m_ * m_)
      throw std::invalid_argument("QMatrix: entry count does not match signature");
  }
  static QMatrix zero(Signature sig) {
    return QMatrix(sig, std::vector<Quaternion>(sig.dim() * sig.dim()));
  }
  static QMatrix identity(Signature sig) {
    QMatrix m = zero(sig);
    for (int i = 0; i < m.m_; ++i) m(i, i) = Quaternion(1);
    return m;
  }

  const Signature& sig() const { return sig_; }
  int dim() const { return m_; }
  Quaternion& operator()(int i, int j) { return e_[i * m_ + j]; }
  const Quaternion& operator()(int i, int j) const { return e_[i * m_ + j]; }

  QMatrix operator*(const QMatrix& o) const;
  QVector operator*(const QVector& v) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix scaled(double s) const;

  /// Conjugate transpose M*.
  QMatrix star() const;

  double max_entry_norm() const;

 private:
  Signature sig_;
  int m_;
  std::vector<Quaternion> e_;
};

/// True iff max-entry residual of M* eta M - eta is at most tol.
bool is_sp(const QMatrix& M, double tol);
double sp_residual(const QMatrix& M);

/// Projection onto the Lie algebra sp(r,s): Y = (X - eta X* eta)/2 satisfies
/// Y* eta + eta Y = 0 exactly; fixes X when X is already in the algebra.
QMatrix sp_algebra_project(const QMatrix& X);

double sp_algebra_residual(const QMatrix& X);

/// Matrix exponential through the realified 4m x 4m representation
/// (scaling-and-squaring, truncated series).  Requires X* eta + eta X = 0
/// within 1e-12; the result passes is_sp at 1e-9.
QMatrix sp_exp(const QMatrix& X);

/// exp of a projected random algebra element with entries uniform in [-1,1]
/// scaled by 0.5; always well inside the group.
QMatrix random_sp(Signature sig, Rng& rng);

}  // namespace qcr
