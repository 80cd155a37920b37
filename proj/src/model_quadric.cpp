#include "qcrlab/model_quadric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>

namespace qcr {

namespace {

Signature ambient_sig(int p, int q) { return Signature(p + 1, q); }

double comp(const Quaternion& h, int a) { return h.im_part(a); }

}  // namespace

CalibrationConstants golden_calibration() { return CalibrationConstants{-1.0, 0.5, 1.0}; }

QuadricPoint random_point(int p, int q, Rng& rng) {
  const Signature sig = ambient_sig(p, q);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    QVector y = QVector::zero(sig);
    for (int i = 0; i < sig.dim(); ++i) y[i] = rng.quaternion_box(1.0);
    const double Q = re_form(y, y);
    if (Q > 0.1) return QuadricPoint(y * (1.0 / std::sqrt(Q)));
  }
  throw std::runtime_error("random_point: could not draw a positive-norm vector");
}

std::optional<QuadricPoint> validate_point(const QVector& x, std::string* reason) {
  const double Q = re_form(x, x);
  if (std::abs(Q - 1.0) > 1e-9) {
    if (reason) {
      std::ostringstream os;
      os << "re_form(x,x) = " << Q << " deviates from 1";
      *reason = os.str();
    }
    return std::nullopt;
  }
  // Renormalize the small residual so downstream tolerances stay sharp.
  return QuadricPoint(x * (1.0 / std::sqrt(Q)));
}

TangentVector xi_field(const QuadricPoint& x, int a) {
  return TangentVector(x, x.x() * Quaternion::unit(a));
}

Quaternion omega0(const QuadricPoint& x, const QVector& v, const CalibrationConstants& cal) {
  // s_omega * (-<x,v>); the calibrated s_omega = -1 makes omega_0 = +<x,dx>.
  return (-cal.s_omega) * herm(x.x(), v);
}

double omega_comp(const QuadricPoint& x, const QVector& v, const CalibrationConstants& cal,
                  int a) {
  return comp(omega0(x, v, cal), a);
}

Quaternion d_omega0(const QVector& u, const QVector& v, const CalibrationConstants& cal) {
  const Quaternion huv = herm(u, v);
  return (-cal.s_omega) * cal.c_wedge * (huv - huv.conj());
}

QVector project_D(const QuadricPoint& x, const QVector& v) {
  QVector w = v - x.x() * re_form(x.x(), v);
  for (int a = 1; a <= 3; ++a) {
    const QVector xi = xi_field(x, a).v();
    w = w - xi * re_form(xi, v);
  }
  return w;
}

DFrame build_dframe(const QuadricPoint& x, Rng& rng) {
  const int n = x.n();
  const Signature sig = x.sig();
  const int p = sig.r - 1, q = sig.s;
  if (n < 1) throw std::domain_error("build_dframe: needs n >= 1");

  std::vector<QVector> basis;      // quaternionic H-orthonormal vectors of D
  std::vector<double> signs;       // herm(b,b) = +-1
  int have_pos = 0, have_neg = 0;

  // Candidate stream: standard coordinate directions first (they carry the
  // right signs near standard points), then random vectors.
  int coord = 0;
  int retries = 0;
  while (have_pos < p || have_neg < q) {
    QVector cand = QVector::zero(sig);
    if (coord < sig.dim()) {
      cand = QVector::basis(sig, coord++);
    } else {
      for (int i = 0; i < sig.dim(); ++i) cand[i] = rng.quaternion_box(1.0);
    }
    // Project to D, then H-orthogonalize against accepted vectors.
    QVector w = project_D(x, cand);
    for (size_t m = 0; m < basis.size(); ++m)
      w = w - basis[m] * (signs[m] * herm(basis[m], w));
    const double nn = herm(w, w).re();  // <w,w> is real
    if (std::abs(nn) < 1e-8) {
      if (++retries > 100) throw std::runtime_error("build_dframe: isotropic pivot persisted");
      continue;
    }
    if (nn > 0 && have_pos < p) {
      basis.push_back(w * (1.0 / std::sqrt(nn)));
      signs.push_back(1.0);
      ++have_pos;
    } else if (nn < 0 && have_neg < q) {
      basis.push_back(w * (1.0 / std::sqrt(-nn)));
      signs.push_back(-1.0);
      ++have_neg;
    } else if (++retries > 100) {
      throw std::runtime_error("build_dframe: could not fill both signature pools");
    }
  }

  // Order positive quadruples first, expand each H-basis vector into
  // (b, b i, b j, b k).
  DFrame fr{x, {}};
  for (double want : {1.0, -1.0})
    for (size_t m = 0; m < basis.size(); ++m) {
      if (signs[m] != want) continue;
      fr.e.push_back(basis[m]);
      fr.e.push_back(basis[m] * Quaternion::i());
      fr.e.push_back(basis[m] * Quaternion::j());
      fr.e.push_back(basis[m] * Quaternion::k());
    }
  return fr;
}

namespace {

// Lowered right-multiplication matrices in a D-frame with natural lowering:
// Jt^a_{ij} = g(e_i, e_j e_a).
std::array<Eigen::MatrixXd, 3> frame_j_lowered(const DFrame& fr) {
  const int m = fr.size();
  std::array<Eigen::MatrixXd, 3> J{Eigen::MatrixXd(m, m), Eigen::MatrixXd(m, m),
                                   Eigen::MatrixXd(m, m)};
  for (int a = 1; a <= 3; ++a)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        J[a - 1](i, j) = re_form(fr.e[i], fr.e[j] * Quaternion::unit(a));
  return J;
}

// theta-coefficients of a tangent vector in the frame: v = sum theta^i e_i
// + vertical part; theta^i = eta_i g(e_i, v) in the g-orthonormal frame.
std::vector<double> theta_coeffs(const DFrame& fr, const QVector& v) {
  const int m = fr.size();
  std::vector<double> c(m);
  for (int i = 0; i < m; ++i) {
    const double gii = re_form(fr.e[i], fr.e[i]);  // +-1
    c[i] = re_form(fr.e[i], v) / gii;
  }
  return c;
}

struct PairBasis {
  std::vector<QVector> vecs;  // xi_1, xi_2, xi_3, frame...
};

PairBasis pair_basis(const QuadricPoint& x, const DFrame& fr) {
  PairBasis b;
  for (int a = 1; a <= 3; ++a) b.vecs.push_back(xi_field(x, a).v());
  for (const auto& e : fr.e) b.vecs.push_back(e);
  return b;
}

}  // namespace

CheckOutcome verify_structure_eq(const QuadricPoint& x, const DFrame& frame,
                                 const CalibrationConstants& cal, double tol) {
  const auto J = frame_j_lowered(frame);
  const PairBasis basis = pair_basis(x, frame);
  const int m = static_cast<int>(basis.vecs.size());
  double worst = 0;
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) {
      const QVector &U = basis.vecs[u], &V = basis.vecs[v];
      const Quaternion om_u = omega0(x, U, cal), om_v = omega0(x, V, cal);
      const Quaternion lhs =
          d_omega0(U, V, cal) + cal.c_wedge * (om_u * om_v - om_v * om_u);
      const auto tu = theta_coeffs(frame, U), tv = theta_coeffs(frame, V);
      Quaternion rhs{};
      for (int a = 1; a <= 3; ++a) {
        double s = 0;
        for (int i = 0; i < frame.size(); ++i)
          for (int j = 0; j < frame.size(); ++j)
            s += J[a - 1](i, j) * cal.c_wedge * (tu[i] * tv[j] - tu[j] * tv[i]);
        rhs += Quaternion::unit(a) * (cal.c_quad * s);
      }
      worst = std::max(worst, (lhs + rhs).norm());
    }
  return CheckOutcome{worst <= tol, worst, m * (m - 1) / 2, ""};
}

CalibrationSweep calibrate(int p, int q, std::uint64_t seed) {
  CalibrationSweep out;
  int found = 0;
  for (double s : {1.0, -1.0})
    for (double c : {0.5, 1.0})
      for (double cq : {1.0, -1.0, 2.0, -2.0}) {
        const CalibrationConstants cal{s, c, cq};
        Rng rng = Rng::derive(seed, 0xCA1);
        bool ok = true;
        for (int trial = 0; trial < 3 && ok; ++trial) {
          const QuadricPoint x = random_point(p, q, rng);
          // (i) canonical values omega_0(xi_a) = e_a
          for (int a = 1; a <= 3; ++a) {
            const Quaternion w = omega0(x, xi_field(x, a).v(), cal);
            if ((w - Quaternion::unit(a)).norm() > 1e-9) ok = false;
          }
          if (!ok) break;
          const DFrame fr = build_dframe(x, rng);
          // (ii) |d omega_1(v, v i)| = |g(v,v)| for v in D
          const QVector& v = fr.e[0];
          const double lhs = comp(d_omega0(v, v * Quaternion::i(), cal), 1);
          const double g_vv = re_form(v, v);
          if (std::abs(std::abs(lhs) - std::abs(g_vv)) > 1e-9) ok = false;
          // (iii) structure equation
          if (ok && !verify_structure_eq(x, fr, cal, 1e-9).pass) ok = false;
        }
        if (ok) {
          ++found;
          out.constants = cal;
        }
      }
  out.consistent_count = found;
  return out;
}

CheckOutcome lie_derivative_check(const QuadricPoint& x, const DFrame& frame,
                                  const CalibrationConstants& cal, double tol) {
  const PairBasis basis = pair_basis(x, frame);
  double worst = 0;
  // L_{xi_a} omega_b (v) = d omega_b (xi_a, v): omega_b(xi_a) is constant on
  // the quadric so the d iota term vanishes identically.
  for (int a = 1; a <= 3; ++a) {
    const QVector xi = xi_field(x, a).v();
    for (int b = 1; b <= 3; ++b) {
      // Expected: 0 when b == a; +omega_c when (a,b,c) cyclic; -omega_c when
      // (b,a,c) cyclic.
      int c = 0;
      double sign = 0;
      if (b != a) {
        c = 6 - a - b;
        const bool cyclic = (b - a + 3) % 3 == 1;  // (a,b) consecutive in (1,2,3)
        sign = cyclic ? 1.0 : -1.0;
      }
      for (const QVector& v : basis.vecs) {
        const double lie = comp(d_omega0(xi, v, cal), b);
        const double expected = (b == a) ? 0.0 : sign * omega_comp(x, v, cal, c);
        worst = std::max(worst, std::abs(lie - expected));
      }
    }
  }
  return CheckOutcome{worst <= tol, worst, static_cast<int>(basis.vecs.size()) * 9, ""};
}

CheckOutcome xi_bracket_check(const QuadricPoint& x, double tol) {
  double worst = 0;
  for (int a = 1; a <= 3; ++a) {
    const int b = a % 3 + 1, c = b % 3 + 1;
    // [V_q, V_r] = V_{qr - rq} for the linear fields V_q(x) = x q.
    const Quaternion br = commutator(Quaternion::unit(a), Quaternion::unit(b));
    const QVector lhs = x.x() * br;
    const QVector rhs = xi_field(x, c).v() * 2.0;
    worst = std::max(worst, (lhs - rhs).euclid_norm());
  }
  return CheckOutcome{worst <= tol, worst, 3, ""};
}

// ---------------------------------------------------------------------------
// Nijenhuis machinery: ambient-extended fields and finite-difference
// brackets.

namespace {

// Smooth ambient extension near Sigma of the projection onto Null
// omega_alpha (alpha = 0 projects onto D).
QVector project_null_alpha(const QVector& x, const QVector& v, int alpha) {
  const double n2 = re_form(x, x);
  QVector w = v - x * (re_form(x, v) / n2);
  for (int a = 1; a <= 3; ++a) {
    if (alpha != 0 && a != alpha) continue;
    const QVector xi = x * Quaternion::unit(a);
    w = w - xi * (re_form(xi, w) / n2);
  }
  return w;
}

// Jbar_alpha at ambient point x applied to a vector in Null omega_alpha:
// D-part multiplies by e_alpha on the right, xi_beta -> xi_gamma,
// xi_gamma -> -xi_beta.
QVector jbar_alpha(const QVector& x, const QVector& v, int alpha) {
  const int beta = alpha % 3 + 1, gamma = beta % 3 + 1;
  const double n2 = re_form(x, x);
  const QVector xib = x * Quaternion::unit(beta);
  const QVector xig = x * Quaternion::unit(gamma);
  const double cb = re_form(xib, v) / n2, cg = re_form(xig, v) / n2;
  const QVector d_part = v - xib * cb - xig * cg;
  // On D the axiom structure maps are minus right multiplication.
  return -(d_part * Quaternion::unit(alpha)) + xig * cb - xib * cg;
}

using AmbientField = std::function<QVector(const QVector&)>;

// [X, Y] = DY[X] - DX[Y] with central differences in the ambient space.
QVector fd_bracket(const AmbientField& X, const AmbientField& Y, const QVector& x0, double h) {
  const QVector Xv = X(x0), Yv = Y(x0);
  const QVector dYdX = (Y(x0 + Xv * h) - Y(x0 - Xv * h)) * (1.0 / (2.0 * h));
  const QVector dXdY = (X(x0 + Yv * h) - X(x0 - Yv * h)) * (1.0 / (2.0 * h));
  return dYdX - dXdY;
}

QVector nijenhuis_fd(const AmbientField& X, const AmbientField& Y, const QVector& x0, int alpha,
                     double h) {
  auto JX = [&](const QVector& x) { return jbar_alpha(x, X(x), alpha); };
  auto JY = [&](const QVector& x) { return jbar_alpha(x, Y(x), alpha); };
  const QVector t1 = fd_bracket(JX, JY, x0, h);
  const QVector t2 = fd_bracket(X, Y, x0, h);
  const QVector t3 = jbar_alpha(x0, fd_bracket(JX, Y, x0, h), alpha);
  const QVector t4 = jbar_alpha(x0, fd_bracket(X, JY, x0, h), alpha);
  return t1 - t2 - t3 - t4;
}

AmbientField extend_null_alpha(const QVector& v0, int alpha) {
  return [v0, alpha](const QVector& x) { return project_null_alpha(x, v0, alpha); };
}

// Second extension of the same tangent vector: scaled by a linear bump that
// equals 1 at the base point.  N is tensorial, so values at the base point
// must agree.
AmbientField extend_null_alpha_bump(const QVector& v0, int alpha, const QVector& x0,
                                    const QVector& dir) {
  return [v0, alpha, x0, dir](const QVector& x) {
    const double bump = 1.0 + 0.5 * re_form(dir, x - x0);
    return project_null_alpha(x, v0 * bump, alpha);
  };
}

}  // namespace

NijenhuisOutcome nijenhuis_check(const QuadricPoint& x, int alpha, int samples, double h,
                                 double tol, const CalibrationConstants& cal, Rng& rng) {
  (void)cal;
  NijenhuisOutcome out;
  double worst = 0, worst_dev = 0;
  const QVector& x0 = x.x();
  for (int s = 0; s < samples; ++s) {
    QVector a = QVector::zero(x.sig()), b = QVector::zero(x.sig());
    for (int i = 0; i < x.sig().dim(); ++i) {
      a[i] = rng.quaternion_box(1.0);
      b[i] = rng.quaternion_box(1.0);
    }
    const QVector v = project_null_alpha(x0, a, alpha);
    const QVector w = project_null_alpha(x0, b, alpha);

    const AmbientField X = extend_null_alpha(v, alpha);
    const AmbientField Y = extend_null_alpha(w, alpha);
    const QVector N = nijenhuis_fd(X, Y, x0, alpha, h);
    worst = std::max(worst, N.euclid_norm());

    // Y = Jbar X degenerate pair.
    const QVector jv = jbar_alpha(x0, v, alpha);
    const QVector Njx = nijenhuis_fd(X, extend_null_alpha(jv, alpha), x0, alpha, h);
    worst = std::max(worst, Njx.euclid_norm());

    // Tensoriality: a different extension of the same vectors.
    QVector dir = QVector::zero(x.sig());
    for (int i = 0; i < x.sig().dim(); ++i) dir[i] = rng.quaternion_box(1.0);
    const AmbientField X2 = extend_null_alpha_bump(v, alpha, x0, dir);
    const QVector N2 = nijenhuis_fd(X2, Y, x0, alpha, h);
    worst_dev = std::max(worst_dev, (N - N2).euclid_norm());
  }
  out.tensor = CheckOutcome{worst <= tol, worst, samples, ""};
  out.extension_deviation = worst_dev;
  return out;
}

// ---------------------------------------------------------------------------
// Complexified bracket type on D^{1,0}.

namespace {

struct CVec {
  QVector re, im;
  CVec(const QVector& r, const QVector& i) : re(r), im(i) {}
};

CVec cvec_scale(const CVec& v, std::complex<double> mu) {
  return CVec(v.re * std::real(mu) - v.im * std::imag(mu),
              v.im * std::real(mu) + v.re * std::imag(mu));
}

CVec cvec_sub(const CVec& a, const CVec& b) { return CVec(a.re - b.re, a.im - b.im); }

std::complex<double> c_omega_comp(const QuadricPoint& x, const CVec& v,
                                  const CalibrationConstants& cal, int a) {
  return {omega_comp(x, v.re, cal, a), omega_comp(x, v.im, cal, a)};
}

std::complex<double> c_domega_comp(const CVec& u, const CVec& v, const CalibrationConstants& cal,
                                   int a) {
  const double rr = comp(d_omega0(u.re, v.re, cal), a);
  const double ii = comp(d_omega0(u.im, v.im, cal), a);
  const double ri = comp(d_omega0(u.re, v.im, cal), a);
  const double ir = comp(d_omega0(u.im, v.re, cal), a);
  return {rr - ii, ri + ir};
}

}  // namespace

namespace {

// Ambient extension of a D^{1,0} vector that stays in D^{1,0} pointwise:
// project both components to D, then apply (1 - i Jbar_1)/2 at each point.
std::pair<AmbientField, AmbientField> extend_d10(const QVector& re0, const QVector& im0) {
  AmbientField re = [re0, im0](const QVector& x) {
    const QVector pr = project_null_alpha(x, re0, 0);
    const QVector pi = project_null_alpha(x, im0, 0);
    return (pr + jbar_alpha(x, pi, 1)) * 0.5;
  };
  AmbientField im = [re0, im0](const QVector& x) {
    const QVector pr = project_null_alpha(x, re0, 0);
    const QVector pi = project_null_alpha(x, im0, 0);
    return (pi - jbar_alpha(x, pr, 1)) * 0.5;
  };
  return {re, im};
}

}  // namespace

CheckOutcome bracket_type_check(const QuadricPoint& x, int samples, double h, double tol,
                                const CalibrationConstants& cal, Rng& rng) {
  const QVector& x0 = x.x();
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    auto draw = [&] {
      QVector a = QVector::zero(x.sig());
      for (int i = 0; i < x.sig().dim(); ++i) a[i] = rng.quaternion_box(1.0);
      const QVector v = project_null_alpha(x0, a, 0);
      return CVec(v, -jbar_alpha(x0, v, 1));  // v - i J1 v at the base point
    };
    const CVec X = draw(), Y = draw();

    auto [Xr, Xi] = extend_d10(X.re, X.im);
    auto [Yr, Yi] = extend_d10(Y.re, Y.im);
    const QVector Brr = fd_bracket(Xr, Yr, x0, h);
    const QVector Bii = fd_bracket(Xi, Yi, x0, h);
    const QVector Bri = fd_bracket(Xr, Yi, x0, h);
    const QVector Bir = fd_bracket(Xi, Yr, x0, h);
    const CVec B(Brr - Bii, Bri + Bir);

    const std::complex<double> c1 = c_omega_comp(x, B, cal, 1);
    const std::complex<double> c2 = c_omega_comp(x, B, cal, 2);
    const std::complex<double> c3 = c_omega_comp(x, B, cal, 3);
    const std::complex<double> I(0, 1);

    // The vertical part of [X,Y] lies in the complex line C (xi_2 - i xi_3):
    // the xi_1 coefficient vanishes, the xi_3 coefficient is -i times the
    // xi_2 coefficient a, and a = -2 d omega_2(X,Y) in closed form.  For
    // generic pairs a is complex; realness holds only in the converse
    // direction tested below.
    worst = std::max(worst, std::abs(c1));
    worst = std::max(worst, std::abs(c3 + I * c2));
    const std::complex<double> a_closed = -2.0 * c_domega_comp(X, Y, cal, 2);
    worst = std::max(worst, std::abs(c2 - a_closed));

    auto bracket_of = [&](const CVec& U, const CVec& V) {
      auto [Ur, Ui] = extend_d10(U.re, U.im);
      auto [Vr, Vi] = extend_d10(V.re, V.im);
      const QVector rr = fd_bracket(Ur, Vr, x0, h);
      const QVector ii = fd_bracket(Ui, Vi, x0, h);
      const QVector ri = fd_bracket(Ur, Vi, x0, h);
      const QVector ir = fd_bracket(Ui, Vr, x0, h);
      return CVec(rr - ii, ri + ir);
    };

    if (std::abs(a_closed) > 1e-6) {
      // Converse: rescaling Y realizes any prescribed real a, and the
      // bracket recovers it.
      const double a_target = 1.5;
      const CVec Ys = cvec_scale(Y, std::complex<double>(a_target) / a_closed);
      const std::complex<double> a_rec = c_omega_comp(x, bracket_of(X, Ys), cal, 2);
      worst = std::max(worst, std::abs(a_rec - std::complex<double>(a_target)));
      worst = std::max(worst, std::abs(std::imag(a_rec)));

      // A pair with d omega_2(X, Y'') = 0 brackets to a vanishing
      // coefficient.
      const CVec Z = draw();
      const std::complex<double> dz = -2.0 * c_domega_comp(X, Z, cal, 2);
      if (std::abs(dz) > 1e-6) {
        const CVec Yzero = cvec_sub(Y, cvec_scale(Z, a_closed / dz));
        const std::complex<double> a_zero = c_omega_comp(x, bracket_of(X, Yzero), cal, 2);
        worst = std::max(worst, std::abs(a_zero));
      }
    }

    // D-part lies in the +i eigenspace of J1.
    QVector ur = B.re, ui = B.im;
    for (int a = 1; a <= 3; ++a) {
      const QVector xi = xi_field(x, a).v();
      const std::complex<double> ca = c_omega_comp(x, B, cal, a);
      ur = ur - xi * std::real(ca);
      ui = ui - xi * std::imag(ca);
    }
    const QVector jur = jbar_alpha(x0, ur, 1), jui = jbar_alpha(x0, ui, 1);
    // J1 u = i u  <=>  (jur, jui) = (-ui, ur)
    worst = std::max(worst, (jur + ui).euclid_norm());
    worst = std::max(worst, (jui - ur).euclid_norm());

    // Degenerate pair [X, X] = 0.
    const QVector Bxx = fd_bracket(Xr, Xr, x0, h);
    worst = std::max(worst, Bxx.euclid_norm());
  }
  return CheckOutcome{worst <= tol, worst, samples, ""};
}

// ---------------------------------------------------------------------------
// Chart and jet metric pipeline.

Chart::Chart(const QuadricPoint& x0, const DFrame& frame, bool normalize)
    : x0_(x0), normalize_(normalize) {
  for (int a = 1; a <= 3; ++a) basis_.push_back(xi_field(x0, a).v());
  for (const auto& e : frame.e) basis_.push_back(e);
  const Signature sig = x0.sig();
  for (int i = 0; i < sig.dim(); ++i)
    for (int t = 0; t < 4; ++t) w_.push_back(sig.eta(i));
}

QuadricPoint Chart::at(const std::vector<double>& u) const {
  double un = 0;
  for (double c : u) un += c * c;
  if (std::sqrt(un) > 0.1 + 1e-15) throw std::domain_error("Chart: |u| exceeds 0.1");
  QVector y = x0_.x();
  for (size_t m = 0; m < basis_.size(); ++m) y = y + basis_[m] * u[m];
  const double Q = re_form(y, y);
  if (Q <= 1e-6) throw std::domain_error("Chart: radicand not positive (out of chart)");
  if (!normalize_) throw std::domain_error("Chart: affine charts have no quadric point");
  return QuadricPoint(y * (1.0 / std::sqrt(Q)));
}

namespace {

std::vector<double> flatten(const QVector& v) {
  std::vector<double> out;
  out.reserve(4 * v.dim());
  for (int i = 0; i < v.dim(); ++i) {
    out.push_back(v[i].w);
    out.push_back(v[i].x);
    out.push_back(v[i].y);
    out.push_back(v[i].z);
  }
  return out;
}

}  // namespace

Chart::JetPoint Chart::eval_jets(const std::vector<double>& u, const std::vector<int>& seeds) const {
  const int D = dim();
  const int nc = static_cast<int>(w_.size());
  const std::vector<double> x0f = flatten(x0_.x());
  std::vector<std::vector<double>> bf;
  bf.reserve(D);
  for (const auto& b : basis_) bf.push_back(flatten(b));

  // u as jets: seeded coordinates carry unit first derivatives.
  std::vector<Jet3> uj(D);
  for (int m = 0; m < D; ++m) uj[m] = Jet3(u[m]);
  for (size_t slot = 0; slot < seeds.size(); ++slot) uj[seeds[slot]].d1[slot] = 1.0;

  // y(u) = x0 + sum u_m b_m, flat real coordinates.
  std::vector<Jet3> y(nc);
  for (int t = 0; t < nc; ++t) {
    Jet3 acc(x0f[t]);
    for (int m = 0; m < D; ++m)
      if (bf[m][t] != 0.0) acc += uj[m] * bf[m][t];
    y[t] = acc;
  }

  JetPoint jp;
  jp.dy.assign(D, std::vector<Jet3>(nc));
  if (!normalize_) {
    jp.y = y;
    for (int m = 0; m < D; ++m)
      for (int t = 0; t < nc; ++t) jp.dy[m][t] = Jet3(bf[m][t]);
    return jp;
  }

  Jet3 Q(0.0);
  for (int t = 0; t < nc; ++t) Q += w_[t] * y[t] * y[t];
  const Jet3 root = qcr::sqrt(Q);
  const Jet3 inv_root = reciprocal(root);

  jp.y.resize(nc);
  for (int t = 0; t < nc; ++t) jp.y[t] = y[t] * inv_root;

  // d_m c = b_m / sqrt(Q) - y * re(y, b_m) / Q^{3/2}
  const Jet3 inv_Q32 = inv_root * reciprocal(Q);
  for (int m = 0; m < D; ++m) {
    Jet3 yb(0.0);
    for (int t = 0; t < nc; ++t)
      if (bf[m][t] != 0.0) yb += w_[t] * y[t] * bf[m][t];
    for (int t = 0; t < nc; ++t)
      jp.dy[m][t] = Jet3(bf[m][t]) * inv_root - y[t] * yb * inv_Q32;
  }
  return jp;
}

Riemann4 numeric_riemann(const Chart& chart, const MetricScale& scale) {
  const int D = chart.dim();
  TaylorMetric tm(D);
  const std::vector<double> u0(D, 0.0);
  const auto& w = chart.weights();
  const int nc = static_cast<int>(w.size());

  for (int a = 0; a < D; ++a)
    for (int b = a; b < D; ++b) {
      const Chart::JetPoint jp = chart.eval_jets(u0, {a, b});
      Jet3 phi(1.0);
      if (scale) phi = scale(jp.y);
      for (int m = 0; m < D; ++m)
        for (int n = m; n < D; ++n) {
          Jet3 gmn(0.0);
          for (int t = 0; t < nc; ++t) gmn += w[t] * jp.dy[m][t] * jp.dy[n][t];
          gmn = gmn * phi;
          // seeds: slot 0 = direction a, slot 1 = direction b.
          tm.g0(m, n) = tm.g0(n, m) = gmn.v;
          tm.g1[a](m, n) = tm.g1[a](n, m) = gmn.d1[0];
          tm.g1[b](m, n) = tm.g1[b](n, m) = gmn.d1[1];
          tm.g2[a][b](m, n) = tm.g2[a][b](n, m) = gmn.d2[0][1];
          tm.g2[b][a](m, n) = tm.g2[b][a](n, m) = gmn.d2[0][1];
          tm.g2[a][a](m, n) = tm.g2[a][a](n, m) = gmn.d2[0][0];
          tm.g2[b][b](m, n) = tm.g2[b][b](n, m) = gmn.d2[1][1];
        }
    }
  return riemann_from_taylor(tm);
}

TaylorMetric taylor_metric3(const Chart& chart, const Metric3& metric) {
  if (chart.dim() != 3) throw std::invalid_argument("taylor_metric3: chart dimension must be 3");
  TaylorMetric tm(3);
  tm.has_third = true;
  const std::vector<double> u0(3, 0.0);
  const Chart::JetPoint jp = chart.eval_jets(u0, {0, 1, 2});
  for (int m = 0; m < 3; ++m)
    for (int n = m; n < 3; ++n) {
      const Jet3 gmn = metric(jp, m, n);
      tm.g0(m, n) = tm.g0(n, m) = gmn.v;
      for (int a = 0; a < 3; ++a) {
        tm.g1[a](m, n) = tm.g1[a](n, m) = gmn.d1[a];
        for (int b = 0; b < 3; ++b) {
          tm.g2[a][b](m, n) = tm.g2[a][b](n, m) = gmn.d2[a][b];
          for (int c = 0; c < 3; ++c)
            tm.g3[a][b][c](m, n) = tm.g3[a][b][c](n, m) = gmn.d3[a][b][c];
        }
      }
    }
  return tm;
}

namespace {

// Quaternion product on jet coordinate quadruples.
std::array<Jet3, 4> jq_mul(const std::array<Jet3, 4>& a, const std::array<Jet3, 4>& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

std::array<Jet3, 4> jq_conj(const std::array<Jet3, 4>& a) {
  return {a[0], -a[1], -a[2], -a[3]};
}

std::array<Jet3, 4> slot(const std::vector<Jet3>& flat, int i) {
  return {flat[4 * i], flat[4 * i + 1], flat[4 * i + 2], flat[4 * i + 3]};
}

}  // namespace

Metric3 round_model_metric(const CalibrationConstants& cal) {
  return [cal](const Chart::JetPoint& jp, int m, int n) {
    // omega_a(v)|_y = component a of s_omega * (-<y, v>), single H-slot.
    const auto y = slot(jp.y, 0);
    const auto vm = slot(jp.dy[m], 0);
    const auto vn = slot(jp.dy[n], 0);
    const auto hm = jq_mul(jq_conj(y), vm);
    const auto hn = jq_mul(jq_conj(y), vn);
    Jet3 acc(0.0);
    for (int a = 1; a <= 3; ++a)
      acc += (cal.s_omega * -1.0) * hm[a] * (cal.s_omega * -1.0) * hn[a];
    return acc;
  };
}

Metric3 conformal_scale(const Metric3& base) {
  return [base](const Chart::JetPoint& jp, int m, int n) {
    const Jet3 u = 1.0 + 0.2 * jp.y[0];
    return u * u * u * u * base(jp, m, n);
  };
}

}  // namespace qcr
