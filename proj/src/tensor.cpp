#include "qcrlab/tensor.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcr {

Riemann4 Riemann4::operator+(const Riemann4& o) const {
  Riemann4 r = *this;
  for (size_t t = 0; t < a_.size(); ++t) r.a_[t] += o.a_[t];
  return r;
}

Riemann4 Riemann4::operator-(const Riemann4& o) const {
  Riemann4 r = *this;
  for (size_t t = 0; t < a_.size(); ++t) r.a_[t] -= o.a_[t];
  return r;
}

Riemann4 Riemann4::scaled(double s) const {
  Riemann4 r = *this;
  for (auto& v : r.a_) v *= s;
  return r;
}

double Riemann4::max_abs() const {
  double m = 0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

std::string Riemann4::to_json() const {
  nlohmann::json j;
  j["dim"] = d_;
  j["layout"] = "i,j,k,l row-major";
  j["data"] = a_;
  return j.dump();
}

Riemann4 Riemann4::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("layout").get<std::string>() != "i,j,k,l row-major")
    throw std::invalid_argument("Riemann4: unexpected layout tag");
  const int d = j.at("dim").get<int>();
  Riemann4 r(d);
  r.a_ = j.at("data").get<std::vector<double>>();
  if (r.a_.size() != static_cast<size_t>(d) * d * d * d)
    throw std::invalid_argument("Riemann4: data length does not match dim");
  return r;
}

Eigen::MatrixXd ricci(const Riemann4& R) {
  const int d = R.dim();
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l) {
      double s = 0;
      for (int i = 0; i < d; ++i) s += R(i, j, i, l);
      ric(j, l) = s;
    }
  return ric;
}

Riemann4 lower_first(const Riemann4& R, const Eigen::MatrixXd& g) {
  const int d = R.dim();
  Riemann4 out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0;
          for (int m = 0; m < d; ++m) s += g(i, m) * R(m, j, k, l);
          out(i, j, k, l) = s;
        }
  return out;
}

Riemann4 raise_first(const Riemann4& R, const Eigen::MatrixXd& g) {
  return lower_first(R, g.inverse());
}

Riemann4 constant_curvature(const Eigen::MatrixXd& g, double c) {
  const int d = static_cast<int>(g.rows());
  Riemann4 out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          out(i, j, k, l) = c * (g(j, l) * (i == k) - g(j, k) * (i == l));
  return out;
}

double bianchi1_residual(const Riemann4& R) {
  const int d = R.dim();
  double m = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          m = std::max(m, std::abs(R(i, j, k, l) + R(i, k, l, j) + R(i, l, j, k)));
  return m;
}

double symmetry_residual(const Riemann4& R, const Eigen::MatrixXd& g) {
  const Riemann4 L = lower_first(R, g);
  const int d = R.dim();
  double m = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          m = std::max(m, std::abs(L(i, j, k, l) + L(i, j, l, k)));
          m = std::max(m, std::abs(L(i, j, k, l) + L(j, i, k, l)));
          m = std::max(m, std::abs(L(i, j, k, l) - L(k, l, i, j)));
        }
  return m;
}

TaylorMetric::TaylorMetric(int d) : dim(d), g0(Eigen::MatrixXd::Zero(d, d)) {
  g1.assign(d, Eigen::MatrixXd::Zero(d, d));
  g2.assign(d, std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(d, d)));
  g3.assign(d, std::vector<std::vector<Eigen::MatrixXd>>(
                   d, std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(d, d))));
}

namespace {

// Christoffel data at the origin up to the derivative order the caller
// filled in.  Lowered Gamma_{m,jk} = (d_j g_{mk} + d_k g_{mj} - d_m g_{jk})/2.
struct Christoffel {
  int d;
  std::vector<std::vector<std::vector<double>>> G;      // Gamma^i_{jk}
  std::vector<std::vector<std::vector<std::vector<double>>>> dG;  // d_p Gamma^i_{jk}
};

Christoffel christoffel(const TaylorMetric& tm, bool with_derivative) {
  const int d = tm.dim;
  const Eigen::MatrixXd h = tm.g0.inverse();

  auto lowered = [&](int m, int j, int k) {
    return 0.5 * (tm.g1[j](m, k) + tm.g1[k](m, j) - tm.g1[m](j, k));
  };
  auto lowered_d = [&](int p, int m, int j, int k) {
    return 0.5 * (tm.g2[p][j](m, k) + tm.g2[p][k](m, j) - tm.g2[p][m](j, k));
  };

  Christoffel c;
  c.d = d;
  c.G.assign(d, std::vector<std::vector<double>>(d, std::vector<double>(d, 0.0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = 0;
        for (int m = 0; m < d; ++m) s += h(i, m) * lowered(m, j, k);
        c.G[i][j][k] = s;
      }
  if (with_derivative) {
    // d_p h = -h (d_p g) h
    std::vector<Eigen::MatrixXd> dh(d);
    for (int p = 0; p < d; ++p) dh[p] = -h * tm.g1[p] * h;
    c.dG.assign(d, std::vector<std::vector<std::vector<double>>>(
                       d, std::vector<std::vector<double>>(d, std::vector<double>(d, 0.0))));
    for (int p = 0; p < d; ++p)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) {
            double s = 0;
            for (int m = 0; m < d; ++m)
              s += dh[p](i, m) * lowered(m, j, k) + h(i, m) * lowered_d(p, m, j, k);
            c.dG[p][i][j][k] = s;
          }
  }
  return c;
}

}  // namespace

Riemann4 riemann_from_taylor(const TaylorMetric& tm) {
  const int d = tm.dim;
  const Christoffel c = christoffel(tm, true);
  Riemann4 R(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = c.dG[k][i][l][j] - c.dG[l][i][k][j];
          for (int m = 0; m < d; ++m)
            s += c.G[i][k][m] * c.G[m][l][j] - c.G[i][l][m] * c.G[m][k][j];
          R(i, j, k, l) = s;
        }
  return R;
}

std::vector<double> cotton_from_taylor(const TaylorMetric& tm) {
  if (tm.dim != 3) throw std::invalid_argument("cotton_from_taylor: dimension must be 3");
  if (!tm.has_third) throw std::invalid_argument("cotton_from_taylor: third derivatives missing");
  const int d = 3;
  const Eigen::MatrixXd h = tm.g0.inverse();
  std::vector<Eigen::MatrixXd> dh(d);
  for (int p = 0; p < d; ++p) dh[p] = -h * tm.g1[p] * h;
  std::vector<std::vector<Eigen::MatrixXd>> d2h(d, std::vector<Eigen::MatrixXd>(d));
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      d2h[p][q] = -h * tm.g2[p][q] * h + h * tm.g1[p] * h * tm.g1[q] * h +
                  h * tm.g1[q] * h * tm.g1[p] * h;

  auto low = [&](int m, int j, int k) {
    return 0.5 * (tm.g1[j](m, k) + tm.g1[k](m, j) - tm.g1[m](j, k));
  };
  auto low1 = [&](int p, int m, int j, int k) {
    return 0.5 * (tm.g2[p][j](m, k) + tm.g2[p][k](m, j) - tm.g2[p][m](j, k));
  };
  auto low2 = [&](int p, int q, int m, int j, int k) {
    return 0.5 * (tm.g3[p][q][j](m, k) + tm.g3[p][q][k](m, j) - tm.g3[p][q][m](j, k));
  };

  // Gamma and its first and second derivatives at the origin.
  auto G = [&](int i, int j, int k) {
    double s = 0;
    for (int m = 0; m < d; ++m) s += h(i, m) * low(m, j, k);
    return s;
  };
  auto dG = [&](int p, int i, int j, int k) {
    double s = 0;
    for (int m = 0; m < d; ++m) s += dh[p](i, m) * low(m, j, k) + h(i, m) * low1(p, m, j, k);
    return s;
  };
  auto d2G = [&](int p, int q, int i, int j, int k) {
    double s = 0;
    for (int m = 0; m < d; ++m)
      s += d2h[p][q](i, m) * low(m, j, k) + dh[p](i, m) * low1(q, m, j, k) +
           dh[q](i, m) * low1(p, m, j, k) + h(i, m) * low2(p, q, m, j, k);
    return s;
  };

  auto Rm = [&](int i, int j, int k, int l) {
    double s = dG(k, i, l, j) - dG(l, i, k, j);
    for (int m = 0; m < d; ++m) s += G(i, k, m) * G(m, l, j) - G(i, l, m) * G(m, k, j);
    return s;
  };
  auto dRm = [&](int p, int i, int j, int k, int l) {
    double s = d2G(p, k, i, l, j) - d2G(p, l, i, k, j);
    for (int m = 0; m < d; ++m)
      s += dG(p, i, k, m) * G(m, l, j) + G(i, k, m) * dG(p, m, l, j) -
           dG(p, i, l, m) * G(m, k, j) - G(i, l, m) * dG(p, m, k, j);
    return s;
  };

  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(d, d);
  std::vector<Eigen::MatrixXd> dric(d, Eigen::MatrixXd::Zero(d, d));
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l) {
      double s = 0;
      for (int i = 0; i < d; ++i) s += Rm(i, j, i, l);
      ric(j, l) = s;
      for (int p = 0; p < d; ++p) {
        double sp = 0;
        for (int i = 0; i < d; ++i) sp += dRm(p, i, j, i, l);
        dric[p](j, l) = sp;
      }
    }

  double sigma = (h * ric).trace();
  std::vector<double> dsigma(d, 0.0);
  for (int p = 0; p < d; ++p) dsigma[p] = (dh[p] * ric + h * dric[p]).trace();

  // Schouten (3d): S = Ric - (sigma/4) g.
  Eigen::MatrixXd S = ric - (sigma / 4.0) * tm.g0;
  std::vector<Eigen::MatrixXd> dS(d);
  for (int p = 0; p < d; ++p)
    dS[p] = dric[p] - (dsigma[p] / 4.0) * tm.g0 - (sigma / 4.0) * tm.g1[p];

  auto covS = [&](int k, int i, int j) {
    double s = dS[k](i, j);
    for (int m = 0; m < d; ++m) s -= G(m, k, i) * S(m, j) + G(m, k, j) * S(i, m);
    return s;
  };

  std::vector<double> C(d * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        C[(i * d + j) * d + k] = covS(k, i, j) - covS(j, i, k);
  return C;
}

double cotton_max_abs(const std::vector<double>& c) {
  double m = 0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

double cotton_antisymmetry_residual(const std::vector<double>& c) {
  const int d = 3;
  double m = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        m = std::max(m, std::abs(c[(i * d + j) * d + k] + c[(i * d + k) * d + j]));
  return m;
}

}  // namespace qcr
