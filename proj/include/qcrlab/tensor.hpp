#pragma once

/// Dense rank-4 curvature arrays and the Taylor data of a chart metric
/// (values and derivatives of g_{mn} at the chart origin) that the numeric
/// curvature pipeline consumes.

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace qcr {

/// R^i_{jkl}, row-major in (i,j,k,l).  The convention throughout:
/// first index up, R(e_k,e_l)e_j = R^i_{jkl} e_i, so the unit-sphere tensor
/// is R^i_{jkl} = g_{jl} d^i_k - g_{jk} d^i_l.  Lowered forms go through g
/// on the first index.
class Riemann4 {
 public:
  explicit Riemann4(int dim) : d_(dim), a_(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const { return d_; }
  double& operator()(int i, int j, int k, int l) {
    return a_[((static_cast<size_t>(i) * d_ + j) * d_ + k) * d_ + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return a_[((static_cast<size_t>(i) * d_ + j) * d_ + k) * d_ + l];
  }

  Riemann4 operator+(const Riemann4& o) const;
  Riemann4 operator-(const Riemann4& o) const;
  Riemann4 scaled(double s) const;
  double max_abs() const;

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  /// Flat JSON layout {dim, layout:"i,j,k,l row-major", data:[...]}.
  std::string to_json() const;
  static Riemann4 from_json(const std::string& text);

 private:
  int d_;
  std::vector<double> a_;
};

/// Ricci contraction R_{jl} = R^i_{jil}.
Eigen::MatrixXd ricci(const Riemann4& R);

/// Lower the first index: R_{ijkl} = g_{im} R^m_{jkl}.
Riemann4 lower_first(const Riemann4& R, const Eigen::MatrixXd& g);
/// Raise the first index with g^{-1}.
Riemann4 raise_first(const Riemann4& R, const Eigen::MatrixXd& g);

/// Constant-curvature tensor c * (g_{jl} d^i_k - g_{jk} d^i_l).
Riemann4 constant_curvature(const Eigen::MatrixXd& g, double c);

/// First Bianchi residual max |R^i_{jkl} + R^i_{klj} + R^i_{ljk}|.
double bianchi1_residual(const Riemann4& R);

/// Residuals of the algebraic curvature symmetries of the lowered tensor
/// (antisymmetry in both pairs, pair symmetry).
double symmetry_residual(const Riemann4& R, const Eigen::MatrixXd& g);

/// Metric jet data at a chart origin: g0 = g(0), g1[c](m,n) = d_c g_{mn},
/// g2[c][d], g3[c][d][e] likewise.  g3 is filled only when a third-order
/// consumer (the Cotton pipeline) asks for it.
struct TaylorMetric {
  int dim{0};
  Eigen::MatrixXd g0;
  std::vector<Eigen::MatrixXd> g1;
  std::vector<std::vector<Eigen::MatrixXd>> g2;
  std::vector<std::vector<std::vector<Eigen::MatrixXd>>> g3;
  bool has_third{false};

  explicit TaylorMetric(int d);
};

/// Riemann tensor at the chart origin from metric jets (needs g0..g2).
Riemann4 riemann_from_taylor(const TaylorMetric& tm);

/// Cotton tensor C_{ijk} = nabla_k S_{ij} - nabla_j S_{ik} with
/// S = Ric - (sigma/4) g, at the origin of a 3-dimensional chart
/// (needs g0..g3).
std::vector<double> cotton_from_taylor(const TaylorMetric& tm);  // flat [i][j][k], dim 3

double cotton_max_abs(const std::vector<double>& c);
double cotton_antisymmetry_residual(const std::vector<double>& c);

}  // namespace qcr
