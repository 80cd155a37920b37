#pragma once

/// Tensor algebra on a 4n-dimensional fiber carrying an indefinite metric
/// g = diag(+1 x 4p, -1 x 4q) and a quaternionic triple I, J, K with
/// I J = K: the projective-space generator R_HP, the fourth-order invariant
/// tensor T in its three dimension regimes, Einstein and trace identities,
/// and the invariance checks.

#include <Eigen/Dense>

#include "qcrlab/quaternion.hpp"
#include "qcrlab/rng.hpp"
#include "qcrlab/tensor.hpp"

namespace qcr {

struct TripleMatrices {
  Eigen::MatrixXd I, J, K;
  const Eigen::MatrixXd& at(int a) const { return a == 1 ? I : (a == 2 ? J : K); }
  Eigen::MatrixXd& at(int a) { return a == 1 ? I : (a == 2 ? J : K); }
};

/// I^2 = J^2 = K^2 = -Id, IJ - K, and g-skewness of the lowered matrices;
/// max residual.
double triple_residual(const TripleMatrices& t, const Eigen::MatrixXd& g);

/// Realification of H^n with the (w,x,y,z) block order per slot.  The
/// returned triple is minus right multiplication by i, j, k, the sign that
/// satisfies IJ = K.
std::pair<Eigen::MatrixXd, TripleMatrices> standard_triple(int p, int q);

/// R_HP: (g_{jl} g_{ik} - g_{jk} g_{il}) + sum_a J^a_{jl} J^a_{ik}
/// - sum_a J^a_{jk} J^a_{il} + 2 sum_a J^a_{ij} J^a_{kl}, returned with the
/// first index raised.  Ricci trace is 4(n+2) g.
Riemann4 r_hp(const Eigen::MatrixXd& g, const TripleMatrices& triple);

/// T = R - R_HP in mixed-index form; requires dimension 4n with n >= 2.
Riemann4 t_tensor(const Riemann4& R, const Eigen::MatrixXd& g, const TripleMatrices& triple);

/// n = 1 regime: T = R - 4 (g_{jl} d^i_k - g_{jk} d^i_l).
Riemann4 t_tensor_dim4(const Riemann4& R, const Eigen::MatrixXd& g);

/// Weyl conformal curvature in dimension 4 (indefinite allowed); totally
/// trace-free.
Riemann4 weyl4(const Riemann4& R, const Eigen::MatrixXd& g);

/// (I',J',K')^T = A^T (I,J,K)^T.
TripleMatrices rotate_triple(const Rot3& A, const TripleMatrices& triple);

/// Random algebraic curvature tensor: symmetrized over the Riemann symmetry
/// group and projected onto the first-Bianchi kernel.
Riemann4 random_algebraic_curvature(const Eigen::MatrixXd& g, Rng& rng);

/// Adds the Kulkarni-Nomizu correction making Ricci(R) = c g exactly.
Riemann4 einstein_normalize(const Riemann4& R, const Eigen::MatrixXd& g, double c);

struct InvarianceOutcome {
  double rotation_residual{0};
  double covariance_residual{0};
  bool pass{false};
};

/// (a) T is unchanged under SO(3) rotations of the triple (tol_rot);
/// (b) conjugating all inputs by a basis change S transforms T by the
/// rank-4 tensor rule (tol_cov).
InvarianceOutcome t_invariance_check(const Riemann4& R, const Eigen::MatrixXd& g,
                                     const TripleMatrices& triple, int trials,
                                     std::uint64_t seed, double tol_rot, double tol_cov);

/// Transform a rank-4 mixed tensor by a basis change S (columns = new basis
/// in old coordinates): T'^i_{jkl} = (S^{-1})^i_m T^m_{npq} S^n_j S^p_k S^q_l.
Riemann4 conjugate_riemann(const Riemann4& R, const Eigen::MatrixXd& S);

}  // namespace qcr
