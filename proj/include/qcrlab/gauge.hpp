#pragma once

/// Fiberwise gauge transformations omega' = s.(a omega abar), reconstruction
/// of the quaternionic structure from the three 2-forms sigma_a, and the
/// real structure group G of the coframe change.
///
/// The scale is parametrized by the factor s multiplying omega directly;
/// the u-versus-u^2 bookkeeping of the source conventions is confined to
/// the GMatrix constructor.

#include <Eigen/Dense>

#include <array>

#include "qcrlab/curvature.hpp"
#include "qcrlab/indefinite.hpp"
#include "qcrlab/quaternion.hpp"
#include "qcrlab/rng.hpp"

namespace qcr {

/// Linear data of one fiber: metric g, the three antisymmetric forms
/// sigma_a = d omega_a |_D, and the structure triple.
struct FiberData {
  Eigen::MatrixXd g;
  std::array<Eigen::MatrixXd, 3> sigma;
  TripleMatrices triple;
};

/// sigma_a nondegenerate and sigma_a(J_a X, Y) symmetric; max residual of
/// the symmetry part (nondegeneracy reported through the determinant test).
double fiber_residual(const FiberData& f);

/// Valid fiber from the standard triple conjugated by a random basis change
/// realifying an Sp(p,q).Sp(1) element.
FiberData synth_fiber(int p, int q, Rng& rng);

/// omega' = s . a omega abar computed both as quaternion conjugation and as
/// the row-vector action of s . ad_matrix(a); returns the transformed value
/// and the two-route disagreement.
struct TransformedOmega {
  Quaternion value;
  double route_residual;
};
TransformedOmega transform_omega(const Quaternion& omega_value, double s,
                                 const UnitQuaternion& a);

/// J_gamma = sigma_beta^{-1} o sigma_alpha (cyclic); throws
/// std::domain_error("not a quaternionic-CR fiber") when the reconstructed
/// maps violate the quaternion relations beyond 1e-6.
TripleMatrices j_from_sigma(const std::array<Eigen::MatrixXd, 3>& sigma);

/// g(X,Y) = sigma_alpha(J_alpha X, Y) for one alpha.
Eigen::MatrixXd metric_from_sigma(const std::array<Eigen::MatrixXd, 3>& sigma,
                                  const TripleMatrices& J, int alpha);

struct GaugeOutcome {
  double j_rotation_residual{0};
  double metric_scale_residual{0};
  double alpha_independence_residual{0};
  double q_invariance_residual{0};
  bool pass{false};
};

/// Transforms the fiber by `trials` random gauges (s, a) and asserts
/// (i) J' = rotate_triple(ad(a), J), (ii) g' = s g, (iii) the metric from
/// any alpha agrees, (iv) g'(J'X, J'Y) = g'(X, Y).
GaugeOutcome gauge_consistency_check(const FiberData& f, int trials, std::uint64_t seed,
                                     double tol);

/// Parameters of the real structure-group matrix: block layout
///   [ u^2 A^T            0    ]
///   [ u^2 diag(1,A^T)V^j  u U ]
/// with A = ad_matrix(a), U the realification of v -> U' v abar, and V^j the
/// 4x3 blocks built from the quaternion components of vtil.
struct GParams {
  double u{1};
  UnitQuaternion a{UnitQuaternion::one()};
  QMatrix Uprime;   // Sp(p,q)
  QVector vtil;     // H^n

  GParams(double u_, const UnitQuaternion& a_, const QMatrix& Up, const QVector& v);
};

Eigen::MatrixXd build_g_matrix(const GParams& p);

struct ClosureOutcome {
  double recovery_residual{0};
  bool pass{false};
};

/// Multiplies random pairs of G-matrices, recovers parameters from the
/// product blocks, rebuilds, and compares.
ClosureOutcome g_closure_check(int p, int q, int trials, std::uint64_t seed, double tol);

/// Quaternionic (n+1)x(n+1) form of a G element together with the scalar
/// factor; used for the anti-isomorphism onto Sim(H^n).
struct GQuat {
  Quaternion lambda;
  QVector vtil;
  QMatrix Uprime;
};

GQuat g_compose(const GQuat& g1, const GQuat& g2);

/// Affine similarity of H^n: v -> X v mubar + w.
struct SimHn {
  QVector w;
  QMatrix X;
  Quaternion mu;
};

SimHn sim_hn_compose(const SimHn& f1, const SimHn& f2);

/// Anti-isomorphism G -> Sim(H^n): the projective affine action of the
/// inverse element; g_to_sim(g1 g2) = g_to_sim(g2) o g_to_sim(g1).
SimHn g_to_sim(const GQuat& g);

double sim_hn_distance(const SimHn& f1, const SimHn& f2);

GQuat random_gquat(int p, int q, Rng& rng);

}  // namespace qcr
