#include <doctest.h>

#include <cmath>

#include "qcrlab/curvature.hpp"
#include "qcrlab/model_quadric.hpp"

using namespace qcr;

namespace {

// Independent index-loop oracle for the fourth-order tensor: evaluates the
// alternated formula literally, with J^a_{ij} = g(J_a e_i, e_j) and the
// raised form (J^a)^i_k = g^{im} J^a_{mk}, rather than going through r_hp.
Riemann4 t_oracle(const Riemann4& R, const Eigen::MatrixXd& g, const TripleMatrices& tr) {
  const int d = R.dim();
  const Eigen::MatrixXd h = g.inverse();
  std::array<Eigen::MatrixXd, 3> low, up;
  for (int a = 1; a <= 3; ++a) {
    low[a - 1] = tr.at(a).transpose() * g;  // (J^T g)_{ij} = g(J e_i, e_j)
    up[a - 1] = h * low[a - 1];
  }
  Riemann4 T(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double bracket = g(j, l) * (i == k) - g(j, k) * (i == l);
          for (int a = 0; a < 3; ++a)
            bracket += 2.0 * up[a](i, j) * low[a](k, l) - low[a](j, k) * up[a](i, l) +
                       low[a](j, l) * up[a](i, k);
          T(i, j, k, l) = R(i, j, k, l) - bracket;
        }
  return T;
}

}  // namespace

TEST_CASE("standard triple: realification blocks and relations") {
  auto [g, tr] = standard_triple(1, 0);
  CHECK(triple_residual(tr, g) < 1e-15);

  // The first 4x4 block of I is minus the right-multiplication block
  // (0,-1,0,0 / 1,0,0,0 / 0,0,0,1 / 0,0,-1,0); the overall sign makes IJ=K.
  Eigen::Matrix4d right_i;
  right_i << 0, -1, 0, 0,
             1,  0, 0, 0,
             0,  0, 0, 1,
             0,  0, -1, 0;
  CHECK((tr.I.block<4, 4>(0, 0) + right_i).cwiseAbs().maxCoeff() == 0.0);

  CHECK((tr.I * tr.J - tr.K).cwiseAbs().maxCoeff() == 0.0);

  // Lowered matrices are antisymmetric (g-skewness).
  for (int a = 1; a <= 3; ++a) {
    const Eigen::MatrixXd low = g * tr.at(a);
    CHECK((low + low.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }

  // Indefinite case.
  auto [g2, tr2] = standard_triple(1, 2);
  CHECK(triple_residual(tr2, g2) < 1e-15);
}

TEST_CASE("r_hp: einstein constant, bianchi, symmetries") {
  for (auto [p, q] : {std::pair{2, 0}, {1, 1}, {3, 0}, {1, 2}}) {
    const int n = p + q;
    auto [g, tr] = standard_triple(p, q);
    const Riemann4 RHP = r_hp(g, tr);
    CHECK((ricci(RHP) - 4.0 * (n + 2) * g).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(bianchi1_residual(RHP) < 1e-12);
    CHECK(symmetry_residual(RHP, g) < 1e-12);
  }
}

TEST_CASE("r_hp at n = 1 is the schur constant-curvature form") {
  for (auto [p, q] : {std::pair{1, 0}, {0, 1}}) {
    auto [g, tr] = standard_triple(p, q);
    CHECK((r_hp(g, tr) - constant_curvature(g, 4.0)).max_abs() < 1e-12);
  }
}

TEST_CASE("t_tensor: kills r_hp, linear, trace-free on einstein inputs") {
  for (auto [p, q] : {std::pair{2, 0}, {1, 1}, {3, 0}}) {
    const int n = p + q;
    auto [g, tr] = standard_triple(p, q);
    CHECK(t_tensor(r_hp(g, tr), g, tr).max_abs() < 1e-12);

    Rng rng(71);
    const Riemann4 R1 = random_algebraic_curvature(g, rng);
    const Riemann4 R2 = random_algebraic_curvature(g, rng);
    CHECK(((t_tensor(R1, g, tr) - t_tensor(R2, g, tr)) - (R1 - R2)).max_abs() < 1e-12);

    for (int t = 0; t < 5; ++t) {
      Rng sub = Rng::derive(73, static_cast<std::uint64_t>(t));
      const Riemann4 R =
          einstein_normalize(random_algebraic_curvature(g, sub), g, 4.0 * (n + 2));
      CHECK((ricci(R) - 4.0 * (n + 2) * g).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(ricci(t_tensor(R, g, tr)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  auto [g4, tr4] = standard_triple(1, 0);
  Rng rng(79);
  CHECK_THROWS_AS(t_tensor(random_algebraic_curvature(g4, rng), g4, tr4),
                  std::domain_error);
}

TEST_CASE("t_tensor agrees with the independent index-loop oracle") {
  for (auto [p, q] : {std::pair{2, 0}, {1, 1}}) {
    auto [g, tr] = standard_triple(p, q);
    Rng rng(83);
    const Riemann4 R = random_algebraic_curvature(g, rng);
    CHECK((t_tensor(R, g, tr) - t_oracle(R, g, tr)).max_abs() < 1e-12);

    // Constant-curvature input: T = (c-1)(g d - g d) minus the bracket
    // terms, realized identically by the oracle path.
    const Riemann4 Rc = constant_curvature(g, 2.5);
    CHECK((t_tensor(Rc, g, tr) - t_oracle(Rc, g, tr)).max_abs() < 1e-12);
  }
}

TEST_CASE("weyl4: conformally flat inputs, einstein-12 identity, traces") {
  auto [g, tr] = standard_triple(1, 0);
  CHECK(weyl4(constant_curvature(g, 3.0), g).max_abs() < 1e-12);

  Rng rng(89);
  for (int t = 0; t < 5; ++t) {
    const Riemann4 R0 = random_algebraic_curvature(g, rng);
    CHECK(ricci(weyl4(R0, g)).cwiseAbs().maxCoeff() < 1e-10);

    const Riemann4 R = einstein_normalize(R0, g, 12.0);
    // weyl4(R) = R - 4(g_{jl} d^i_k - g_{jk} d^i_l) for Ricci = 12 g.
    CHECK((weyl4(R, g) - (R - constant_curvature(g, 4.0))).max_abs() < 1e-11);
    CHECK((weyl4(R, g) - t_tensor_dim4(R, g)).max_abs() < 1e-11);
    // Idempotence on the image.
    const Riemann4 W = weyl4(R, g);
    CHECK((weyl4(W, g) - W).max_abs() < 1e-11);
  }

  // Indefinite metric variant.
  auto [gi, tri] = standard_triple(0, 1);
  const Riemann4 Ri = einstein_normalize(random_algebraic_curvature(gi, rng), gi, 12.0);
  CHECK((weyl4(Ri, gi) - t_tensor_dim4(Ri, gi)).max_abs() < 1e-11);
}

TEST_CASE("rotate_triple: identity, quarter turn, random closure") {
  auto [g, tr] = standard_triple(2, 0);
  const TripleMatrices same = rotate_triple(Rot3::identity(), tr);
  CHECK((same.I - tr.I).cwiseAbs().maxCoeff() == 0.0);

  // Rotation by pi/2 about axis 1 maps (I,J,K) to (I,K,-J).
  Mat3 m{};
  m(0, 0) = 1;
  m(1, 2) = -1;
  m(2, 1) = 1;
  const TripleMatrices qt = rotate_triple(Rot3(m), tr);
  CHECK((qt.I - tr.I).cwiseAbs().maxCoeff() == 0.0);
  CHECK((qt.J - tr.K).cwiseAbs().maxCoeff() == 0.0);
  CHECK((qt.K + tr.J).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(97);
  for (int t = 0; t < 10; ++t) {
    const TripleMatrices rt = rotate_triple(ad_matrix(rng.unit_quaternion()), tr);
    CHECK(triple_residual(rt, g) < 1e-13);
  }
}

TEST_CASE("t invariance under triple rotation and frame covariance") {
  auto [g, tr] = standard_triple(2, 0);
  Rng rng(101);
  const Riemann4 R = einstein_normalize(random_algebraic_curvature(g, rng), g, 16.0);
  const InvarianceOutcome inv = t_invariance_check(R, g, tr, 10, 555, 1e-10, 1e-8);
  CHECK(inv.rotation_residual < 1e-10);
  CHECK(inv.covariance_residual < 1e-8);
  CHECK(inv.pass);
}

TEST_CASE("random algebraic curvature tensors satisfy the symmetries") {
  auto [g, tr] = standard_triple(1, 1);
  Rng rng(103);
  for (int t = 0; t < 5; ++t) {
    const Riemann4 R = random_algebraic_curvature(g, rng);
    CHECK(symmetry_residual(R, g) < 1e-13);
    CHECK(bianchi1_residual(R) < 1e-13);
  }
}

TEST_CASE("riemann json round trip") {
  auto [g, tr] = standard_triple(1, 0);
  const Riemann4 R = r_hp(g, tr);
  const Riemann4 back = Riemann4::from_json(R.to_json());
  CHECK(back.dim() == R.dim());
  CHECK((back - R).max_abs() == 0.0);
  CHECK_THROWS(Riemann4::from_json("{\"dim\":2,\"layout\":\"bogus\",\"data\":[]}"));
}

TEST_CASE("model flatness pipeline and its negative control") {
  for (auto [p, q] : {std::pair{1, 0}, {0, 1}}) {
    double worst = 0, dev = 0;
    for (int s = 0; s < 5; ++s) {
      Rng rng = Rng::derive(107, static_cast<std::uint64_t>(s) + (p << 8));
      const QuadricPoint x = random_point(p, q, rng);
      const DFrame fr = build_dframe(x, rng);
      const Chart chart(x, fr, true);
      const Riemann4 R = numeric_riemann(chart);
      const int m = fr.size();
      Eigen::MatrixXd gD = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) gD(i, i) = (i < 4 * p) ? 1.0 : -1.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l)
              worst = std::max(worst,
                               std::abs(R(3 + i, 3 + j, 3 + k, 3 + l) -
                                        (gD(j, l) * (i == k) - gD(j, k) * (i == l))));

      // Negative control: the same pipeline on the perturbed ambient form
      // must report a visible tensor.
      const MetricScale bump = [](const std::vector<Jet3>& y) { return 1.0 + 0.1 * y[0]; };
      const Riemann4 Rp = numeric_riemann(chart, bump);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l)
              dev = std::max(dev, std::abs(Rp(3 + i, 3 + j, 3 + k, 3 + l) -
                                           (gD(j, l) * (i == k) - gD(j, k) * (i == l))));
    }
    CHECK(worst < 1e-5);
    CHECK(dev >= 1e-2);
  }
}

TEST_CASE("cotton tensor: flat, round model, conformal invariance") {
  const CalibrationConstants cal = golden_calibration();
  Rng rng(109);
  const QuadricPoint x = random_point(0, 0, rng);
  const DFrame empty{x, {}};

  {  // Flat chart: identically zero.
    const Chart affine(x, empty, false);
    const Metric3 flat = [](const Chart::JetPoint& jp, int m, int nn) {
      Jet3 acc(0.0);
      for (size_t t = 0; t < jp.dy[m].size(); ++t) acc += jp.dy[m][t] * jp.dy[nn][t];
      return acc;
    };
    CHECK(cotton_max_abs(cotton_from_taylor(taylor_metric3(affine, flat))) < 1e-13);
  }

  const Chart chart(x, empty, true);
  const Metric3 round = round_model_metric(cal);
  const auto C = cotton_from_taylor(taylor_metric3(chart, round));
  CHECK(cotton_max_abs(C) < 1e-4);
  CHECK(cotton_antisymmetry_residual(C) < 1e-10);

  const auto C2 = cotton_from_taylor(taylor_metric3(chart, conformal_scale(round)));
  double dev = 0;
  for (size_t t = 0; t < C.size(); ++t) dev = std::max(dev, std::abs(C[t] - C2[t]));
  CHECK(dev < 1e-4);

  // The conformally changed metric genuinely differs (its curvature moves)
  // even though the Cotton tensor does not.
  const auto tm = taylor_metric3(chart, round);
  const auto tm2 = taylor_metric3(chart, conformal_scale(round));
  CHECK((riemann_from_taylor(tm) - riemann_from_taylor(tm2)).max_abs() > 1e-2);
}
