#include "qcrlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qcrlab/curvature.hpp"
#include "qcrlab/gauge.hpp"
#include "qcrlab/heisenberg.hpp"

namespace qcr {

namespace {

constexpr std::uint64_t kStreamPoints = 0x10;
constexpr std::uint64_t kStreamFrames = 0x20;
constexpr std::uint64_t kStreamNijenhuis = 0x30;
constexpr std::uint64_t kStreamBracket = 0x40;
constexpr std::uint64_t kStreamHeis = 0x50;
constexpr std::uint64_t kStreamGauge = 0x60;
constexpr std::uint64_t kStreamCurv = 0x70;

QuadricPoint sample_point(const RunConfig& cfg, std::uint64_t idx) {
  Rng rng = Rng::derive(cfg.seed ^ kStreamPoints, idx);
  return random_point(cfg.p, cfg.q, rng);
}

DFrame sample_frame(const RunConfig& cfg, const QuadricPoint& x, std::uint64_t idx) {
  Rng rng = Rng::derive(cfg.seed ^ kStreamFrames, idx);
  return build_dframe(x, rng);
}

}  // namespace

std::vector<QuadricPoint> load_points_csv(const std::string& path, int p, int q,
                                          std::vector<std::string>* rejects) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open points file: " + path);
  const Signature sig(p + 1, q);
  const int want = 4 * sig.dim();
  std::vector<QuadricPoint> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    bool bad = false;
    while (std::getline(ss, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (...) {
        bad = true;
        break;
      }
    }
    std::ostringstream why;
    if (bad || static_cast<int>(vals.size()) != want) {
      why << "line " << lineno << ": expected " << want << " comma-separated reals";
      if (rejects) rejects->push_back(why.str());
      continue;
    }
    QVector x = QVector::zero(sig);
    for (int i = 0; i < sig.dim(); ++i)
      x[i] = Quaternion{vals[4 * i], vals[4 * i + 1], vals[4 * i + 2], vals[4 * i + 3]};
    std::string reason;
    if (auto pt = validate_point(x, &reason)) {
      pts.push_back(*pt);
    } else if (rejects) {
      why << "line " << lineno << ": " << reason;
      rejects->push_back(why.str());
    }
  }
  return pts;
}

std::vector<HeisCsvRow> load_heis_csv(const std::string& path, int p, int q,
                                      std::vector<std::string>* rejects) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open points file: " + path);
  const int n = p + q;
  const int want = 3 + 4 * n;
  std::vector<HeisCsvRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    bool bad = false;
    while (std::getline(ss, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (...) {
        bad = true;
        break;
      }
    }
    if (bad || static_cast<int>(vals.size()) != want) {
      if (rejects) {
        std::ostringstream why;
        why << "line " << lineno << ": expected " << want << " comma-separated reals";
        rejects->push_back(why.str());
      }
      continue;
    }
    HeisCsvRow row;
    row.a = Quaternion{0, vals[0], vals[1], vals[2]};
    for (int i = 0; i < n; ++i)
      row.y.push_back(
          Quaternion{vals[3 + 4 * i], vals[4 + 4 * i], vals[5 + 4 * i], vals[6 + 4 * i]});
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::vector<CheckRecord> run_model_suite(const RunConfig& cfg, const CalibrationConstants& cal) {
  std::vector<CheckRecord> out;
  const int n = cfg.p + cfg.q;

  {  // Calibration sweep uniqueness, asserted against the stored constants.
    const CalibrationSweep sweep = calibrate(std::max(cfg.p, 1), cfg.q, cfg.seed);
    const CalibrationConstants gold = golden_calibration();
    const bool match = sweep.consistent_count == 1 &&
                       sweep.constants.s_omega == gold.s_omega &&
                       sweep.constants.c_wedge == gold.c_wedge &&
                       sweep.constants.c_quad == gold.c_quad;
    std::ostringstream d;
    d << sweep.consistent_count << " consistent assignment(s)";
    out.push_back(make_pass_fail("calibration_unique", match, match ? 0.0 : 1.0, 16, d.str()));
  }

  {  // omega_0(xi_a) = (i, j, k) exactly.
    double worst = 0;
    for (int s = 0; s < cfg.samples; ++s) {
      const QuadricPoint x = sample_point(cfg, s);
      for (int a = 1; a <= 3; ++a)
        worst = std::max(worst,
                         (omega0(x, xi_field(x, a).v(), cal) - Quaternion::unit(a)).norm());
    }
    const double tol = cfg.tol("canonical_omega_xi", 1e-12);
    out.push_back(make_pass_fail("canonical_omega_xi", worst <= tol, worst, cfg.samples));
  }

  {  // [xi_a, xi_b] = 2 xi_c, closed form.
    double worst = 0;
    for (int s = 0; s < cfg.samples; ++s)
      worst = std::max(worst, xi_bracket_check(sample_point(cfg, s), 1e-12).max_residual);
    const double tol = cfg.tol("xi_bracket_so3", 1e-12);
    out.push_back(make_pass_fail("xi_bracket_so3", worst <= tol, worst, cfg.samples));
  }

  if (n < 1) {
    out.push_back(make_skip("structure_equation", "needs n >= 1 (no horizontal frame)"));
    out.push_back(make_skip("lie_derivative_table", "needs n >= 1"));
    out.push_back(make_skip("frame_gram", "needs n >= 1"));
    out.push_back(make_skip("frame_independence", "needs n >= 1"));
    out.push_back(make_skip("pullback_sp_invariance", "needs n >= 1"));
    out.push_back(make_skip("nijenhuis_integrability", "needs n >= 1"));
    out.push_back(make_skip("bracket_type", "needs n >= 1"));
    out.push_back(make_skip("constant_curvature", "needs n >= 1"));
    out.push_back(make_skip("flat_control", "needs n >= 1"));
    out.push_back(make_skip("signature_swap", "needs n >= 1"));
    out.push_back(make_skip("csv_points", "needs n >= 1"));
    return out;
  }

  {  // Structure equation over random points.
    double worst = 0;
    const double tol = cfg.tol("structure_equation", 1e-9);
    bool pass = true;
    for (int s = 0; s < cfg.samples; ++s) {
      const QuadricPoint x = sample_point(cfg, s);
      const DFrame fr = sample_frame(cfg, x, s);
      const CheckOutcome c = verify_structure_eq(x, fr, cal, tol);
      worst = std::max(worst, c.max_residual);
      pass = pass && c.pass;
    }
    out.push_back(make_pass_fail("structure_equation", pass, worst, cfg.samples));
  }

  {  // Lie-derivative table (Cartan homotopy route).
    double worst = 0;
    const double tol = cfg.tol("lie_derivative_table", 1e-8);
    for (int s = 0; s < cfg.samples; ++s) {
      const QuadricPoint x = sample_point(cfg, s);
      const DFrame fr = sample_frame(cfg, x, s);
      worst = std::max(worst, lie_derivative_check(x, fr, cal, tol).max_residual);
    }
    out.push_back(make_pass_fail("lie_derivative_table", worst <= tol, worst, cfg.samples));
  }

  {  // Frame invariants: Gram matrix, omega_0 kernel, right-i closure.
    double worst = 0;
    const double tol = cfg.tol("frame_gram", 1e-9);
    for (int s = 0; s < cfg.samples; ++s) {
      const QuadricPoint x = sample_point(cfg, s);
      const DFrame fr = sample_frame(cfg, x, s);
      const int m = fr.size();
      for (int i = 0; i < m; ++i) {
        worst = std::max(worst, omega0(x, fr.e[i], cal).norm());
        for (int j = 0; j < m; ++j) {
          const double want = (i == j) ? (i < 4 * cfg.p ? 1.0 : -1.0) : 0.0;
          worst = std::max(worst, std::abs(re_form(fr.e[i], fr.e[j]) - want));
        }
      }
      // Right multiplication by i maps the frame span to itself with an
      // orthogonal coefficient matrix.
      Eigen::MatrixXd C(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          const double gjj = (j < 4 * cfg.p) ? 1.0 : -1.0;
          C(j, i) = re_form(fr.e[j], fr.e[i] * Quaternion::i()) / gjj;
        }
      const Eigen::MatrixXd gram = C.transpose() * C;
      worst = std::max(
          worst,
          (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff());
    }
    out.push_back(make_pass_fail("frame_gram", worst <= tol, worst, cfg.samples));
  }

  {  // Structure-equation residual is frame independent (within 2x tol).
    const QuadricPoint x = sample_point(cfg, 0);
    const double tol = cfg.tol("frame_independence", 2e-9);
    double worst = 0;
    for (int f = 0; f < 5; ++f) {
      const DFrame fr = sample_frame(cfg, x, 1000 + f);
      worst = std::max(worst, verify_structure_eq(x, fr, cal, tol).max_residual);
    }
    out.push_back(make_pass_fail("frame_independence", worst <= tol, worst, 5));
  }

  {  // x -> Ax preserves omega_0 for A in Sp(p+1, q).
    double worst = 0;
    const double tol = cfg.tol("pullback_sp_invariance", 1e-10);
    const Signature asig(cfg.p + 1, cfg.q);
    for (int t = 0; t < 20; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamPoints, 5000 + t);
      const QMatrix A = random_sp(asig, rng);
      const QuadricPoint x = sample_point(cfg, t % cfg.samples);
      const DFrame fr = sample_frame(cfg, x, t % cfg.samples);
      const QuadricPoint Ax(A * x.x());
      for (int a = 1; a <= 3; ++a) {
        const QVector v = xi_field(x, a).v();
        worst = std::max(worst, (omega0(Ax, A * v, cal) - omega0(x, v, cal)).norm());
      }
      for (const auto& e : fr.e)
        worst = std::max(worst, (omega0(Ax, A * e, cal) - omega0(x, e, cal)).norm());
    }
    out.push_back(make_pass_fail("pullback_sp_invariance", worst <= tol, worst, 20));
  }

  {  // Integrability of the extended almost complex structures.
    double worst = 0, worst_ext = 0;
    const double tol = cfg.tol("nijenhuis_integrability", 1e-5);
    const double tol_ext = cfg.tol("nijenhuis_extension", 1e-6);
    const int pts = std::min(cfg.samples, 10);
    for (int alpha = 1; alpha <= 3; ++alpha)
      for (int s = 0; s < pts; ++s) {
        const QuadricPoint x = sample_point(cfg, s);
        Rng rng = Rng::derive(cfg.seed ^ kStreamNijenhuis, alpha * 100 + s);
        const NijenhuisOutcome r =
            nijenhuis_check(x, alpha, cfg.samples, cfg.fd_step, tol, cal, rng);
        worst = std::max(worst, r.tensor.max_residual);
        worst_ext = std::max(worst_ext, r.extension_deviation);
      }
    std::ostringstream d;
    d << "extension deviation " << worst_ext;
    out.push_back(make_pass_fail("nijenhuis_integrability",
                                 worst <= tol && worst_ext <= tol_ext, worst, 3 * pts,
                                 d.str()));
  }

  {  // Bracket type on D^{1,0}.
    double worst = 0;
    const double tol = cfg.tol("bracket_type", 1e-5);
    const int pts = std::min(cfg.samples, 10);
    for (int s = 0; s < pts; ++s) {
      const QuadricPoint x = sample_point(cfg, s);
      Rng rng = Rng::derive(cfg.seed ^ kStreamBracket, s);
      worst = std::max(worst,
                       bracket_type_check(x, 3, cfg.fd_step, tol, cal, rng).max_residual);
    }
    out.push_back(make_pass_fail("bracket_type", worst <= tol, worst, pts));
  }

  {  // Constant curvature 1 through the jet pipeline.
    const double tol = cfg.tol("constant_curvature", 1e-5);
    const QuadricPoint x = sample_point(cfg, 0);
    const DFrame fr = sample_frame(cfg, x, 0);
    const Chart chart(x, fr, true);
    const Riemann4 R = numeric_riemann(chart);
    Eigen::MatrixXd g0 = Eigen::MatrixXd::Zero(chart.dim(), chart.dim());
    for (int i = 0; i < 3; ++i) g0(i, i) = 1.0;
    for (int i = 0; i < fr.size(); ++i)
      g0(3 + i, 3 + i) = (i < 4 * cfg.p) ? 1.0 : -1.0;
    const double worst = (R - constant_curvature(g0, 1.0)).max_abs();
    out.push_back(make_pass_fail("constant_curvature", worst <= tol, worst, 1));
  }

  {  // Flat affine chart control.
    const double tol = cfg.tol("flat_control", 1e-10);
    const QuadricPoint x = sample_point(cfg, 0);
    const DFrame fr = sample_frame(cfg, x, 0);
    const Chart chart(x, fr, false);
    const double worst = numeric_riemann(chart).max_abs();
    out.push_back(make_pass_fail("flat_control", worst <= tol, worst, 1));
  }

  {  // Signature bookkeeping: the swapped-signature model passes too.
    RunConfig swapped = cfg;
    std::swap(swapped.p, swapped.q);
    if (swapped.p + swapped.q < 1) {
      out.push_back(make_skip("signature_swap", "needs n >= 1"));
    } else {
      double worst = 0;
      const double tol = cfg.tol("signature_swap", 1e-9);
      for (int s = 0; s < std::min(cfg.samples, 5); ++s) {
        const QuadricPoint x = sample_point(swapped, s);
        const DFrame fr = sample_frame(swapped, x, s);
        worst = std::max(worst, verify_structure_eq(x, fr, cal, tol).max_residual);
      }
      out.push_back(
          make_pass_fail("signature_swap", worst <= tol, worst, std::min(cfg.samples, 5)));
    }
  }

  if (cfg.points_csv) {
    std::vector<std::string> rejects;
    const auto pts = load_points_csv(*cfg.points_csv, cfg.p, cfg.q, &rejects);
    double worst = 0;
    const double tol = cfg.tol("csv_points", 1e-9);
    bool pass = true;
    for (const auto& x : pts) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamFrames, 0xC5F);
      const DFrame fr = build_dframe(x, rng);
      const CheckOutcome c = verify_structure_eq(x, fr, cal, tol);
      worst = std::max(worst, c.max_residual);
      pass = pass && c.pass;
    }
    std::ostringstream d;
    d << pts.size() << " accepted, " << rejects.size() << " rejected";
    for (const auto& r : rejects) d << "; " << r;
    out.push_back(make_pass_fail("csv_points", pass, worst,
                                 static_cast<int>(pts.size()), d.str()));
  } else {
    out.push_back(make_skip("csv_points", "no --points file supplied"));
  }

  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckRecord> run_curvature_suite(const RunConfig& cfg,
                                             const CalibrationConstants& cal) {
  std::vector<CheckRecord> out;
  const int n = cfg.p + cfg.q;

  if (n >= 1) {
    auto [g, triple] = standard_triple(cfg.p, cfg.q);

    {
      const double worst = triple_residual(triple, g);
      const double tol = cfg.tol("triple_standard", 1e-12);
      out.push_back(make_pass_fail("triple_standard", worst <= tol, worst, 1));
    }

    {  // Ricci(R_HP) = 4(n+2) g.
      const Riemann4 RHP = r_hp(g, triple);
      const double worst = (ricci(RHP) - 4.0 * (n + 2) * g).cwiseAbs().maxCoeff();
      const double tol = cfg.tol("ricci_rhp_einstein", 1e-12);
      out.push_back(make_pass_fail("ricci_rhp_einstein", worst <= tol, worst, 1));
      const double bianchi = bianchi1_residual(RHP);
      out.push_back(make_pass_fail("rhp_bianchi", bianchi <= 1e-12, bianchi, 1));
    }

    if (n >= 2) {
      const Riemann4 RHP = r_hp(g, triple);
      {
        const double worst = t_tensor(RHP, g, triple).max_abs();
        const double tol = cfg.tol("t_of_rhp_zero", 1e-12);
        out.push_back(make_pass_fail("t_of_rhp_zero", worst <= tol, worst, 1));
      }
      {  // Trace-free T on Einstein-normalized random curvature tensors.
        double worst = 0;
        const double tol = cfg.tol("t_tracefree_random", 1e-10);
        for (int t = 0; t < 20; ++t) {
          Rng rng = Rng::derive(cfg.seed ^ kStreamCurv, t);
          const Riemann4 R =
              einstein_normalize(random_algebraic_curvature(g, rng), g, 4.0 * (n + 2));
          worst = std::max(worst, ricci(t_tensor(R, g, triple)).cwiseAbs().maxCoeff());
        }
        out.push_back(make_pass_fail("t_tracefree_random", worst <= tol, worst, 20));
      }
      {  // t(R) - t(R') = R - R' (the constant part cancels).
        Rng rng = Rng::derive(cfg.seed ^ kStreamCurv, 777);
        const Riemann4 R1 = random_algebraic_curvature(g, rng);
        const Riemann4 R2 = random_algebraic_curvature(g, rng);
        const Riemann4 lhs = t_tensor(R1, g, triple) - t_tensor(R2, g, triple);
        const double worst = (lhs - (R1 - R2)).max_abs();
        const double tol = cfg.tol("t_linearity", 1e-12);
        out.push_back(make_pass_fail("t_linearity", worst <= tol, worst, 1));
      }
      {
        Rng rng = Rng::derive(cfg.seed ^ kStreamCurv, 778);
        const Riemann4 R =
            einstein_normalize(random_algebraic_curvature(g, rng), g, 4.0 * (n + 2));
        const InvarianceOutcome inv = t_invariance_check(
            R, g, triple, 20, cfg.seed, cfg.tol("t_rotation_invariance", 1e-10),
            cfg.tol("t_frame_covariance", 1e-8));
        out.push_back(make_pass_fail("t_rotation_invariance",
                                     inv.rotation_residual <=
                                         cfg.tol("t_rotation_invariance", 1e-10),
                                     inv.rotation_residual, 20));
        out.push_back(make_pass_fail(
            "t_frame_covariance",
            inv.covariance_residual <= cfg.tol("t_frame_covariance", 1e-8),
            inv.covariance_residual, 20));
      }
    } else {
      out.push_back(make_skip("t_of_rhp_zero", "needs n >= 2"));
      out.push_back(make_skip("t_tracefree_random", "needs n >= 2"));
      out.push_back(make_skip("t_linearity", "needs n >= 2"));
      out.push_back(make_skip("t_rotation_invariance", "needs n >= 2"));
      out.push_back(make_skip("t_frame_covariance", "needs n >= 2"));
    }

    if (n == 1) {
      {  // Schur form of R_HP in dimension 4.
        const Riemann4 RHP = r_hp(g, triple);
        const double worst = (RHP - constant_curvature(g, 4.0)).max_abs();
        const double tol = cfg.tol("rhp_schur_dim4", 1e-12);
        out.push_back(make_pass_fail("rhp_schur_dim4", worst <= tol, worst, 1));
      }
      {  // T agrees with the Weyl tensor on Einstein-12 inputs.
        double worst = 0;
        const double tol = cfg.tol("t_weyl_dim4", 1e-10);
        for (int t = 0; t < 10; ++t) {
          Rng rng = Rng::derive(cfg.seed ^ kStreamCurv, 900 + t);
          const Riemann4 R =
              einstein_normalize(random_algebraic_curvature(g, rng), g, 12.0);
          worst = std::max(worst, (t_tensor_dim4(R, g) - weyl4(R, g)).max_abs());
        }
        out.push_back(make_pass_fail("t_weyl_dim4", worst <= tol, worst, 10));
      }
      {  // Weyl is trace-free and idempotent on Einstein inputs.
        double worst_tr = 0, worst_idem = 0;
        for (int t = 0; t < 10; ++t) {
          Rng rng = Rng::derive(cfg.seed ^ kStreamCurv, 950 + t);
          const Riemann4 R = random_algebraic_curvature(g, rng);
          worst_tr = std::max(worst_tr, ricci(weyl4(R, g)).cwiseAbs().maxCoeff());
          const Riemann4 Re = einstein_normalize(R, g, 12.0);
          const Riemann4 W = weyl4(Re, g);
          worst_idem = std::max(worst_idem, (weyl4(W, g) - W).max_abs());
        }
        const double tol = cfg.tol("weyl_tracefree", 1e-10);
        out.push_back(make_pass_fail("weyl_tracefree", worst_tr <= tol, worst_tr, 10));
        out.push_back(
            make_pass_fail("weyl_idempotent", worst_idem <= 1e-12, worst_idem, 10));
      }
    } else {
      out.push_back(make_skip("rhp_schur_dim4", "runs at n = 1"));
      out.push_back(make_skip("t_weyl_dim4", "runs at n = 1"));
      out.push_back(make_skip("weyl_tracefree", "runs at n = 1"));
      out.push_back(make_skip("weyl_idempotent", "runs at n = 1"));
    }

    {  // rotate_triple keeps the quaternion relations.
      double worst = 0;
      for (int t = 0; t < 10; ++t) {
        Rng rng = Rng::derive(cfg.seed ^ kStreamCurv, 1200 + t);
        const TripleMatrices rt = rotate_triple(ad_matrix(rng.unit_quaternion()), triple);
        worst = std::max(worst, triple_residual(rt, g));
      }
      const double tol = cfg.tol("rotate_triple_closure", 1e-12);
      out.push_back(make_pass_fail("rotate_triple_closure", worst <= tol, worst, 10));
    }

    {  // Model flatness via the T-formula pipeline, plus negative control.
      const double tol = cfg.tol("model_flatness", 1e-5);
      double worst = 0;
      const int pts = std::min(cfg.samples, 5);
      for (int s = 0; s < pts; ++s) {
        const QuadricPoint x = sample_point(cfg, 40 + s);
        const DFrame fr = sample_frame(cfg, x, 40 + s);
        const Chart chart(x, fr, true);
        const Riemann4 R = numeric_riemann(chart);
        // Restrict to the D-frame indices and subtract the constant part.
        const int m = fr.size();
        Eigen::MatrixXd gD = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) gD(i, i) = (i < 4 * cfg.p) ? 1.0 : -1.0;
        Riemann4 T(m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
              for (int l = 0; l < m; ++l)
                T(i, j, k, l) = R(3 + i, 3 + j, 3 + k, 3 + l) -
                                (gD(j, l) * (i == k) - gD(j, k) * (i == l));
        worst = std::max(worst, T.max_abs());
      }
      out.push_back(make_pass_fail("model_flatness", worst <= tol, worst, pts));

      // Deliberate negative control: the same pipeline on the ambient form
      // scaled by 1 + 0.1 x_0 must report a visibly nonzero tensor.
      double dev = 0;
      const MetricScale bump = [](const std::vector<Jet3>& y) {
        return 1.0 + 0.1 * y[0];
      };
      for (int s = 0; s < pts; ++s) {
        const QuadricPoint x = sample_point(cfg, 40 + s);
        const DFrame fr = sample_frame(cfg, x, 40 + s);
        const Chart chart(x, fr, true);
        const Riemann4 R = numeric_riemann(chart, bump);
        const int m = fr.size();
        Eigen::MatrixXd gD = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) gD(i, i) = (i < 4 * cfg.p) ? 1.0 : -1.0;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
              for (int l = 0; l < m; ++l)
                dev = std::max(dev, std::abs(R(3 + i, 3 + j, 3 + k, 3 + l) -
                                             (gD(j, l) * (i == k) - gD(j, k) * (i == l))));
      }
      out.push_back(make_pass_fail("model_flatness_negative_control", dev >= 1e-2, dev, pts,
                                   "perturbed metric must be detected"));
    }
  } else {
    for (const char* name :
         {"triple_standard", "ricci_rhp_einstein", "rhp_bianchi", "t_of_rhp_zero",
          "t_tracefree_random", "t_linearity", "t_rotation_invariance", "t_frame_covariance",
          "rhp_schur_dim4", "t_weyl_dim4", "weyl_tracefree", "weyl_idempotent",
          "rotate_triple_closure", "model_flatness", "model_flatness_negative_control"})
      out.push_back(make_skip(name, "needs n >= 1"));
  }

  // n = 0 conformal-flatness checks on the round 3-model.
  if (n == 0) {
    Rng rng = Rng::derive(cfg.seed ^ kStreamCurv, 3000);
    const QuadricPoint x = random_point(0, 0, rng);
    const DFrame empty{x, {}};
    const Chart chart(x, empty, true);

    {  // Flat 3-chart control: Cotton of a constant metric vanishes.
      const Chart affine(x, empty, false);
      const Metric3 flat = [&](const Chart::JetPoint& jp, int m, int nn) {
        Jet3 acc(0.0);
        for (size_t t = 0; t < jp.dy[m].size(); ++t) acc += jp.dy[m][t] * jp.dy[nn][t];
        return acc;
      };
      const auto tm = taylor_metric3(affine, flat);
      const double worst = cotton_max_abs(cotton_from_taylor(tm));
      out.push_back(make_pass_fail("cotton_flat_zero", worst <= 1e-12, worst, 1));
    }

    const Metric3 round = round_model_metric(cal);
    const auto tm = taylor_metric3(chart, round);
    const auto C = cotton_from_taylor(tm);
    {
      const double worst = cotton_max_abs(C);
      const double tol = cfg.tol("cotton_round_model", 1e-4);
      out.push_back(make_pass_fail("cotton_round_model", worst <= tol, worst, 1));
    }
    {
      const double worst = cotton_antisymmetry_residual(C);
      out.push_back(make_pass_fail("cotton_antisymmetry", worst <= 1e-10, worst, 1));
    }
    {  // Conformal change g -> u^4 g leaves the Cotton tensor unchanged.
      const auto tm2 = taylor_metric3(chart, conformal_scale(round));
      const auto C2 = cotton_from_taylor(tm2);
      double worst = 0;
      for (size_t t = 0; t < C.size(); ++t) worst = std::max(worst, std::abs(C[t] - C2[t]));
      const double tol = cfg.tol("cotton_conformal_invariance", 1e-4);
      out.push_back(make_pass_fail("cotton_conformal_invariance", worst <= tol, worst, 1));
    }
  } else {
    out.push_back(make_skip("cotton_flat_zero", "runs at n = 0"));
    out.push_back(make_skip("cotton_round_model", "runs at n = 0"));
    out.push_back(make_skip("cotton_antisymmetry", "runs at n = 0"));
    out.push_back(make_skip("cotton_conformal_invariance", "runs at n = 0"));
  }

  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckRecord> run_heisenberg_suite(const RunConfig& cfg,
                                              const CalibrationConstants& cal) {
  std::vector<CheckRecord> out;
  const int n = cfg.p + cfg.q;
  if (n < 1) {
    for (const char* name :
         {"heis_group_axioms", "heis_center", "sim_automorphism", "embed_heis_null",
          "embed_sigma_null", "proj_equivalence", "psp_null_preservation", "sim_matrix",
          "hcan_iota_compat", "csv_heis_points", "pullback_exact_spq", "pullback_sim_fit"})
      out.push_back(make_skip(name, "needs n >= 1"));
    return out;
  }
  const Signature hsig(cfg.p, cfg.q);
  const Signature esig(cfg.p + 1, cfg.q + 1);

  auto rand_heis = [&](Rng& rng) {
    QVector y = QVector::zero(hsig);
    for (int i = 0; i < hsig.dim(); ++i) y[i] = rng.quaternion_box(1.0);
    return HeisPoint(rng.quaternion_box(1.0).im(), y);
  };

  {  // Group axioms: identity, inverse, associativity.
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, t);
      const HeisPoint m1 = rand_heis(rng), m2 = rand_heis(rng), m3 = rand_heis(rng);
      const HeisPoint e = HeisPoint::origin(hsig);
      auto dist = [](const HeisPoint& a, const HeisPoint& b) {
        return std::max((a.a - b.a).norm(), (a.y - b.y).euclid_norm());
      };
      worst = std::max(worst, dist(heis_mul(e, m1), m1));
      worst = std::max(worst, dist(heis_mul(m1, heis_inverse(m1)), e));
      worst = std::max(worst,
                       dist(heis_mul(heis_mul(m1, m2), m3), heis_mul(m1, heis_mul(m2, m3))));
    }
    const double tol = cfg.tol("heis_group_axioms", 1e-12);
    out.push_back(make_pass_fail("heis_group_axioms", worst <= tol, worst, 100));
  }

  {  // Commutators are central: (-2 Im<y,z>, 0).
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, 200 + t);
      HeisPoint m1 = rand_heis(rng), m2 = rand_heis(rng);
      m1 = HeisPoint(Quaternion{}, m1.y);
      m2 = HeisPoint(Quaternion{}, m2.y);
      const HeisPoint comm = heis_mul(heis_mul(m1, m2),
                                      heis_inverse(heis_mul(m2, m1)));
      const Quaternion h = herm(m1.y, m2.y);
      const Quaternion expect = -1.0 * (h - h.conj());
      worst = std::max(worst, (comm.a - expect).norm());
      worst = std::max(worst, comm.y.euclid_norm());
    }
    const double tol = cfg.tol("heis_center", 1e-12);
    out.push_back(make_pass_fail("heis_center", worst <= tol, worst, 50));
  }

  {  // The linear part acts by automorphisms; dilations compose.
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, 400 + t);
      const SimElement s = random_sim(hsig, rng);
      const HeisPoint m1 = rand_heis(rng), m2 = rand_heis(rng);
      const HeisPoint lhs = sim_linear(s, heis_mul(m1, m2));
      const HeisPoint rhs = heis_mul(sim_linear(s, m1), sim_linear(s, m2));
      worst = std::max(worst, (lhs.a - rhs.a).norm());
      worst = std::max(worst, (lhs.y - rhs.y).euclid_norm());
    }
    const double tol = cfg.tol("sim_automorphism", 1e-12);
    out.push_back(make_pass_fail("sim_automorphism", worst <= tol, worst, 100));
  }

  {  // iota image is null; origin lands on [-1,0,...,0,1]; in(jective) spots;
     // raw negative block never degenerates.
    double worst = 0;
    bool spot = true;
    for (int t = 0; t < 100; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, 600 + t);
      const HeisPoint m = rand_heis(rng);
      const ProjPoint P = embed_heis(m);
      worst = std::max(worst, herm(P.x(), P.x()).norm());
      const HeisPoint m2 = rand_heis(rng);
      if (proj_equal(embed_heis(m2), P) &&
          ((m.a - m2.a).norm() > 1e-6 || (m.y - m2.y).euclid_norm() > 1e-6))
        spot = false;
    }
    QVector o = QVector::zero(esig);
    o[0] = Quaternion(-1);
    o[esig.dim() - 1] = Quaternion(1);
    const bool origin_ok =
        proj_equal(embed_heis(HeisPoint::origin(hsig)), ProjPoint::normalize(o));
    const double tol = cfg.tol("embed_heis_null", 1e-12);
    out.push_back(make_pass_fail("embed_heis_null", worst <= tol && spot && origin_ok, worst,
                                 100, origin_ok ? "" : "origin image mismatch"));
  }

  {  // Sigma embedding is null and hits [1,0,...,0,1] at the base point.
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      const QuadricPoint x = sample_point(cfg, 700 + t);
      worst = std::max(worst, herm(embed_sigma(x).x(), embed_sigma(x).x()).norm());
    }
    QVector b = QVector::zero(Signature(cfg.p + 1, cfg.q));
    b[0] = Quaternion(1);
    const bool base_ok =
        proj_equal(embed_sigma(QuadricPoint(b)), infinity_point(cfg.p, cfg.q));
    const double tol = cfg.tol("embed_sigma_null", 1e-12);
    out.push_back(make_pass_fail("embed_sigma_null", worst <= tol && base_ok, worst, 100));
  }

  {  // proj_equal is right-scalar invariant and separates points.
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, 800 + t);
      const ProjPoint P = embed_heis(rand_heis(rng));
      const Quaternion lam = rng.quaternion_box(1.0) + Quaternion(1.5);
      ok = ok && proj_equal(P, ProjPoint::normalize(P.x() * lam));
    }
    QVector o1 = QVector::zero(esig), o2 = QVector::zero(esig);
    o1[0] = Quaternion(-1);
    o1[esig.dim() - 1] = Quaternion(1);
    o2[0] = Quaternion(1);
    o2[esig.dim() - 1] = Quaternion(1);
    ok = ok && !proj_equal(ProjPoint::normalize(o1), ProjPoint::normalize(o2));
    out.push_back(make_pass_fail("proj_equivalence", ok, ok ? 0.0 : 1.0, 50));
  }

  {  // Sp(p+1,q+1) preserves nullity and respects proj_equal.
    double worst = 0;
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, 900 + t);
      const QMatrix M = random_sp(esig, rng);
      const ProjPoint P = embed_heis(rand_heis(rng));
      const QVector img = M * P.x();
      worst = std::max(worst, herm(img, img).norm());
      const Quaternion lam = rng.quaternion_box(1.0) + Quaternion(1.5);
      ok = ok && proj_equal(psp_action(M, P),
                            psp_action(M, ProjPoint::normalize(P.x() * lam)));
    }
    const double tol = cfg.tol("psp_null_preservation", 1e-10);
    out.push_back(make_pass_fail("psp_null_preservation", worst <= tol && ok, worst, 50));
  }

  {  // Sim elements as matrices: in the group, fix infinity, and realize the
     // Heisenberg translations/linear parts through iota.
    double worst = 0;
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, 1000 + t);
      const SimElement s = random_sim(hsig, rng);
      const QMatrix M = sim_to_matrix(s);
      worst = std::max(worst, sp_residual(M));
      ok = ok && proj_equal(psp_action(M, infinity_point(cfg.p, cfg.q)),
                            infinity_point(cfg.p, cfg.q));
      // Pure translation: iota(m . trans) = M_trans iota(m).
      const SimElement pure_trans(QMatrix::identity(hsig), UnitQuaternion::one(), 1.0,
                                  s.trans);
      const HeisPoint m = rand_heis(rng);
      ok = ok && proj_equal(psp_action(sim_to_matrix(pure_trans), embed_heis(m)),
                            embed_heis(heis_mul(m, s.trans)));
      // Pure linear part: iota(linear(m)) = M_linear iota(m).
      const SimElement pure_lin(s.A, s.g, s.t, HeisPoint::origin(hsig));
      ok = ok && proj_equal(psp_action(sim_to_matrix(pure_lin), embed_heis(m)),
                            embed_heis(sim_linear(s, m)));
    }
    const double tol = cfg.tol("sim_matrix", 1e-10);
    out.push_back(make_pass_fail("sim_matrix", worst <= tol && ok, worst, 20,
                                 ok ? "" : "fixed-point or translation realization failed"));
  }

  {  // iota_*(D) lies in H^can; a dual vector does not.
    double worst = 0;
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
      const QuadricPoint x = sample_point(cfg, 1200 + t);
      const DFrame fr = sample_frame(cfg, x, 1200 + t);
      const ProjPoint P = embed_sigma(x);
      for (const auto& e : fr.e) {
        QVector lift = QVector::zero(esig);
        for (int i = 0; i < x.sig().dim(); ++i) lift[i] = e[i];
        worst = std::max(worst, hcan_residual(P, lift));
      }
      // Dual null vector with herm(x_rep, y) = 1 is rejected.
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, 1300 + t);
      QVector z = QVector::zero(esig);
      for (int i = 0; i < esig.dim(); ++i) z[i] = rng.quaternion_box(1.0);
      const Quaternion bxz = herm(P.x(), z);
      if (bxz.norm() > 1e-3) {
        QVector y = z * bxz.inverse();
        y = y - P.x() * (0.5 * herm(y, y).re());
        ok = ok && !hcan_member(P, y, 1e-6) && std::abs(herm(P.x(), y).norm() - 1.0) < 1e-9;
      }
    }
    const double tol = cfg.tol("hcan_iota_compat", 1e-12);
    out.push_back(make_pass_fail("hcan_iota_compat", worst <= tol && ok, worst, 20));
  }

  {  // Exact pullback relation for Sp(p+1,q).Sp(1).
    double worst = 0;
    const double tol = cfg.tol("pullback_exact_spq", 1e-9);
    const Signature asig(cfg.p + 1, cfg.q);
    for (int t = 0; t < 10; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, 1400 + t);
      const QMatrix A = random_sp(asig, rng);
      const UnitQuaternion a = rng.unit_quaternion();
      const QuadricPoint x = sample_point(cfg, 1400 + t);
      const DFrame fr = sample_frame(cfg, x, 1400 + t);
      worst = std::max(worst, pullback_exact_check(A, a, x, fr, cal, tol).residual);
    }
    out.push_back(make_pass_fail("pullback_exact_spq", worst <= tol, worst, 10));
  }

  if (cfg.points_csv) {  // User-supplied HeisPoints: embedding nullity.
    std::vector<std::string> rejects;
    const auto rows = load_heis_csv(*cfg.points_csv, cfg.p, cfg.q, &rejects);
    double worst = 0;
    const double tol = cfg.tol("csv_heis_points", 1e-12);
    for (const auto& row : rows) {
      QVector y = QVector::zero(hsig);
      for (int i = 0; i < hsig.dim(); ++i) y[i] = row.y[i];
      const ProjPoint P = embed_heis(HeisPoint(row.a, y));
      worst = std::max(worst, herm(P.x(), P.x()).norm());
    }
    std::ostringstream d;
    d << rows.size() << " accepted, " << rejects.size() << " rejected";
    for (const auto& r : rejects) d << "; " << r;
    out.push_back(make_pass_fail("csv_heis_points", worst <= tol, worst,
                                 static_cast<int>(rows.size()), d.str()));
  } else {
    out.push_back(make_skip("csv_heis_points", "no --points file supplied"));
  }

  {  // Conformality fit for Sim elements acting through the embedding.
    double worst = 0;
    int skipped = 0;
    bool scale_ok = true;
    const double tol = cfg.tol("pullback_sim_fit", 1e-6);
    for (int t = 0; t < 10; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamHeis, 1500 + t);
      const SimElement s = random_sim(hsig, rng);
      const QMatrix M = sim_to_matrix(s);
      const QuadricPoint x = sample_point(cfg, 1500 + t);
      const DFrame fr = sample_frame(cfg, x, 1500 + t);
      const PullbackOutcome r = pullback_sim_check(M, x, fr, cal, tol);
      if (r.skipped) {
        ++skipped;
        continue;
      }
      worst = std::max(worst, r.residual);
      scale_ok = scale_ok && r.scale > 0;
    }
    std::ostringstream d;
    if (skipped) d << skipped << " sample(s) outside the chart";
    out.push_back(make_pass_fail("pullback_sim_fit", worst <= tol && scale_ok, worst,
                                 10 - skipped, d.str()));
  }

  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckRecord> run_gauge_suite(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  const int n = cfg.p + cfg.q;
  if (n < 1) {
    for (const char* name :
         {"transform_omega_two_route", "j_from_sigma_roundtrip", "j_from_sigma_invalid",
          "symmetric_bi_chain", "gauge_consistency", "g_matrix_identity", "g_closure",
          "g_determinant_positive", "sim_anti_isomorphism"})
      out.push_back(make_skip(name, "needs n >= 1"));
    return out;
  }

  {  // Two-route agreement of the omega transformation.
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamGauge, t);
      const Quaternion w = rng.quaternion_box(1.0).im();
      worst = std::max(
          worst,
          transform_omega(w, std::exp(rng.uniform(-1.0, 1.0)), rng.unit_quaternion())
              .route_residual);
    }
    // a = i flips the j and k components.
    const TransformedOmega r =
        transform_omega(Quaternion::j(), 2.0, UnitQuaternion(Quaternion::i()));
    worst = std::max(worst, (r.value - Quaternion::j() * -2.0).norm());
    const double tol = cfg.tol("transform_omega_two_route", 1e-12);
    out.push_back(make_pass_fail("transform_omega_two_route", worst <= tol, worst, 50));
  }

  {  // sigma built from the triple reconstructs the triple (both sign
     // conventions of the lowering).
    double worst = 0;
    auto [g, triple] = standard_triple(cfg.p, cfg.q);
    const std::array<Eigen::MatrixXd, 3> sig_pos{g * triple.I, g * triple.J, g * triple.K};
    const std::array<Eigen::MatrixXd, 3> sig_neg{-g * triple.I, -g * triple.J, -g * triple.K};
    for (const auto& sgm : {sig_pos, sig_neg}) {
      const TripleMatrices rec = j_from_sigma(sgm);
      for (int a = 1; a <= 3; ++a)
        worst = std::max(worst, (rec.at(a) - triple.at(a)).cwiseAbs().maxCoeff());
    }
    // Rotated input recovers the rotated triple.
    Rng rng = Rng::derive(cfg.seed ^ kStreamGauge, 100);
    const Rot3 A = ad_matrix(rng.unit_quaternion());
    std::array<Eigen::MatrixXd, 3> rot{sig_pos[0], sig_pos[1], sig_pos[2]};
    for (int alpha = 1; alpha <= 3; ++alpha) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(g.rows(), g.cols());
      for (int beta = 1; beta <= 3; ++beta) acc += A.m()(beta - 1, alpha - 1) * sig_pos[beta - 1];
      rot[alpha - 1] = acc;
    }
    const TripleMatrices recr = j_from_sigma(rot);
    const TripleMatrices want = rotate_triple(A, triple);
    for (int a = 1; a <= 3; ++a)
      worst = std::max(worst, (recr.at(a) - want.at(a)).cwiseAbs().maxCoeff());
    const double tol = cfg.tol("j_from_sigma_roundtrip", 1e-9);
    out.push_back(make_pass_fail("j_from_sigma_roundtrip", worst <= tol, worst, 7));
  }

  {  // Unstructured antisymmetric input is rejected.
    Rng rng = Rng::derive(cfg.seed ^ kStreamGauge, 200);
    const int d = 4 * n;
    std::array<Eigen::MatrixXd, 3> bad;
    for (auto& s : bad) {
      Eigen::MatrixXd raw(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) raw(i, j) = rng.uniform(-1.0, 1.0);
      s = raw - raw.transpose();
    }
    bool threw = false;
    try {
      (void)j_from_sigma(bad);
    } catch (const std::domain_error&) {
      threw = true;
    }
    out.push_back(make_pass_fail("j_from_sigma_invalid", threw, threw ? 0.0 : 1.0, 1));
  }

  {  // sigma_1(J_1 X, Y) = sigma_2(J_2 X, Y) = sigma_3(J_3 X, Y).
    double worst = 0;
    for (int t = 0; t < 10; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamGauge, 300 + t);
      const FiberData f = synth_fiber(cfg.p, cfg.q, rng);
      const TripleMatrices J = j_from_sigma(f.sigma);
      const Eigen::MatrixXd g1 = metric_from_sigma(f.sigma, J, 1);
      const Eigen::MatrixXd g2 = metric_from_sigma(f.sigma, J, 2);
      const Eigen::MatrixXd g3 = metric_from_sigma(f.sigma, J, 3);
      worst = std::max({worst, (g1 - g2).cwiseAbs().maxCoeff(),
                        (g2 - g3).cwiseAbs().maxCoeff(),
                        (g1 - g1.transpose()).cwiseAbs().maxCoeff()});
      worst = std::max(worst, fiber_residual(f));
    }
    const double tol = cfg.tol("symmetric_bi_chain", 1e-10);
    out.push_back(make_pass_fail("symmetric_bi_chain", worst <= tol, worst, 10));
  }

  {  // Full gauge-consistency run.
    Rng rng = Rng::derive(cfg.seed ^ kStreamGauge, 400);
    const FiberData f = synth_fiber(cfg.p, cfg.q, rng);
    const double tol = cfg.tol("gauge_consistency", 1e-10);
    const GaugeOutcome r = gauge_consistency_check(f, 50, cfg.seed, tol);
    const double worst = std::max({r.j_rotation_residual, r.metric_scale_residual,
                                   r.alpha_independence_residual, r.q_invariance_residual});
    out.push_back(make_pass_fail("gauge_consistency", r.pass, worst, 50));
  }

  {  // G-matrix: identity parameters, closure, positive determinant.
    const Signature sig(cfg.p, cfg.q);
    QVector v0 = QVector::zero(sig);
    const GParams id(1.0, UnitQuaternion::one(), QMatrix::identity(sig), v0);
    const Eigen::MatrixXd G = build_g_matrix(id);
    const double idres =
        (G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
    out.push_back(make_pass_fail("g_matrix_identity", idres <= 1e-15, idres, 1));

    const double tol = cfg.tol("g_closure", 1e-9);
    const ClosureOutcome c = g_closure_check(cfg.p, cfg.q, 50, cfg.seed, tol);
    out.push_back(make_pass_fail("g_closure", c.pass, c.recovery_residual, 50));

    bool detpos = true;
    for (int t = 0; t < 20; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamGauge, 500 + t);
      QVector v = QVector::zero(sig);
      for (int i = 0; i < sig.dim(); ++i) v[i] = rng.quaternion_box(0.8);
      const GParams gp(std::exp(rng.uniform(-0.5, 0.5)), rng.unit_quaternion(),
                       random_sp(sig, rng), v);
      detpos = detpos && build_g_matrix(gp).determinant() > 0;
    }
    out.push_back(
        make_pass_fail("g_determinant_positive", detpos, detpos ? 0.0 : 1.0, 20));
  }

  {  // Composition reverses under the map onto Sim(H^n).
    double worst = 0;
    for (int t = 0; t < 30; ++t) {
      Rng rng = Rng::derive(cfg.seed ^ kStreamGauge, 600 + t);
      const GQuat g1 = random_gquat(cfg.p, cfg.q, rng);
      const GQuat g2 = random_gquat(cfg.p, cfg.q, rng);
      const SimHn lhs = g_to_sim(g_compose(g1, g2));
      const SimHn rhs = sim_hn_compose(g_to_sim(g2), g_to_sim(g1));
      worst = std::max(worst, sim_hn_distance(lhs, rhs));
    }
    const double tol = cfg.tol("sim_anti_isomorphism", 1e-12);
    out.push_back(make_pass_fail("sim_anti_isomorphism", worst <= tol, worst, 30));
  }

  return out;
}

// ---------------------------------------------------------------------------

Report run_suite(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  Report rep;
  rep.suite = cfg.suite;
  rep.config = cfg;
  const CalibrationConstants cal = golden_calibration();
  rep.cal_s_omega = cal.s_omega;
  rep.cal_c_wedge = cal.c_wedge;
  rep.cal_c_quad = cal.c_quad;

  auto append = [&](std::vector<CheckRecord> rs) {
    for (auto& r : rs) rep.add(std::move(r));
  };
  if (cfg.suite == "model" || cfg.suite == "all") append(run_model_suite(cfg, cal));
  if (cfg.suite == "curvature" || cfg.suite == "all") append(run_curvature_suite(cfg, cal));
  if (cfg.suite == "heisenberg" || cfg.suite == "all") append(run_heisenberg_suite(cfg, cal));
  if (cfg.suite == "gauge" || cfg.suite == "all") append(run_gauge_suite(cfg));
  rep.sort_records();

  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

}  // namespace qcr
