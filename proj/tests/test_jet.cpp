#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "qcrlab/jet.hpp"
#include "qcrlab/rng.hpp"

using namespace qcr;

namespace {

// Central finite-difference oracle (step h, Richardson once), independent of
// the jet arithmetic it checks.
struct FdOracle {
  std::function<double(double)> f;
  // Richardson once from the (2h, h) pair with h = 1e-3; the third-order
  // stencil is rounding-dominated below that step.
  double h{2e-3};

  double d1_plain(double t, double hh) const { return (f(t + hh) - f(t - hh)) / (2 * hh); }
  double d2_plain(double t, double hh) const {
    return (f(t + hh) - 2 * f(t) + f(t - hh)) / (hh * hh);
  }
  double d3_plain(double t, double hh) const {
    return (f(t + 2 * hh) - 2 * f(t + hh) + 2 * f(t - hh) - f(t - 2 * hh)) / (2 * hh * hh * hh);
  }
  double d1(double t) const { return (4 * d1_plain(t, h / 2) - d1_plain(t, h)) / 3; }
  double d2(double t) const { return (4 * d2_plain(t, h / 2) - d2_plain(t, h)) / 3; }
  double d3(double t) const { return (4 * d3_plain(t, h / 2) - d3_plain(t, h)) / 3; }
};

// Random expression tree over {+,-,*,/,sqrt} with guarded denominators and
// radicands, evaluated on any scalar type.
struct Expr {
  int op;          // 0 leaf-t, 1 leaf-const, 2 add, 3 sub, 4 mul, 5 div, 6 sqrt
  double c{0};
  int lhs{-1}, rhs{-1};
};

struct Program {
  std::vector<Expr> nodes;
  int root{0};

  template <typename S>
  S eval_node(int idx, const S& t) const {
    const Expr& e = nodes[idx];
    switch (e.op) {
      case 0: return t;
      case 1: return S(e.c);
      case 2: return eval_node<S>(e.lhs, t) + eval_node<S>(e.rhs, t);
      case 3: return eval_node<S>(e.lhs, t) - eval_node<S>(e.rhs, t);
      case 4: return eval_node<S>(e.lhs, t) * eval_node<S>(e.rhs, t);
      case 5: {
        // Guard the denominator away from zero.
        const S d = eval_node<S>(e.rhs, t);
        return eval_node<S>(e.lhs, t) / (d * d + S(2.0));
      }
      default: {
        const S a = eval_node<S>(e.lhs, t);
        return sqrt_guarded(a);
      }
    }
  }
  static double sqrt_guarded(double a) { return std::sqrt(a * a + 0.5); }
  static Jet3 sqrt_guarded(const Jet3& a) { return qcr::sqrt(a * a + Jet3(0.5)); }

  template <typename S>
  S eval(const S& t) const {
    return eval_node<S>(root, t);
  }
};

Program random_program(Rng& rng, int max_nodes = 9) {
  Program p;
  const int n = 3 + static_cast<int>(rng.raw() % static_cast<std::uint64_t>(max_nodes - 2));
  for (int i = 0; i < n; ++i) {
    Expr e;
    if (i < 2) {
      e.op = static_cast<int>(rng.raw() % 2);  // leaves first
    } else {
      e.op = 2 + static_cast<int>(rng.raw() % 5);
      e.lhs = static_cast<int>(rng.raw() % static_cast<std::uint64_t>(i));
      e.rhs = static_cast<int>(rng.raw() % static_cast<std::uint64_t>(i));
    }
    e.c = rng.uniform(-1.5, 1.5);
    p.nodes.push_back(e);
  }
  p.root = n - 1;
  return p;
}

}  // namespace

TEST_CASE("constants carry no derivatives") {
  const Jet3 c(3.25);
  CHECK(c.v == 3.25);
  for (int a = 0; a < 3; ++a) {
    CHECK(c.d1[a] == 0.0);
    for (int b = 0; b < 3; ++b) {
      CHECK(c.d2[a][b] == 0.0);
      for (int d = 0; d < 3; ++d) CHECK(c.d3[a][b][d] == 0.0);
    }
  }
}

TEST_CASE("polynomial jets are exact") {
  const double t = 1.7;
  const Jet3 x = Jet3::seed(t, 0);
  const Jet3 f = x * x;
  CHECK(f.v == doctest::Approx(t * t).epsilon(1e-15));
  CHECK(f.d1[0] == doctest::Approx(2 * t).epsilon(1e-15));
  CHECK(f.d2[0][0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f.d3[0][0][0] == 0.0);
}

TEST_CASE("1/sqrt(1+t^2) matches the finite-difference oracle") {
  const double t0 = 0.3;
  auto f = [](double t) { return 1.0 / std::sqrt(1.0 + t * t); };
  const FdOracle oracle{f};

  const Jet3 x = Jet3::seed(t0, 0);
  const Jet3 j = Jet3(1.0) / qcr::sqrt(Jet3(1.0) + x * x);

  CHECK(std::abs(j.v - f(t0)) < 1e-12);
  CHECK(std::abs(j.d1[0] - oracle.d1(t0)) < 1e-6);
  CHECK(std::abs(j.d2[0][0] - oracle.d2(t0)) < 1e-6);
  CHECK(std::abs(j.d3[0][0][0] - oracle.d3(t0)) < 1e-6);
}

TEST_CASE("division and sqrt guard near-zero values") {
  CHECK_THROWS_AS(reciprocal(Jet3(0.0)), std::domain_error);
  CHECK_THROWS_AS(qcr::sqrt(Jet3(-1.0)), std::domain_error);
  CHECK_THROWS_AS(qcr::sqrt(Jet3(1e-13)), std::domain_error);
}

TEST_CASE("mixed partials from multi-directional seeding") {
  // f(u, v) = u^2 v + v^3 / (1 + u^2): analytic cross derivatives.
  const double u0 = 0.4, v0 = -0.7;
  const Jet3 u = Jet3::seed(u0, 0), v = Jet3::seed(v0, 1);
  const Jet3 f = u * u * v + v * v * v / (Jet3(1.0) + u * u);

  const double denom = 1 + u0 * u0;
  const double f_uv_expect =
      2 * u0 - 3 * v0 * v0 * 2 * u0 / (denom * denom);  // d^2 f / du dv
  CHECK(f.d2[0][1] == doctest::Approx(f_uv_expect).epsilon(1e-12));
  CHECK(f.d2[1][0] == doctest::Approx(f_uv_expect).epsilon(1e-12));

  // d^3 f / du dv dv = -6 v0 * 2 u0 / denom^2
  const double f_uvv_expect = -12.0 * v0 * u0 / (denom * denom);
  CHECK(f.d3[0][1][1] == doctest::Approx(f_uvv_expect).epsilon(1e-11));
  CHECK(f.d3[1][0][1] == doctest::Approx(f_uvv_expect).epsilon(1e-11));
}

TEST_CASE("random composite expressions agree with the oracle") {
  Rng rng(20240229);
  int tested = 0;
  for (int trial = 0; trial < 200 && tested < 100; ++trial) {
    const Program p = random_program(rng);
    const double t0 = rng.uniform(-1.0, 1.0);
    auto f = [&](double t) { return p.eval<double>(t); };
    const FdOracle oracle{f};
    const Jet3 j = p.eval<Jet3>(Jet3::seed(t0, 0));

    // Skip degenerate programs whose output is constant at machine level.
    const double scale1 = std::max(1.0, std::abs(oracle.d1(t0)));
    const double scale2 = std::max(1.0, std::abs(oracle.d2(t0)));
    const double scale3 = std::max(1.0, std::abs(oracle.d3(t0)));
    CHECK(std::abs(j.v - f(t0)) < 1e-12);
    CHECK(std::abs(j.d1[0] - oracle.d1(t0)) / scale1 < 1e-5);
    CHECK(std::abs(j.d2[0][0] - oracle.d2(t0)) / scale2 < 1e-5);
    CHECK(std::abs(j.d3[0][0][0] - oracle.d3(t0)) / scale3 < 1e-5);
    ++tested;
  }
  CHECK(tested == 100);
}

TEST_CASE("jet symmetry of d2 and d3 under index permutation") {
  Rng rng(99);
  for (int t = 0; t < 20; ++t) {
    Jet3 x = Jet3::seed(rng.uniform(0.5, 1.5), 0);
    Jet3 y = Jet3::seed(rng.uniform(0.5, 1.5), 1);
    Jet3 z = Jet3::seed(rng.uniform(0.5, 1.5), 2);
    const Jet3 f = (x * y + z) / qcr::sqrt(x + y * y + z * z * x + Jet3(2.0));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        CHECK(f.d2[a][b] == doctest::Approx(f.d2[b][a]).epsilon(1e-14));
        for (int c = 0; c < 3; ++c) {
          CHECK(f.d3[a][b][c] == doctest::Approx(f.d3[b][a][c]).epsilon(1e-13));
          CHECK(f.d3[a][b][c] == doctest::Approx(f.d3[a][c][b]).epsilon(1e-13));
        }
      }
  }
}
