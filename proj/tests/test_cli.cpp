#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qcrlab/report.hpp"
#include "qcrlab/suites.hpp"

namespace {

std::string g_cli_path;  // path to the qcrlab binary, passed by ctest

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && argv[1][0] != '-') g_cli_path = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}

using namespace qcr;

TEST_CASE("run_suite is byte-deterministic and seed-stable") {
  RunConfig cfg;
  cfg.suite = "gauge";
  cfg.p = 1;
  cfg.q = 0;
  cfg.seed = 42;
  cfg.samples = 4;
  const std::string a = run_suite(cfg).to_json();
  const std::string b = run_suite(cfg).to_json();
  CHECK(a == b);

  // A different seed moves the samples but not the verdicts.
  RunConfig cfg2 = cfg;
  cfg2.seed = 43;
  const Report r1 = run_suite(cfg);
  const Report r2 = run_suite(cfg2);
  REQUIRE(r1.records.size() == r2.records.size());
  for (size_t i = 0; i < r1.records.size(); ++i) {
    CHECK(r1.records[i].name == r2.records[i].name);
    CHECK(r1.records[i].status == r2.records[i].status);
  }
}

TEST_CASE("tolerance overrides flip a check to fail and the exit status") {
  RunConfig cfg;
  cfg.suite = "gauge";
  cfg.p = 1;
  cfg.q = 0;
  cfg.samples = 2;
  cfg.tol_overrides["g_closure"] = 1e-30;
  const Report rep = run_suite(cfg);
  bool found = false;
  for (const auto& r : rep.records)
    if (r.name == "g_closure") {
      CHECK(r.status == CheckStatus::fail);
      found = true;
    }
  CHECK(found);
  CHECK(!rep.all_passed());
}

TEST_CASE("parameter gating reports skips, never failures") {
  RunConfig cfg;
  cfg.suite = "curvature";
  cfg.p = 1;
  cfg.q = 0;
  cfg.samples = 2;
  const Report rep = run_suite(cfg);
  for (const auto& r : rep.records) {
    if (r.name == "t_of_rhp_zero") CHECK(r.status == CheckStatus::skipped);
    CHECK(r.status != CheckStatus::fail);
  }

  // At n = 2 the same check runs and passes; every check appears once.
  RunConfig c2 = cfg;
  c2.p = 2;
  const Report rep2 = run_suite(c2);
  bool found = false;
  for (size_t i = 0; i < rep2.records.size(); ++i) {
    if (rep2.records[i].name == "t_of_rhp_zero") {
      CHECK(rep2.records[i].status == CheckStatus::pass);
      found = true;
    }
    if (i > 0) CHECK(rep2.records[i].name != rep2.records[i - 1].name);
  }
  CHECK(found);

  // p = q = 0: the n = 0 Cotton checks run; n >= 1 checks are skipped.
  RunConfig c0;
  c0.suite = "all";
  c0.p = 0;
  c0.q = 0;
  c0.samples = 2;
  const Report rep0 = run_suite(c0);
  int cotton_pass = 0, skipped = 0;
  for (const auto& r : rep0.records) {
    CHECK(r.status != CheckStatus::fail);
    if (r.name.rfind("cotton_", 0) == 0 && r.status == CheckStatus::pass) ++cotton_pass;
    if (r.status == CheckStatus::skipped) ++skipped;
  }
  CHECK(cotton_pass == 4);
  CHECK(skipped > 10);
}

TEST_CASE("desk-scale limits are enforced") {
  RunConfig cfg;
  cfg.p = 3;
  cfg.q = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.p = 1;
  cfg.q = 0;
  cfg.samples = 5000;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.samples = 10;
  cfg.suite = "bogus";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("csv ingestion validates rows and reports rejects") {
  const std::string path = "qcr_test_points.csv";
  {
    std::ofstream f(path);
    f << "# comment line\n";
    f << "1,0,0,0, 0,0,0,0\n";           // the standard point for (p,q)=(1,0)
    f << "2,0,0,0, 0,0,0,0\n";           // norm 4: invalid
    f << "1,0,0\n";                      // wrong arity
  }
  std::vector<std::string> rejects;
  const auto pts = load_points_csv(path, 1, 0, &rejects);
  CHECK(pts.size() == 1);
  CHECK(rejects.size() == 2);
  std::remove(path.c_str());
}

TEST_CASE("report text format carries runtime, json does not") {
  RunConfig cfg;
  cfg.suite = "gauge";
  cfg.p = 1;
  cfg.q = 0;
  cfg.samples = 2;
  const Report rep = run_suite(cfg);
  CHECK(rep.to_text().find("runtime_ms=") != std::string::npos);
  CHECK(rep.to_json().find("runtime_ms") == std::string::npos);
  CHECK(rep.to_json().find("\"tool_version\"") != std::string::npos);
  CHECK(rep.to_json().find("\"calibration\"") != std::string::npos);
}

TEST_CASE("cli binary: byte-identical reports and exit codes") {
  if (g_cli_path.empty()) {
    MESSAGE("cli path not supplied; skipping subprocess test");
    return;
  }
  const std::string out1 = "qcr_cli_out1.json", out2 = "qcr_cli_out2.json";
  const std::string cmd = g_cli_path +
                          " verify --suite gauge --p 1 --q 0 --seed 7 --samples 3 --out ";
  CHECK(std::system((cmd + out1 + " 2>/dev/null").c_str()) == 0);
  CHECK(std::system((cmd + out2 + " 2>/dev/null").c_str()) == 0);
  const std::string a = slurp(out1), b = slurp(out2);
  CHECK(!a.empty());
  CHECK(a == b);
  std::remove(out1.c_str());
  std::remove(out2.c_str());

  // Unknown suite exits nonzero.
  CHECK(std::system((g_cli_path + " verify --suite bogus 2>/dev/null").c_str()) != 0);
}
