// qcrlab: deterministic runner for the geometry check suites.
//
//   qcrlab verify --suite <model|curvature|heisenberg|gauge|all>
//                 --p <int> --q <int> --seed <int>
//                 [--samples N] [--tol name=val]... [--fd-step h]
//                 [--format json|text] [--out path] [--points file.csv]
//                 [--config file]
//
// Exit code 0 iff no check failed (skips allowed).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qcrlab/curvature.hpp"
#include "qcrlab/report.hpp"
#include "qcrlab/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qcrlab: quaternionic CR geometry check suites"};
  app.set_config("--config", "", "flat key=value config file; flags override file values");

  auto* verify = app.add_subcommand("verify", "run a check suite");
  qcr::RunConfig cfg;
  std::string out_path, points_path;
  std::vector<std::string> tol_specs;
  std::uint64_t seed = 42;

  verify->add_option("--suite", cfg.suite, "model|curvature|heisenberg|gauge|all")
      ->default_val("all");
  verify->add_option("--p", cfg.p, "positive quaternionic directions")->default_val(1);
  verify->add_option("--q", cfg.q, "negative quaternionic directions")->default_val(0);
  verify->add_option("--seed", seed, "64-bit random seed")->default_val(42);
  verify->add_option("--samples", cfg.samples, "sample points per check (<= 1000)")
      ->default_val(10);
  verify->add_option("--fd-step", cfg.fd_step, "finite-difference bracket step")
      ->default_val(1e-4);
  verify->add_option("--tol", tol_specs, "per-check tolerance override, name=value")
      ->take_all();
  verify->add_option("--format", cfg.format, "json|text")->default_val("json");
  verify->add_option("--out", out_path, "write the report to this path");
  verify->add_option("--points", points_path, "CSV of user-supplied sample points");
  std::string snapshot_path;
  verify->add_option("--snapshot-rhp", snapshot_path,
                     "write the R_HP generator for (p,q) as flat JSON (golden snapshots)");

  CLI11_PARSE(app, argc, argv);
  if (!verify->parsed()) {
    std::cerr << app.help() << std::endl;
    return 2;
  }

  cfg.seed = seed;
  if (!out_path.empty()) cfg.out = out_path;
  if (!points_path.empty()) cfg.points_csv = points_path;
  for (const auto& spec : tol_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      std::cerr << "bad --tol spec (want name=value): " << spec << std::endl;
      return 2;
    }
    try {
      cfg.tol_overrides[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
    } catch (...) {
      std::cerr << "bad --tol value: " << spec << std::endl;
      return 2;
    }
  }

  try {
    if (!snapshot_path.empty()) {
      if (cfg.p + cfg.q < 1) {
        std::cerr << "snapshot needs p + q >= 1" << std::endl;
        return 2;
      }
      auto [g, triple] = qcr::standard_triple(cfg.p, cfg.q);
      std::ofstream f(snapshot_path, std::ios::binary);
      f << qcr::r_hp(g, triple).to_json() << "\n";
    }
    const qcr::Report rep = qcr::run_suite(cfg);
    const std::string text = cfg.format == "json" ? rep.to_json() : rep.to_text();
    if (cfg.out) {
      std::ofstream f(*cfg.out, std::ios::binary);
      if (!f) {
        std::cerr << "cannot write " << *cfg.out << std::endl;
        return 2;
      }
      f << text;
    } else {
      std::cout << text;
    }
    if (cfg.format == "json")
      std::cerr << "runtime_ms=" << rep.runtime_ms << std::endl;
    return rep.all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}
