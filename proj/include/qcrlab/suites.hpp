#pragma once

/// Check-suite runners behind the CLI: each suite returns one record per
/// registered check, with parameter combinations that a suite cannot run
/// reported as skipped, never as failures.

#include <string>
#include <vector>

#include "qcrlab/model_quadric.hpp"
#include "qcrlab/report.hpp"

namespace qcr {

Report run_suite(const RunConfig& cfg);

std::vector<CheckRecord> run_model_suite(const RunConfig& cfg, const CalibrationConstants& cal);
std::vector<CheckRecord> run_curvature_suite(const RunConfig& cfg,
                                             const CalibrationConstants& cal);
std::vector<CheckRecord> run_heisenberg_suite(const RunConfig& cfg,
                                              const CalibrationConstants& cal);
std::vector<CheckRecord> run_gauge_suite(const RunConfig& cfg);

/// Rows of 4(n+1) reals in (w,x,y,z) blocks; invalid rows collected into
/// `rejects` with line numbers and reasons.
std::vector<QuadricPoint> load_points_csv(const std::string& path, int p, int q,
                                          std::vector<std::string>* rejects);

/// Rows of 3 + 4n reals (center coordinates then the H^n part in (w,x,y,z)
/// blocks) for user-driven embedding checks.
struct HeisCsvRow {
  Quaternion a;
  std::vector<Quaternion> y;
};
std::vector<HeisCsvRow> load_heis_csv(const std::string& path, int p, int q,
                                      std::vector<std::string>* rejects);

}  // namespace qcr
