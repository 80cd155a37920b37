#pragma once

/// Structured results of a check suite and the runner configuration.
/// Reports are deterministic given (config, version): records are sorted by
/// check name and residuals are printed with three significant digits, so
/// JSON output is byte-stable across runs.  Wall-clock time is therefore
/// reported only in the text format.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcr {

inline constexpr const char* kToolVersion = "qcrlab 0.1.0";

enum class CheckStatus { pass, fail, skipped };

struct CheckRecord {
  std::string name;
  CheckStatus status{CheckStatus::skipped};
  double max_residual{0};
  int samples_used{0};
  std::string details;
};

struct RunConfig {
  std::string suite{"all"};  // model | curvature | heisenberg | gauge | all
  int p{1};
  int q{0};
  std::uint64_t seed{42};
  int samples{10};
  double fd_step{1e-4};
  std::string format{"json"};
  std::optional<std::string> out;
  std::optional<std::string> points_csv;
  std::map<std::string, double> tol_overrides;

  double tol(const std::string& check, double fallback) const {
    const auto it = tol_overrides.find(check);
    return it == tol_overrides.end() ? fallback : it->second;
  }
  void validate() const;
};

struct Report {
  std::string suite;
  RunConfig config;
  std::vector<CheckRecord> records;  // sorted by name on assembly
  double cal_s_omega{0}, cal_c_wedge{0}, cal_c_quad{0};
  long long runtime_ms{0};

  bool all_passed() const;
  void add(CheckRecord r);
  void sort_records();

  std::string to_json() const;  // excludes runtime_ms (byte-determinism)
  std::string to_text() const;
};

/// Convenience constructors.
CheckRecord make_pass_fail(const std::string& name, bool pass, double residual, int samples,
                           std::string details = "");
CheckRecord make_skip(const std::string& name, std::string reason);

}  // namespace qcr
