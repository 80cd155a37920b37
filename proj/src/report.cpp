#include "qcrlab/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qcr {

void RunConfig::validate() const {
  static const char* suites[] = {"model", "curvature", "heisenberg", "gauge", "all"};
  if (std::find_if(std::begin(suites), std::end(suites),
                   [&](const char* s) { return suite == s; }) == std::end(suites))
    throw std::invalid_argument("unknown suite: " + suite);
  if (p < 0 || q < 0) throw std::invalid_argument("p and q must be nonnegative");
  if (p + q > 3) throw std::invalid_argument("p + q must be at most 3 (desk scale)");
  if (samples < 1 || samples > 1000) throw std::invalid_argument("samples must be in [1, 1000]");
  if (fd_step <= 0 || fd_step > 0.1) throw std::invalid_argument("fd-step must be in (0, 0.1]");
  if (format != "json" && format != "text") throw std::invalid_argument("format must be json or text");
}

bool Report::all_passed() const {
  for (const auto& r : records)
    if (r.status == CheckStatus::fail) return false;
  return true;
}

void Report::add(CheckRecord r) { records.push_back(std::move(r)); }

void Report::sort_records() {
  std::sort(records.begin(), records.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skipped";
  }
}

// Three significant digits absorb platform rounding in the last bits.
std::string fmt_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", r);
  return buf;
}

}  // namespace

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["suite"] = suite;
  nlohmann::ordered_json params;
  params["p"] = config.p;
  params["q"] = config.q;
  params["seed"] = config.seed;
  params["samples"] = config.samples;
  params["fd_step"] = fmt_residual(config.fd_step);
  if (!config.tol_overrides.empty()) {
    nlohmann::ordered_json tols;  // std::map iteration keeps this sorted
    for (const auto& [k, v] : config.tol_overrides) tols[k] = fmt_residual(v);
    params["tol_overrides"] = tols;
  }
  j["parameters"] = params;
  nlohmann::ordered_json cal;
  cal["s_omega"] = cal_s_omega;
  cal["c_wedge"] = cal_c_wedge;
  cal["c_quad"] = cal_c_quad;
  j["calibration"] = cal;
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json rec;
    rec["name"] = r.name;
    rec["status"] = status_name(r.status);
    rec["max_residual"] = fmt_residual(r.max_residual);
    rec["samples_used"] = r.samples_used;
    rec["details"] = r.details;
    recs.push_back(rec);
  }
  j["checks"] = recs;
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << kToolVersion << "  suite=" << suite << "  p=" << config.p << " q=" << config.q
     << " seed=" << config.seed << " samples=" << config.samples << "\n";
  os << "calibration: s_omega=" << cal_s_omega << " c_wedge=" << cal_c_wedge
     << " c_quad=" << cal_c_quad << "\n";
  for (const auto& r : records) {
    os << "  [" << status_name(r.status) << "] " << r.name
       << "  max_residual=" << fmt_residual(r.max_residual) << "  samples=" << r.samples_used;
    if (!r.details.empty()) os << "  (" << r.details << ")";
    os << "\n";
  }
  os << "runtime_ms=" << runtime_ms << "\n";
  return os.str();
}

CheckRecord make_pass_fail(const std::string& name, bool pass, double residual, int samples,
                           std::string details) {
  return CheckRecord{name, pass ? CheckStatus::pass : CheckStatus::fail, residual, samples,
                     std::move(details)};
}

CheckRecord make_skip(const std::string& name, std::string reason) {
  return CheckRecord{name, CheckStatus::skipped, 0.0, 0, std::move(reason)};
}

}  // namespace qcr
