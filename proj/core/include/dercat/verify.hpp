#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dercat {

struct ReportEntry {
  std::string name;
  bool pass = false;
  std::string details;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  int count = 0;
  double elapsed_seconds = 0.0;
  std::vector<ReportEntry> entries;

  bool pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
  int failures() const {
    int n = 0;
    for (const auto& e : entries)
      if (!e.pass) ++n;
    return n;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int count = 0;  // 0: suite default
  int bound = 0;  // 0: operation default
};

/// Named verification suites. Each runs a family of theorem checks and
/// returns one pass/fail entry per check; unknown names throw.
Report run_verify_suite(const std::string& name, const VerifyOptions& opts);

/// The suite names, in report order.
std::vector<std::string> verify_suite_names();

std::string render_report_text(const Report& r);

}  // namespace dercat
