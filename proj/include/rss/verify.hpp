// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_VERIFY_HPP
#define RSS_VERIFY_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "rss/settings.hpp"

namespace rss {

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int instances = 0;
  double tolerance = 0.0;
  double max_violation = 0.0;
  std::string units;  // "bits", "trace-distance", or "normalized"
  bool pass = false;
};

// Available property suites, in canonical order.
const std::vector<std::string>& suite_names();

// Runs one suite on its seeded instance family. instances <= 0 selects the
// suite default. Failures are reported, never thrown.
SuiteReport run_suite(const std::string& name, const SolverSettings& settings,
                      int instances = 0);

std::vector<SuiteReport> run_all(const SolverSettings& settings);

// property name -> suite covering it
nlohmann::ordered_json coverage_manifest();

nlohmann::ordered_json report_to_json(const SuiteReport& report);
nlohmann::ordered_json reports_to_json(const std::vector<SuiteReport>& reports,
                                       const SolverSettings& settings);

}  // namespace rss

#endif
