#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "bjgeo/types.hpp"

namespace bjgeo {

/// Shared configuration for the randomized verification suites.
struct RunConfig {
  std::uint64_t seed = 1;
  Tolerances tol{};
  int starts = 64;    ///< multi-start count for iterative norm computations
  bool strict = false;  ///< promote inconclusive checks to failures
};

/// One aggregated check: counts over sampled instances plus a verdict.
struct CheckOutcome {
  std::string check;
  std::string anchor;      ///< slug of the claim the check exercises
  std::string verdict;     ///< "pass" | "fail" | "inconclusive"
  long long total = 0;     ///< instances generated
  long long agreed = 0;    ///< instances compared and agreeing
  long long skipped = 0;   ///< marginal instances excluded from comparison
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  double runtime_ms = 0.0;

  bool passed(bool strict = false) const {
    if (verdict == "fail") return false;
    if (strict && verdict == "inconclusive") return false;
    return true;
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckOutcome> checks;

  bool passed(bool strict = false) const {
    for (const auto& c : checks) {
      if (!c.passed(strict)) return false;
    }
    return true;
  }
};

/// Suite names accepted by run_suite, excluding the "all" alias.
std::vector<std::string> suite_names();

/// Runs one named suite. Throws std::invalid_argument for unknown names.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

/// Runs one suite or, for "all", every suite in a fixed order.
std::vector<SuiteReport> run_suites(const std::string& name_or_all, const RunConfig& cfg);

/// Serializes a check in the report schema
/// {check, paper_anchor, verdict, witnesses, residuals, tolerances, runtime_ms}.
/// Volatile fields (runtime) are omitted when include_volatile is false so
/// identical runs produce byte-identical reports.
nlohmann::ordered_json check_to_json(const CheckOutcome& c, const Tolerances& tol,
                                     bool include_volatile);

}  // namespace bjgeo
