#pragma once

#include <functional>
#include <string>
#include <vector>

namespace acgd {

struct CriterionResult {
  std::string id;     ///< "1".."9" for acceptance criteria, "inv-*" for invariants
  std::string group;  ///< e.g. "lemmas", "rates"
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Ids or group names to run; empty runs everything. "rates" selects
  /// criteria 1-4 and 6; "criteria" selects 1-9; "invariants" the rest.
  std::vector<std::string> only;
  /// Weight function used by the weight-property check (criterion 7).
  std::function<double(std::size_t)> weight;
  std::function<void(const CriterionResult&)> on_result;
};

/// Known selectors for AcceptanceOptions::only.
std::vector<std::string> acceptance_selectors();

/// Throws UsageError for an unknown selector.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS [7] lemmas: ... (0.42 s) detail"
std::string format_result(const CriterionResult& r);

}  // namespace acgd
