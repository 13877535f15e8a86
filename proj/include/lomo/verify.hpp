#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lomo {

/// Shared settings of the verification suites. Every check runs at `grid`
/// and again at 2 * grid for its refinement clause.
struct VerifyOptions {
  int dim = 1;
  std::size_t grid = 256;
  std::uint64_t seed = 42;
  std::size_t corpus_size = 12;
  std::size_t radii_count = 32;
  double side = 2.0;
  /// Overrides the p lattice of the maximal-operator boundedness suite.
  std::vector<double> p_values;
};

/// Shifts of 1/q away from the balanced exponent used to probe the frontier.
struct FrontierShifts {
  double plus = 0.6;
  double minus = 0.25;
};

struct CheckReport {
  std::string id;
  /// Inequality under test, as a formula.
  std::string anchor;
  nlohmann::json parameters = nlohmann::json::object();
  /// Empirical constants, drifts and tolerances.
  nlohmann::json constants = nlohmann::json::object();
  /// Per-member or per-parameter table; flat objects.
  nlohmann::json rows = nlohmann::json::array();
  bool passed = false;
  double runtime_seconds = 0.0;
};

CheckReport check_sandwich(const VerifyOptions& options);
CheckReport check_rearrangement_identities(const VerifyOptions& options);
CheckReport check_localized_strong_bound(const VerifyOptions& options);
CheckReport check_rearrangement_bounds(const VerifyOptions& options);
CheckReport check_maximal_ratio(const VerifyOptions& options);
CheckReport check_exponent_frontier(const VerifyOptions& options, const FrontierShifts& shifts = {});
CheckReport check_weight_condition(const VerifyOptions& options, const FrontierShifts& shifts = {0.15, 0.15});
CheckReport check_multiplier_domination(const VerifyOptions& options);

/// Suite names accepted by `run_suite`, in report order; "all" is not listed.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
CheckReport run_suite(const std::string& name, const VerifyOptions& options);

struct VerificationRun {
  /// Full report; wall-clock data lives only under "timing".
  nlohmann::json report;
  bool passed = false;
};

/// Runs the named suites in the given order. "all" expands to every suite.
/// An empty selection throws std::invalid_argument.
VerificationRun run_suites(const std::vector<std::string>& suites, const VerifyOptions& options);

/// Flat export "suite,row,key,value" of constants and rows, timing excluded.
std::string report_csv(const nlohmann::json& report);

/// The report with its "timing" field removed, for byte comparisons.
nlohmann::json without_timing(nlohmann::json report);

}  // namespace lomo
