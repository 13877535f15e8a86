#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lomo/verify.hpp"

namespace lomo {

/// Usage-level failure: bad flag value, unknown key, violated hypothesis.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything one `lomo` invocation needs. Fields that a subcommand does not
/// read keep their defaults.
struct RunConfig {
  std::string subcommand;

  int dim = 1;
  std::size_t grid = 256;
  double side = 2.0;
  std::uint64_t seed = 42;
  std::size_t corpus_size = 12;
  std::size_t radii_count = 32;

  /// Input GridFunction file; empty means corpus member `member`.
  std::string input;
  std::size_t member = 0;
  /// Result file; empty means stdout.
  std::string output;

  double alpha = 0.0;

  /// lorentz, lorentz-double-star, morrey or lorentz-morrey.
  std::string space = "lorentz";
  double p = 2.0;
  double q = 2.0;
  double lambda = 0.0;

  double delta = 1.0;
  double radius = 0.1;
  bool maximal = false;

  /// t1 or t2.
  std::string mode = "t1";
  double gamma = 0.0;
  double beta = 0.5;
  /// "one" (V = 1), "smooth" (V = 1 + cos^2(2 pi x_1 / L)) or a GridFunction file.
  std::string potential = "smooth";

  std::vector<std::string> suites;
  /// Overrides the p lattice of the thm31 suite.
  std::vector<double> p_values;
  std::string report;
  /// json or csv.
  std::string format = "json";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

const std::vector<std::string>& subcommand_names();

/// Throws ConfigError naming the violated constraint.
void validate(const RunConfig& config);

VerifyOptions verify_options(const RunConfig& config);

/// Serialization keeps every field; parsing rejects unknown keys and
/// mistyped values with ConfigError.
void to_json(nlohmann::json& j, const RunConfig& config);
void from_json(const nlohmann::json& j, RunConfig& config);

RunConfig load_config(const std::string& path);
void save_config(const std::string& path, const RunConfig& config);

}  // namespace lomo
