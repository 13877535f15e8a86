#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "lomo/grid.hpp"

namespace lomo {

/// Non-negative, non-increasing step function on (0, inf) with compact support.
///
/// Step k takes value `values[k]` on [t_{k-1}, t_k) with t_{-1} = 0, and the
/// function vanishes past the last breakpoint. The half-open convention makes
/// `value_at` right-continuous, matching inf{s > 0 : d_f(s) <= t}. Integrals
/// do not depend on the convention.
class DecreasingProfile {
 public:
  DecreasingProfile() = default;
  DecreasingProfile(std::vector<double> breakpoints, std::vector<double> values);

  /// Rearrangement of |samples| where each sample carries `weight` of measure.
  /// Runs of equal values collapse into one step and zero values are dropped.
  static DecreasingProfile from_samples(std::span<const double> samples, double weight);

  /// Same as `from_samples` for input already sorted by |v| descending.
  static DecreasingProfile from_sorted(std::span<const double> sorted_desc, double weight);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  std::size_t steps() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double value_at(double t) const;
  /// Integral of the profile over (0, t].
  double integral_to(double t) const;
  /// Integral over (0, t_k] for breakpoint k.
  double prefix_integral(std::size_t k) const { return prefix_[k]; }
  double total_mass() const { return prefix_.empty() ? 0.0 : prefix_.back(); }
  double support_measure() const { return breakpoints_.empty() ? 0.0 : breakpoints_.back(); }
  /// Integral of profile^p over (0, inf).
  double power_integral(double p) const;

  /// profile * chi_(0, t); breakpoints past t are dropped and t closes the last step.
  DecreasingProfile truncated(double t) const;
  /// s -> profile(s / factor), i.e. breakpoints scaled by `factor`.
  DecreasingProfile dilated(double factor) const;

  friend bool operator==(const DecreasingProfile&, const DecreasingProfile&) = default;

 private:
  void build_prefix();

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<double> prefix_;
};

/// d_f(level) = |{x : |f(x)| > level}|.
double distribution_function(const GridFunction& f, double level);

/// f* as an exact step profile, one cell of measure per sample.
DecreasingProfile decreasing_rearrangement(const GridFunction& f);

/// f**(t) = (1/t) * integral of the profile over (0, t].
double double_star(const DecreasingProfile& profile, double t);

/// Split of f at the level f*(t): f = large + small with
/// large = max(|f| - f*(t), 0) sgn f and small = min(|f|, f*(t)) sgn f.
struct LevelSplit {
  double level = 0.0;
  GridFunction large;
  GridFunction small;
};

LevelSplit sum_decomposition(const GridFunction& f, double t);

void to_json(nlohmann::json& j, const DecreasingProfile& p);
void from_json(const nlohmann::json& j, DecreasingProfile& p);

}  // namespace lomo
