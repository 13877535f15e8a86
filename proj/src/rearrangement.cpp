#include "lomo/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace lomo {

DecreasingProfile::DecreasingProfile(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size()) {
    throw std::invalid_argument("DecreasingProfile: breakpoints and values differ in length");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double t = breakpoints_[k];
    const double v = values_[k];
    if (!std::isfinite(t) || !(t > 0.0)) {
      throw std::invalid_argument("DecreasingProfile: breakpoints must be positive and finite");
    }
    if (k > 0 && !(t > breakpoints_[k - 1])) {
      throw std::invalid_argument("DecreasingProfile: breakpoints must be strictly increasing");
    }
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("DecreasingProfile: values must be finite and non-negative");
    }
    if (k > 0 && v > values_[k - 1]) {
      throw std::invalid_argument("DecreasingProfile: values must be non-increasing");
    }
  }
  build_prefix();
}

DecreasingProfile DecreasingProfile::from_sorted(std::span<const double> sorted_desc, double weight) {
  DecreasingProfile out;
  std::size_t i = 0;
  while (i < sorted_desc.size()) {
    const double v = std::abs(sorted_desc[i]);
    if (v == 0.0) break;
    std::size_t j = i + 1;
    while (j < sorted_desc.size() && std::abs(sorted_desc[j]) == v) ++j;
    // count * weight, not a running sum, so breakpoints stay exact multiples
    out.breakpoints_.push_back(static_cast<double>(j) * weight);
    out.values_.push_back(v);
    i = j;
  }
  out.build_prefix();
  return out;
}

DecreasingProfile DecreasingProfile::from_samples(std::span<const double> samples, double weight) {
  std::vector<double> mags(samples.size());
  std::transform(samples.begin(), samples.end(), mags.begin(), [](double v) { return std::abs(v); });
  std::stable_sort(mags.begin(), mags.end(), std::greater<>());
  return from_sorted(mags, weight);
}

void DecreasingProfile::build_prefix() {
  prefix_.resize(values_.size());
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    acc += values_[k] * (breakpoints_[k] - prev);
    prefix_[k] = acc;
    prev = breakpoints_[k];
  }
}

double DecreasingProfile::value_at(double t) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return 0.0;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double DecreasingProfile::integral_to(double t) const {
  if (t <= 0.0 || values_.empty()) return 0.0;
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return prefix_.back();
  const auto k = static_cast<std::size_t>(it - breakpoints_.begin());
  const double start = k == 0 ? 0.0 : breakpoints_[k - 1];
  const double before = k == 0 ? 0.0 : prefix_[k - 1];
  return before + values_[k] * (t - start);
}

double DecreasingProfile::power_integral(double p) const {
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    acc += std::pow(values_[k], p) * (breakpoints_[k] - prev);
    prev = breakpoints_[k];
  }
  return acc;
}

DecreasingProfile DecreasingProfile::truncated(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("DecreasingProfile::truncated: t must be positive");
  std::vector<double> bps;
  std::vector<double> vals;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (breakpoints_[k] >= t) {
      bps.push_back(t);
      vals.push_back(values_[k]);
      break;
    }
    bps.push_back(breakpoints_[k]);
    vals.push_back(values_[k]);
  }
  return DecreasingProfile(std::move(bps), std::move(vals));
}

DecreasingProfile DecreasingProfile::dilated(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("DecreasingProfile::dilated: factor must be positive");
  std::vector<double> bps(breakpoints_);
  for (double& b : bps) b *= factor;
  return DecreasingProfile(std::move(bps), values_);
}

double distribution_function(const GridFunction& f, double level) {
  if (level < 0.0) throw std::invalid_argument("distribution_function: level must be >= 0");
  std::size_t count = 0;
  for (double v : f.samples()) count += std::abs(v) > level ? 1 : 0;
  return static_cast<double>(count) * f.domain().cell_volume();
}

DecreasingProfile decreasing_rearrangement(const GridFunction& f) {
  return DecreasingProfile::from_samples(f.samples(), f.domain().cell_volume());
}

double double_star(const DecreasingProfile& profile, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("double_star: t must be positive");
  return profile.integral_to(t) / t;
}

LevelSplit sum_decomposition(const GridFunction& f, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("sum_decomposition: t must be positive");
  const double level = decreasing_rearrangement(f).value_at(t);
  LevelSplit split{level, GridFunction(f.domain()), GridFunction(f.domain())};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = f[i];
    const double mag = std::abs(v);
    const double sgn = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    split.small[i] = std::min(mag, level) * sgn;
    split.large[i] = v - split.small[i];
  }
  return split;
}

void to_json(nlohmann::json& j, const DecreasingProfile& p) {
  j = nlohmann::json{{"breakpoints", std::vector<double>(p.breakpoints().begin(), p.breakpoints().end())},
                     {"values", std::vector<double>(p.values().begin(), p.values().end())}};
}

void from_json(const nlohmann::json& j, DecreasingProfile& p) {
  p = DecreasingProfile(j.at("breakpoints").get<std::vector<double>>(),
                        j.at("values").get<std::vector<double>>());
}

}  // namespace lomo
