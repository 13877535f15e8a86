#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lomo/grid.hpp"

namespace lomo {

/// Non-increasing profile phi on (0, inf) given in closed form, used to build
/// radial functions f(x) = phi(omega_n |x|^n).
struct RadialProfile {
  std::string name;
  /// Measure beyond which phi vanishes.
  double support = 1.0;
  std::function<double(double)> phi;

  double operator()(double t) const { return t < support ? phi(t) : 0.0; }
};

enum class CorpusKind { ball_indicator, ball_union, radial_profile, fourier_mode, band_limited, spike_plateau };

const char* to_string(CorpusKind kind);

/// Continuum test function, sampled on demand so the same member can be
/// compared across resolutions.
struct CorpusEntry {
  std::string label;
  CorpusKind kind = CorpusKind::ball_indicator;
  /// C-infinity with compact support (bump-windowed members).
  bool smooth = false;
  std::function<double(const Point&)> evaluate;
  std::optional<RadialProfile> profile;

  GridFunction sample(const Domain& domain) const;
};

/// Deterministic corpus of `count` members cycling through every kind. All
/// members are supported inside the central half-box [-L/4, L/4)^n.
std::vector<CorpusEntry> generate_corpus(int dim, double side, std::uint64_t seed, std::size_t count);

/// Fixed battery of at least ten non-increasing profiles (steps, power
/// decays, exponentials, ramps, plateaus) whose radial functions fit in the
/// central half-box.
std::vector<RadialProfile> radial_battery(int dim, double side);

/// Radial function phi(omega_n |x|^n) centered at the origin.
CorpusEntry radial_entry(const RadialProfile& profile, int dim);

/// Smooth members only: bump-windowed modes and smooth radial bumps.
std::vector<CorpusEntry> generate_smooth_corpus(int dim, double side, std::uint64_t seed, std::size_t count);

}  // namespace lomo
