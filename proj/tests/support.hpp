#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "lomo/grid.hpp"
#include "lomo/maximal.hpp"

namespace lomo::testing {

inline GridFunction random_function(const Domain& domain, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(domain.size());
  for (auto& x : v) x = dist(rng);
  return GridFunction(domain, std::move(v));
}

/// Random function with many repeated values and zeros.
inline GridFunction random_levels(const Domain& domain, std::uint64_t seed, int levels = 5) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-levels, levels);
  std::vector<double> v(domain.size());
  for (auto& x : v) x = 0.5 * dist(rng);
  return GridFunction(domain, std::move(v));
}

inline GridFunction constant(const Domain& domain, double c) {
  return GridFunction(domain, std::vector<double>(domain.size(), c));
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

/// Exhaustive M_alpha: for every cell and radius, build the ball by a full scan
/// of the grid with explicit periodic distances.
inline GridFunction brute_force_maximal(const GridFunction& f, double alpha, std::span<const double> radii) {
  const Domain& d = f.domain();
  GridFunction out(d);
  const double h = d.spacing();
  const auto n = static_cast<long>(d.points_per_axis);
  for (std::size_t x = 0; x < d.size(); ++x) {
    const auto ix = d.unravel(x);
    double best = 0.0;
    for (double r : radii) {
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t y = 0; y < d.size(); ++y) {
        const auto iy = d.unravel(y);
        long acc = 0;
        for (int k = 0; k < d.dim; ++k) {
          long diff = std::labs(static_cast<long>(ix[k]) - static_cast<long>(iy[k]));
          diff = std::min(diff, n - diff);
          acc += diff * diff;
        }
        if (static_cast<double>(acc) * h * h < r * r * (1.0 - 1e-12)) {
          sum += std::abs(f[y]);
          ++count;
        }
      }
      const double measure = static_cast<double>(count) * d.cell_volume();
      best = std::max(best, std::pow(measure, alpha / d.dim - 1.0) * sum * d.cell_volume());
    }
    out[x] = best;
  }
  return out;
}

/// O(N^2) DFT of real 1D samples.
inline std::vector<std::complex<double>> naive_dft(std::span<const double> x, int sign) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k * j % n) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace lomo::testing
