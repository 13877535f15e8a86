#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lomo {

/// Point in the periodic box. Components past `Domain::dim` are ignored.
using Point = std::array<double, 3>;

/// Integer displacement in cells along each axis.
using CellOffset = std::array<int, 3>;

/// Uniform periodic box [-L/2, L/2)^n sampled at cell centers.
struct Domain {
  int dim = 1;
  double side = 1.0;
  std::size_t points_per_axis = 8;

  double spacing() const { return side / static_cast<double>(points_per_axis); }
  double cell_volume() const;
  double total_measure() const;
  std::size_t size() const;

  /// Coordinate of the i-th cell center along one axis.
  double coordinate(std::size_t i) const {
    return -0.5 * side + (static_cast<double>(i) + 0.5) * spacing();
  }

  std::array<std::size_t, 3> unravel(std::size_t flat) const;
  std::size_t ravel(const std::array<std::size_t, 3>& idx) const;
  Point cell_center(std::size_t flat) const;

  /// Flat index of `flat` shifted by `offset` cells with periodic wrap.
  std::size_t shifted(std::size_t flat, const CellOffset& offset) const;

  /// Same as `shifted` for an already unravelled index; |offset| < N per axis.
  std::size_t shifted(const std::array<std::size_t, 3>& idx, const CellOffset& offset) const {
    const auto n = static_cast<long>(points_per_axis);
    std::size_t flat = 0;
    for (int d = 0; d < dim; ++d) {
      long v = static_cast<long>(idx[d]) + offset[d];
      if (v < 0) v += n;
      if (v >= n) v -= n;
      flat = flat * points_per_axis + static_cast<std::size_t>(v);
    }
    return flat;
  }

  /// Cell whose center is nearest to `x` (periodic).
  std::size_t nearest_cell(const Point& x) const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

/// Builds a validated domain: dim in {1,2,3}, side > 0, N a power of two >= 8.
Domain make_domain(int dim, double side, std::size_t points_per_axis);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int dim);

/// Open-ball membership on the lattice. Distances within a relative 1e-12 of
/// the radius count as ties and are excluded, so every code path agrees on
/// cells that sit exactly on the sphere.
inline bool inside_open_ball(double dist2, double radius) {
  return dist2 < radius * radius * (1.0 - 1e-12);
}

/// Squared periodic distance between two points of the domain.
double periodic_distance2(const Domain& domain, const Point& a, const Point& b);

/// Sampled real function on a Domain, row-major with the last axis fastest.
class GridFunction {
 public:
  explicit GridFunction(const Domain& domain);
  GridFunction(const Domain& domain, std::vector<double> samples);

  const Domain& domain() const { return domain_; }
  std::span<const double> samples() const { return samples_; }
  std::span<double> samples() { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  double& operator[](std::size_t i) { return samples_[i]; }

  double max_abs() const;
  /// Sum of |f|^p * cell_volume.
  double power_integral(double p) const;
  double l1_norm() const { return power_integral(1.0); }
  bool is_zero() const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  Domain domain_;
  std::vector<double> samples_;
};

/// Builds f(x) sampled at every cell center.
template <class Fn>
GridFunction sample(const Domain& domain, Fn&& fn) {
  std::vector<double> values(domain.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(domain.cell_center(i));
  return GridFunction(domain, std::move(values));
}

/// B(x, r) on the lattice: the cells whose centers are at periodic distance < r.
struct Ball {
  Point center{};
  double radius = 0.0;
  std::vector<std::size_t> cell_indices;
  double measure = 0.0;
};

/// Ball of radius r in (0, L/2] around an arbitrary point.
Ball ball(const Domain& domain, const Point& center, double radius);

/// Mean of |f| over the ball.
double ball_average(const GridFunction& f, const Ball& b);

/// f * chi_B.
GridFunction restrict_to(const GridFunction& f, const Ball& b);

/// Periodic translation by whole cells: result(x) = f(x - shift).
GridFunction translate(const GridFunction& f, const CellOffset& shift);

/// Cell offsets within a maximal radius, ordered by distance from the origin
/// cell. The cells of a ball of radius r centered on a cell are the prefix of
/// length `count_within(r)`, so nested balls share storage.
class BallStencil {
 public:
  BallStencil(const Domain& domain, double max_radius);

  std::span<const CellOffset> offsets() const { return offsets_; }
  /// Distances (physical units) matching `offsets()`.
  std::span<const double> distances2() const { return dist2_; }
  std::size_t count_within(double radius) const;
  double max_radius() const { return max_radius_; }

 private:
  double max_radius_;
  std::vector<CellOffset> offsets_;
  std::vector<double> dist2_;
};

}  // namespace lomo
