#include "lomo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lomo {

double Domain::cell_volume() const { return std::pow(spacing(), dim); }

double Domain::total_measure() const { return std::pow(side, dim); }

std::size_t Domain::size() const {
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= points_per_axis;
  return total;
}

std::array<std::size_t, 3> Domain::unravel(std::size_t flat) const {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int d = dim - 1; d >= 0; --d) {
    idx[d] = flat % points_per_axis;
    flat /= points_per_axis;
  }
  return idx;
}

std::size_t Domain::ravel(const std::array<std::size_t, 3>& idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < dim; ++d) flat = flat * points_per_axis + idx[d];
  return flat;
}

Point Domain::cell_center(std::size_t flat) const {
  const auto idx = unravel(flat);
  Point x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) x[d] = coordinate(idx[d]);
  return x;
}

std::size_t Domain::shifted(std::size_t flat, const CellOffset& offset) const {
  auto idx = unravel(flat);
  const auto n = static_cast<long>(points_per_axis);
  for (int d = 0; d < dim; ++d) {
    long v = (static_cast<long>(idx[d]) + offset[d]) % n;
    if (v < 0) v += n;
    idx[d] = static_cast<std::size_t>(v);
  }
  return ravel(idx);
}

std::size_t Domain::nearest_cell(const Point& x) const {
  std::array<std::size_t, 3> idx{0, 0, 0};
  const auto n = static_cast<long>(points_per_axis);
  for (int d = 0; d < dim; ++d) {
    long i = std::lround(std::floor((x[d] + 0.5 * side) / spacing()));
    i %= n;
    if (i < 0) i += n;
    idx[d] = static_cast<std::size_t>(i);
  }
  return ravel(idx);
}

Domain make_domain(int dim, double side, std::size_t points_per_axis) {
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument("make_domain: dim must be 1, 2 or 3, got " + std::to_string(dim));
  }
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw std::invalid_argument("make_domain: side must be positive and finite");
  }
  const bool pow2 = points_per_axis != 0 && (points_per_axis & (points_per_axis - 1)) == 0;
  if (!pow2 || points_per_axis < 8) {
    throw std::invalid_argument("make_domain: points_per_axis must be a power of two >= 8, got " +
                                std::to_string(points_per_axis));
  }
  return Domain{dim, side, points_per_axis};
}

double unit_ball_volume(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: throw std::invalid_argument("unit_ball_volume: dim must be 1, 2 or 3");
  }
}

double periodic_distance2(const Domain& domain, const Point& a, const Point& b) {
  double d2 = 0.0;
  for (int d = 0; d < domain.dim; ++d) {
    double delta = a[d] - b[d];
    delta -= domain.side * std::round(delta / domain.side);
    d2 += delta * delta;
  }
  return d2;
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(const Domain& domain)
    : domain_(domain), samples_(domain.size(), 0.0) {}

GridFunction::GridFunction(const Domain& domain, std::vector<double> samples)
    : domain_(domain), samples_(std::move(samples)) {
  if (samples_.size() != domain_.size()) {
    throw std::invalid_argument("GridFunction: expected " + std::to_string(domain_.size()) +
                                " samples, got " + std::to_string(samples_.size()));
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite sample");
  }
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::power_integral(double p) const {
  double acc = 0.0;
  if (p == 1.0) {
    for (double v : samples_) acc += std::abs(v);
  } else {
    for (double v : samples_) acc += std::pow(std::abs(v), p);
  }
  return acc * domain_.cell_volume();
}

bool GridFunction::is_zero() const {
  return std::all_of(samples_.begin(), samples_.end(), [](double v) { return v == 0.0; });
}

// ---------------------------------------------------------------------------

Ball ball(const Domain& domain, const Point& center, double radius) {
  if (!(radius > 0.0) || radius > 0.5 * domain.side) {
    throw std::invalid_argument("ball: radius must lie in (0, L/2], got " + std::to_string(radius));
  }
  Ball b;
  b.center = center;
  b.radius = radius;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (inside_open_ball(periodic_distance2(domain, domain.cell_center(i), center), radius)) {
      b.cell_indices.push_back(i);
    }
  }
  b.measure = static_cast<double>(b.cell_indices.size()) * domain.cell_volume();
  return b;
}

double ball_average(const GridFunction& f, const Ball& b) {
  if (b.cell_indices.empty()) throw std::invalid_argument("ball_average: empty ball");
  double acc = 0.0;
  for (std::size_t i : b.cell_indices) acc += std::abs(f[i]);
  return acc * f.domain().cell_volume() / b.measure;
}

GridFunction restrict_to(const GridFunction& f, const Ball& b) {
  GridFunction out(f.domain());
  for (std::size_t i : b.cell_indices) out[i] = f[i];
  return out;
}

GridFunction translate(const GridFunction& f, const CellOffset& shift) {
  GridFunction out(f.domain());
  for (std::size_t i = 0; i < f.size(); ++i) out[f.domain().shifted(i, shift)] = f[i];
  return out;
}

// ---------------------------------------------------------------------------

BallStencil::BallStencil(const Domain& domain, double max_radius) : max_radius_(max_radius) {
  if (!(max_radius > 0.0) || max_radius > 0.5 * domain.side) {
    throw std::invalid_argument("BallStencil: radius must lie in (0, L/2]");
  }
  const double h = domain.spacing();
  const int reach = static_cast<int>(std::ceil(max_radius / h));
  struct Entry {
    double dist2;
    CellOffset offset;
  };
  std::vector<Entry> entries;
  const int lo[3] = {-reach, domain.dim > 1 ? -reach : 0, domain.dim > 2 ? -reach : 0};
  const int hi[3] = {reach, domain.dim > 1 ? reach : 0, domain.dim > 2 ? reach : 0};
  for (int a = lo[0]; a <= hi[0]; ++a) {
    for (int b = lo[1]; b <= hi[1]; ++b) {
      for (int c = lo[2]; c <= hi[2]; ++c) {
        const double d2 = h * h * static_cast<double>(a * a + b * b + c * c);
        if (inside_open_ball(d2, max_radius)) entries.push_back({d2, {a, b, c}});
      }
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.dist2 < y.dist2; });
  offsets_.reserve(entries.size());
  dist2_.reserve(entries.size());
  for (const auto& e : entries) {
    offsets_.push_back(e.offset);
    dist2_.push_back(e.dist2);
  }
}

std::size_t BallStencil::count_within(double radius) const {
  const auto it = std::partition_point(dist2_.begin(), dist2_.end(),
                                       [radius](double d2) { return inside_open_ball(d2, radius); });
  return static_cast<std::size_t>(it - dist2_.begin());
}

}  // namespace lomo
