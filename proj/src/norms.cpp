#include "lomo/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "lomo/parallel.hpp"

namespace lomo {

void SpaceParams::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("Lorentz exponent requires 1 <= p < inf, got p = " + std::to_string(p));
  }
  if (!(q > 0.0)) throw std::invalid_argument("Lorentz fine index requires 0 < q <= inf");
  if (!(u > 0.0) || !(s > 0.0)) throw std::invalid_argument("secondary indices u, s must be positive");
}

// ---------------------------------------------------------------------------

SweepSpec SweepSpec::full(const Domain& domain, std::size_t radii_count) {
  SweepSpec sweep{{}, RadiusGrid::for_domain(domain, radii_count)};
  sweep.centers.resize(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) sweep.centers[i] = i;
  return sweep;
}

std::size_t SweepSpec::default_stride(const Domain& domain) {
  std::size_t stride = 1;
  auto lattice = [&](std::size_t s) {
    std::size_t per_axis = (domain.points_per_axis + s - 1) / s;
    std::size_t total = 1;
    for (int d = 0; d < domain.dim; ++d) total *= per_axis;
    return total;
  };
  while (lattice(stride) > 4096) stride *= 2;
  return stride;
}

SweepSpec SweepSpec::strided(const GridFunction& f, std::size_t stride, std::size_t radii_count) {
  const Domain& domain = f.domain();
  if (stride == 0) stride = default_stride(domain);
  SweepSpec sweep{{}, RadiusGrid::for_domain(domain, radii_count)};
  Point centroid{0.0, 0.0, 0.0};
  std::size_t support = 0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const auto idx = domain.unravel(i);
    bool on_lattice = true;
    for (int d = 0; d < domain.dim; ++d) on_lattice = on_lattice && idx[d] % stride == 0;
    if (on_lattice) sweep.centers.push_back(i);
    if (f[i] != 0.0) {
      const Point x = domain.cell_center(i);
      for (int d = 0; d < domain.dim; ++d) centroid[d] += x[d];
      ++support;
    }
  }
  if (support > 0) {
    for (int d = 0; d < domain.dim; ++d) centroid[d] /= static_cast<double>(support);
    const std::size_t c = domain.nearest_cell(centroid);
    if (!std::binary_search(sweep.centers.begin(), sweep.centers.end(), c)) {
      sweep.centers.insert(std::lower_bound(sweep.centers.begin(), sweep.centers.end(), c), c);
    }
  }
  return sweep;
}

// ---------------------------------------------------------------------------

double lorentz_norm(const DecreasingProfile& profile, double p, double q) {
  SpaceParams{p, q}.validate();
  const auto t = profile.breakpoints();
  const auto v = profile.values();
  if (q == kInfinity) {
    double best = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) best = std::max(best, v[k] * std::pow(t[k], 1.0 / p));
    return best;
  }
  const double r = q / p;
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double next = std::pow(t[k], r);
    acc += std::pow(v[k], q) * (next - prev);
    prev = next;
  }
  return std::pow(acc / r, 1.0 / q);
}

double lorentz_norm(const GridFunction& f, double p, double q) {
  return lorentz_norm(decreasing_rearrangement(f), p, q);
}

double lorentz_norm_double_star(const DecreasingProfile& profile, double p, double q) {
  SpaceParams{p, q}.validate();
  const auto t = profile.breakpoints();
  const auto v = profile.values();
  if (v.empty()) return 0.0;
  const double total = profile.total_mass();
  const double tail_end = t.back();

  if (q == kInfinity) {
    double best = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      best = std::max(best, std::pow(t[k], 1.0 / p) * profile.prefix_integral(k) / t[k]);
    }
    return best;
  }

  // (0, t_0]: f** = v_0
  double acc = std::pow(v[0], q) * (p / q) * std::pow(t[0], q / p);
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double start = t[k - 1];
    const double base = profile.prefix_integral(k - 1);
    const double level = v[k];
    // integrand in u = log t, so dt/t becomes du
    auto integrand = [&](double log_t) {
      const double tt = std::exp(log_t);
      const double dstar = (base + level * (tt - start)) / tt;
      return std::pow(std::pow(tt, 1.0 / p) * dstar, q);
    };
    const double lo = std::log(start);
    const double hi = std::log(t[k]);
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / std::log(2.0))));
    const double width = (hi - lo) / panels;
    for (int i = 0; i < panels; ++i) {
      acc += Gauss::integrate(integrand, lo + i * width, lo + (i + 1) * width);
    }
  }
  if (p == 1.0) return kInfinity;
  // past supp f*: f** = total / t
  acc += std::pow(total, q) * std::pow(tail_end, q * (1.0 / p - 1.0)) / (q * (1.0 - 1.0 / p));
  return std::pow(acc, 1.0 / q);
}

// ---------------------------------------------------------------------------

namespace {

// Lorentz functional of a ball from its sorted non-zero magnitudes, with the
// breakpoint powers c^{q/p} read from a table indexed by cell count.
struct LorentzKernel {
  SpaceParams params;
  double count_scale = 1.0;  // cv^{q/p} (p/q) for finite q, cv^{1/p} for q = inf
  std::vector<double> count_pow;

  LorentzKernel(const SpaceParams& sp, double cv, std::size_t max_count) : params(sp) {
    const bool weak = sp.q == kInfinity;
    const double r = weak ? 1.0 / sp.p : sp.q / sp.p;
    count_pow.resize(max_count + 1);
    for (std::size_t c = 0; c <= max_count; ++c) count_pow[c] = std::pow(static_cast<double>(c), r);
    count_scale = weak ? std::pow(cv, r) : std::pow(cv, r) / r;
  }

  double evaluate(std::span<const double> sorted_desc) const {
    const double q = params.q;
    if (q == kInfinity) {
      double best = 0.0;
      std::size_t i = 0;
      while (i < sorted_desc.size()) {
        std::size_t j = i + 1;
        while (j < sorted_desc.size() && sorted_desc[j] == sorted_desc[i]) ++j;
        best = std::max(best, sorted_desc[i] * count_pow[j]);
        i = j;
      }
      return best * count_scale;
    }
    double acc = 0.0;
    std::size_t i = 0;
    while (i < sorted_desc.size()) {
      std::size_t j = i + 1;
      while (j < sorted_desc.size() && sorted_desc[j] == sorted_desc[i]) ++j;
      const double vq = q == 1.0 ? sorted_desc[i] : (q == 2.0 ? sorted_desc[i] * sorted_desc[i]
                                                               : std::pow(sorted_desc[i], q));
      acc += vq * (count_pow[j] - count_pow[i]);
      i = j;
    }
    return std::pow(acc * count_scale, 1.0 / q);
  }
};

struct BallBest {
  double value = 0.0;
  double radius = 0.0;
};

// Visits every (center, radius) ball of the sweep. For each center the
// callback sees the sorted non-zero magnitudes of every nested ball.
void sweep_sorted(const GridFunction& f, const SweepSpec& sweep,
                  const std::function<void(std::size_t center_slot, std::size_t radius_slot,
                                           std::span<const double> sorted_desc)>& visit) {
  const Domain& domain = f.domain();
  const BallStencil stencil(domain, sweep.radii.back());
  const auto offsets = stencil.offsets();
  std::vector<std::size_t> counts;
  for (double r : sweep.radii.radii()) counts.push_back(stencil.count_within(r));

  parallel_for(sweep.centers.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> sorted;
    std::vector<double> chunk;
    for (std::size_t slot = begin; slot < end; ++slot) {
      const auto idx = domain.unravel(sweep.centers[slot]);
      sorted.clear();
      std::size_t taken = 0;
      for (std::size_t j = 0; j < counts.size(); ++j) {
        chunk.clear();
        for (; taken < counts[j]; ++taken) {
          const double m = std::abs(f[domain.shifted(idx, offsets[taken])]);
          if (m != 0.0) chunk.push_back(m);
        }
        if (!chunk.empty()) {
          std::sort(chunk.begin(), chunk.end(), std::greater<>());
          const auto mid = static_cast<std::ptrdiff_t>(sorted.size());
          sorted.insert(sorted.end(), chunk.begin(), chunk.end());
          std::inplace_merge(sorted.begin(), sorted.begin() + mid, sorted.end(), std::greater<>());
        }
        visit(slot, j, sorted);
      }
    }
  });
}

NormResult reduce(const std::vector<BallBest>& per_center, const SweepSpec& sweep) {
  NormResult out;
  out.balls_evaluated = sweep.centers.size() * sweep.radii.size();
  bool first = true;
  for (std::size_t slot = 0; slot < per_center.size(); ++slot) {
    if (first || per_center[slot].value > out.value) {
      out.value = per_center[slot].value;
      out.argmax_center = sweep.centers[slot];
      out.argmax_radius = per_center[slot].radius;
      first = false;
    }
  }
  return out;
}

void check_sweep(const GridFunction& f, const SweepSpec& sweep) {
  if (sweep.centers.empty()) throw std::invalid_argument("SweepSpec: no centers");
  if (sweep.radii.back() > 0.5 * f.domain().side) throw std::invalid_argument("SweepSpec: radii exceed L/2");
}

}  // namespace

NormResult morrey_norm(const GridFunction& f, double p, double lambda, const SweepSpec& sweep) {
  SpaceParams{p, p, lambda}.validate();
  check_sweep(f, sweep);
  const Domain& domain = f.domain();
  const BallStencil stencil(domain, sweep.radii.back());
  const auto offsets = stencil.offsets();
  std::vector<std::size_t> counts;
  std::vector<double> scale;
  for (double r : sweep.radii.radii()) {
    counts.push_back(stencil.count_within(r));
    scale.push_back(std::pow(r, -lambda / p));
  }
  std::vector<double> powered(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) powered[i] = std::pow(std::abs(f[i]), p);
  const double cv = domain.cell_volume();

  std::vector<BallBest> best(sweep.centers.size());
  parallel_for(sweep.centers.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t slot = begin; slot < end; ++slot) {
      const auto idx = domain.unravel(sweep.centers[slot]);
      double sum = 0.0;
      std::size_t taken = 0;
      for (std::size_t j = 0; j < counts.size(); ++j) {
        for (; taken < counts[j]; ++taken) sum += powered[domain.shifted(idx, offsets[taken])];
        const double value = scale[j] * std::pow(sum * cv, 1.0 / p);
        if (j == 0 || value > best[slot].value) best[slot] = {value, sweep.radii.radii()[j]};
      }
    }
  });
  return reduce(best, sweep);
}

std::vector<NormResult> lorentz_morrey_norms(const GridFunction& f, std::span<const SpaceParams> params,
                                             const SweepSpec& sweep) {
  check_sweep(f, sweep);
  for (const auto& sp : params) sp.validate();
  const Domain& domain = f.domain();
  const BallStencil stencil(domain, sweep.radii.back());
  const std::size_t max_count = stencil.count_within(sweep.radii.back());

  std::vector<LorentzKernel> kernels;
  std::vector<std::vector<double>> scale(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    kernels.emplace_back(params[k], domain.cell_volume(), max_count);
    for (double r : sweep.radii.radii()) scale[k].push_back(std::pow(r, -params[k].lambda / params[k].p));
  }

  std::vector<std::vector<BallBest>> best(params.size(), std::vector<BallBest>(sweep.centers.size()));
  sweep_sorted(f, sweep, [&](std::size_t slot, std::size_t j, std::span<const double> sorted) {
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double value = scale[k][j] * kernels[k].evaluate(sorted);
      if (j == 0 || value > best[k][slot].value) best[k][slot] = {value, sweep.radii.radii()[j]};
    }
  });

  std::vector<NormResult> out;
  for (std::size_t k = 0; k < params.size(); ++k) out.push_back(reduce(best[k], sweep));
  return out;
}

NormResult lorentz_morrey_norm(const GridFunction& f, double p, double q, double lambda,
                               const SweepSpec& sweep) {
  const SpaceParams sp{p, q, lambda};
  return lorentz_morrey_norms(f, std::span<const SpaceParams>(&sp, 1), sweep).front();
}

double lorentz_morrey_term(const GridFunction& f, double p, double q, double lambda, const Point& center,
                           double radius) {
  const Ball b = ball(f.domain(), center, radius);
  return std::pow(radius, -lambda / p) * lorentz_norm(restrict_to(f, b), p, q);
}

double degenerate_space_probe(const GridFunction& f, double p, double q, double lambda, const Point& center,
                              double radius) {
  const auto n = static_cast<double>(f.domain().dim);
  if (lambda >= 0.0 && lambda <= n) {
    throw std::invalid_argument("degenerate_space_probe: lambda must lie outside [0, n]");
  }
  if (f.is_zero()) throw std::invalid_argument("degenerate_space_probe: f is identically zero");
  const double big = lorentz_morrey_term(f, p, q, lambda, center, radius);
  const double small = lorentz_morrey_term(f, p, q, lambda, center, 0.5 * radius);
  return lambda > n ? small / big : big / small;
}

}  // namespace lomo
