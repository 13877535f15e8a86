#include "lomo/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "lomo/parallel.hpp"

namespace lomo {

RadiusGrid RadiusGrid::geometric(double r_min, double r_max, std::size_t count) {
  if (count < 16) throw std::invalid_argument("RadiusGrid: need at least 16 radii");
  if (!(r_min > 0.0) || !(r_max > r_min)) {
    throw std::invalid_argument("RadiusGrid: need 0 < r_min < r_max");
  }
  std::vector<double> radii(count);
  const double log_ratio = std::log(r_max / r_min) / static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) {
    radii[j] = r_min * std::exp(log_ratio * static_cast<double>(j));
  }
  radii.back() = r_max;
  return RadiusGrid(std::move(radii));
}

RadiusGrid RadiusGrid::for_domain(const Domain& domain, std::size_t count) {
  return geometric(domain.spacing(), 0.5 * domain.side, count);
}

namespace {

void check_alpha(double alpha, int n) {
  if (!(alpha >= 0.0) || !(alpha < static_cast<double>(n))) {
    throw std::invalid_argument("fractional maximal operator requires 0 <= alpha < n, got alpha = " +
                                std::to_string(alpha));
  }
}

}  // namespace

std::vector<GridFunction> fractional_maximal_family(const GridFunction& f, std::span<const double> alphas,
                                                   const RadiusGrid& radii) {
  const Domain& domain = f.domain();
  for (double alpha : alphas) check_alpha(alpha, domain.dim);
  if (radii.back() > 0.5 * domain.side) {
    throw std::invalid_argument("fractional_maximal: radii exceed L/2");
  }
  const BallStencil stencil(domain, radii.back());
  const auto offsets = stencil.offsets();
  std::vector<std::size_t> counts;
  for (double r : radii.radii()) counts.push_back(stencil.count_within(r));

  const double cv = domain.cell_volume();
  const std::size_t nr = counts.size();
  // weights[a * nr + j] = |B_j|^{alpha_a / n - 1} * cell volume
  std::vector<double> weights(alphas.size() * nr);
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const double exponent = alphas[a] / static_cast<double>(domain.dim) - 1.0;
    for (std::size_t j = 0; j < nr; ++j) {
      weights[a * nr + j] = counts[j] == 0 ? 0.0 : std::pow(static_cast<double>(counts[j]) * cv, exponent) * cv;
    }
  }

  std::vector<double> mags(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mags[i] = std::abs(f[i]);

  std::vector<GridFunction> out(alphas.size(), GridFunction(domain));
  parallel_for(f.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> sums(nr);
    for (std::size_t x = begin; x < end; ++x) {
      const auto idx = domain.unravel(x);
      double sum = 0.0;
      std::size_t taken = 0;
      for (std::size_t j = 0; j < nr; ++j) {
        for (; taken < counts[j]; ++taken) sum += mags[domain.shifted(idx, offsets[taken])];
        sums[j] = sum;
      }
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        double best = 0.0;
        for (std::size_t j = 0; j < nr; ++j) best = std::max(best, sums[j] * weights[a * nr + j]);
        out[a][x] = best;
      }
    }
  });
  return out;
}

GridFunction fractional_maximal(const GridFunction& f, double alpha, const RadiusGrid& radii) {
  const double alphas[] = {alpha};
  return std::move(fractional_maximal_family(f, alphas, radii).front());
}

GridFunction hardy_littlewood(const GridFunction& f, const RadiusGrid& radii) {
  return fractional_maximal(f, 0.0, radii);
}

GridFunction localized_fractional_maximal(const GridFunction& f, double alpha,
                                          const RadiusGrid& radii, const Ball& b, Cutoff cutoff) {
  if (cutoff == Cutoff::input) return fractional_maximal(restrict_to(f, b), alpha, radii);
  return restrict_to(fractional_maximal(f, alpha, radii), b);
}

double hardy_operator(const DecreasingProfile& phi, double alpha, int n, double t) {
  check_alpha(alpha, n);
  if (!(t > 0.0)) throw std::invalid_argument("hardy_operator: t must be positive");
  return std::pow(t, alpha / static_cast<double>(n) - 1.0) * phi.integral_to(t);
}

double sup_hardy(const DecreasingProfile& phi, double alpha, int n, double t) {
  check_alpha(alpha, n);
  if (!(t > 0.0)) throw std::invalid_argument("sup_hardy: t must be positive");
  const double a = alpha / static_cast<double>(n);
  auto weighted = [&](double tau) { return std::pow(tau, a - 1.0) * phi.integral_to(tau); };
  double best = weighted(t);
  const auto bps = phi.breakpoints();
  for (auto it = std::upper_bound(bps.begin(), bps.end(), t); it != bps.end(); ++it) {
    best = std::max(best, weighted(*it));
  }
  return best;
}

double sup_hardy_lorentz_norm(const DecreasingProfile& phi, double alpha, int n, double q, double s) {
  check_alpha(alpha, n);
  if (!(q > 0.0) || !(s > 0.0)) throw std::invalid_argument("sup_hardy_lorentz_norm: q, s must be positive");
  if (phi.empty()) return 0.0;
  const double a = alpha / static_cast<double>(n);
  const auto t = phi.breakpoints();
  const std::size_t m = t.size();
  auto weighted = [&](double tau) { return std::pow(tau, a - 1.0) * phi.integral_to(tau); };

  // running[k] = sup over tau > t_k of the weighted average
  std::vector<double> running(m);
  running[m - 1] = weighted(t[m - 1]);
  for (std::size_t k = m - 1; k-- > 0;) running[k] = std::max(weighted(t[k]), running[k + 1]);

  // On [t_{k-1}, t_k] the sup equals max(weighted(tau), running[k]); the
  // weighted average exceeds running[k] on an initial segment at most.
  auto crossing = [&](std::size_t k) {
    double lo = t[k - 1];
    double hi = t[k];
    if (weighted(lo) <= running[k]) return lo;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (weighted(mid) > running[k] ? lo : hi) = mid;
    }
    return hi;
  };

  const double tail_exponent = 1.0 / q + a - 1.0;
  if (s == std::numeric_limits<double>::infinity()) {
    if (tail_exponent > 0.0) return std::numeric_limits<double>::infinity();
    double best = running[0] * std::pow(t[0], 1.0 / q);
    for (std::size_t k = 1; k < m; ++k) {
      const double cross = crossing(k);
      constexpr int kSamples = 64;
      const double lo = std::log(t[k - 1]);
      const double hi = std::log(t[k]);
      for (int i = 0; i <= kSamples; ++i) {
        const double tau = std::exp(lo + (hi - lo) * i / kSamples);
        const double g = tau < cross ? std::max(weighted(tau), running[k]) : running[k];
        best = std::max(best, std::pow(tau, 1.0 / q) * g);
      }
    }
    return best;
  }
  if (tail_exponent >= 0.0) return std::numeric_limits<double>::infinity();

  using Gauss = boost::math::quadrature::gauss<double, 20>;
  // (0, t_0]: the sup is the constant running[0]
  double acc = std::pow(running[0], s) * (q / s) * std::pow(t[0], s / q);
  for (std::size_t k = 1; k < m; ++k) {
    const double cross = crossing(k);
    acc += std::pow(running[k], s) * (q / s) * (std::pow(t[k], s / q) - std::pow(cross, s / q));
    if (cross > t[k - 1]) {
      auto integrand = [&](double log_tau) {
        const double tau = std::exp(log_tau);
        return std::pow(std::pow(tau, 1.0 / q) * weighted(tau), s);
      };
      const double lo = std::log(t[k - 1]);
      const double hi = std::log(cross);
      const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / std::log(2.0))));
      const double width = (hi - lo) / panels;
      for (int i = 0; i < panels; ++i) acc += Gauss::integrate(integrand, lo + i * width, lo + (i + 1) * width);
    }
  }
  // past supp phi: (t^{1/q} I t^{a-1})^s dt/t
  acc += std::pow(phi.total_mass(), s) * std::pow(t[m - 1], s * tail_exponent) / (-s * tail_exponent);
  return std::pow(acc, 1.0 / s);
}

}  // namespace lomo
