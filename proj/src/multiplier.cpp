#include "lomo/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "fft.hpp"

namespace lomo {

MultiplierSpec MultiplierSpec::make(int dim, double delta, double r) {
  const double threshold = 0.5 * (dim - 1);
  if (!(delta > threshold)) {
    throw std::invalid_argument("Bochner-Riesz requires delta > (n-1)/2 = " + std::to_string(threshold) +
                                ", got " + std::to_string(delta));
  }
  if (!(r > 0.0)) throw std::invalid_argument("Bochner-Riesz scale r must be positive");
  return MultiplierSpec{delta, r};
}

namespace {

double wavenumber2(const Domain& domain, std::size_t flat) {
  const auto k = detail::frequency_index(domain, flat);
  const double unit = 2.0 * std::numbers::pi / domain.side;
  double xi2 = 0.0;
  for (int d = 0; d < domain.dim; ++d) xi2 += (unit * k[d]) * (unit * k[d]);
  return xi2;
}

double bochner_riesz_symbol(double xi2, const MultiplierSpec& spec) {
  const double base = 1.0 - spec.r * spec.r * xi2;
  return base > 0.0 ? std::pow(base, spec.delta) : 0.0;
}

}  // namespace

GridFunction bochner_riesz(const GridFunction& f, const MultiplierSpec& spec) {
  const Domain& domain = f.domain();
  std::vector<double> multiplier(domain.size());
  for (std::size_t i = 0; i < multiplier.size(); ++i) {
    multiplier[i] = bochner_riesz_symbol(wavenumber2(domain, i), spec);
  }
  return GridFunction(domain, detail::apply_real_multiplier(domain, f.samples(), multiplier));
}

GridFunction maximal_bochner_riesz(const GridFunction& f, double delta, const RadiusGrid& radii) {
  const Domain& domain = f.domain();
  MultiplierSpec::make(domain.dim, delta, radii.front());
  std::vector<double> xi2(domain.size());
  for (std::size_t i = 0; i < xi2.size(); ++i) xi2[i] = wavenumber2(domain, i);

  const detail::Spectrum spectrum = detail::forward_dft(domain, f.samples());
  double norm2 = 0.0;
  for (double v : f.samples()) norm2 += v * v;

  GridFunction out(domain);
  for (double r : radii.radii()) {
    const MultiplierSpec spec{delta, r};
    detail::Spectrum scaled = spectrum;
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] *= bochner_riesz_symbol(xi2[i], spec);
    const detail::Spectrum back = detail::inverse_dft(domain, std::move(scaled));
    double residual2 = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) {
      out[i] = std::max(out[i], std::abs(back[i].real()));
      residual2 += back[i].imag() * back[i].imag();
    }
    if (std::sqrt(residual2) > 1e-10 * std::sqrt(norm2) + 1e-300) {
      throw std::runtime_error("maximal_bochner_riesz: imaginary residual above 1e-10 ||f||_2");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double discrete_laplacian_symbol(const Domain& domain, std::size_t flat) {
  const auto k = detail::frequency_index(domain, flat);
  const double h = domain.spacing();
  const auto n = static_cast<double>(domain.points_per_axis);
  double acc = 0.0;
  for (int d = 0; d < domain.dim; ++d) {
    acc += (2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k[d]) / n)) / (h * h);
  }
  return acc;
}

namespace {

void check_potential(const GridFunction& potential) {
  for (double v : potential.samples()) {
    if (!(v > 0.0)) throw std::invalid_argument("Schrodinger potential must be strictly positive");
  }
}

bool is_constant(const GridFunction& g) {
  const auto s = g.samples();
  return std::all_of(s.begin(), s.end(), [&](double v) { return v == s.front(); });
}

}  // namespace

Hamiltonian build_hamiltonian(const GridFunction& potential) {
  check_potential(potential);
  const Domain& domain = potential.domain();
  const std::size_t size = domain.size();
  if (size > kDenseBudget) {
    throw std::invalid_argument("build_hamiltonian: " + std::to_string(size) +
                                " cells exceed the dense eigendecomposition budget of " +
                                std::to_string(kDenseBudget));
  }
  const double inv_h2 = 1.0 / (domain.spacing() * domain.spacing());
  Hamiltonian ham{domain, Eigen::MatrixXd::Zero(size, size), {}, {}};
  for (std::size_t i = 0; i < size; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    ham.matrix(ii, ii) += 2.0 * domain.dim * inv_h2 + potential[i];
    for (int d = 0; d < domain.dim; ++d) {
      for (int step : {-1, 1}) {
        CellOffset offset{0, 0, 0};
        offset[d] = step;
        ham.matrix(ii, static_cast<Eigen::Index>(domain.shifted(i, offset))) -= inv_h2;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ham.matrix);
  if (solver.info() != Eigen::Success) throw std::runtime_error("build_hamiltonian: eigensolver failed");
  ham.eigenvalues = solver.eigenvalues();
  ham.eigenvectors = solver.eigenvectors();
  return ham;
}

SchrodingerSpec SchrodingerSpec::make(GridFunction potential, double gamma, double beta, SchrodingerMode mode) {
  check_potential(potential);
  if (mode == SchrodingerMode::t1) {
    if (!(0.0 <= gamma && gamma <= beta && beta <= 1.0)) {
      throw std::invalid_argument("V^gamma (-Delta+V)^{-beta} requires 0 <= gamma <= beta <= 1");
    }
  } else {
    if (!(0.0 <= gamma && gamma <= 0.5 && 0.5 <= beta && beta <= 1.0 && beta - gamma >= 0.5)) {
      throw std::invalid_argument(
          "V^gamma grad (-Delta+V)^{-beta} requires 0 <= gamma <= 1/2 <= beta <= 1 and beta - gamma >= 1/2");
    }
  }
  return SchrodingerSpec{std::move(potential), gamma, beta, mode};
}

double SchrodingerSpec::dominating_alpha() const {
  const double alpha = 2.0 * (beta - gamma);
  return mode == SchrodingerMode::t1 ? alpha : alpha - 1.0;
}

SchrodingerOperator::SchrodingerOperator(GridFunction potential) : potential_(std::move(potential)) {
  check_potential(potential_);
  if (!is_constant(potential_)) dense_ = build_hamiltonian(potential_);
}

GridFunction SchrodingerOperator::apply_power(const GridFunction& f, double exponent) const {
  if (!(f.domain() == domain())) throw std::invalid_argument("apply_power: domain mismatch");
  if (exponent == 0.0) return f;
  if (!dense_) {
    const double v = potential_[0];
    std::vector<double> multiplier(f.size());
    for (std::size_t i = 0; i < multiplier.size(); ++i) {
      multiplier[i] = std::pow(discrete_laplacian_symbol(domain(), i) + v, exponent);
    }
    return GridFunction(domain(), detail::apply_real_multiplier(domain(), f.samples(), multiplier));
  }
  const auto& ham = *dense_;
  const Eigen::Map<const Eigen::VectorXd> x(f.samples().data(), static_cast<Eigen::Index>(f.size()));
  const Eigen::VectorXd coeffs = ham.eigenvectors.transpose() * x;
  const Eigen::VectorXd scaled = coeffs.cwiseProduct(ham.eigenvalues.array().pow(exponent).matrix());
  const Eigen::VectorXd y = ham.eigenvectors * scaled;
  return GridFunction(domain(), std::vector<double>(y.data(), y.data() + y.size()));
}

GridFunction SchrodingerOperator::t1(const GridFunction& f, double gamma, double beta) const {
  GridFunction out = apply_power(f, -beta);
  if (gamma != 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::pow(potential_[i], gamma);
  }
  return out;
}

std::vector<GridFunction> SchrodingerOperator::t2_components(const GridFunction& f, double gamma,
                                                             double beta) const {
  const GridFunction u = apply_power(f, -beta);
  std::vector<GridFunction> out;
  for (int d = 0; d < domain().dim; ++d) {
    GridFunction component = forward_difference(u, d);
    if (gamma != 0.0) {
      for (std::size_t i = 0; i < component.size(); ++i) component[i] *= std::pow(potential_[i], gamma);
    }
    out.push_back(std::move(component));
  }
  return out;
}

GridFunction SchrodingerOperator::t2(const GridFunction& f, double gamma, double beta) const {
  const auto components = t2_components(f, gamma, beta);
  GridFunction out(domain());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double acc = 0.0;
    for (const auto& c : components) acc += c[i] * c[i];
    out[i] = std::sqrt(acc);
  }
  return out;
}

GridFunction t1_apply(const GridFunction& f, const SchrodingerSpec& spec) {
  if (spec.mode != SchrodingerMode::t1) throw std::invalid_argument("t1_apply: spec is not in t1 mode");
  return SchrodingerOperator(spec.potential).t1(f, spec.gamma, spec.beta);
}

GridFunction t2_apply(const GridFunction& f, const SchrodingerSpec& spec) {
  if (spec.mode != SchrodingerMode::t2) throw std::invalid_argument("t2_apply: spec is not in t2 mode");
  return SchrodingerOperator(spec.potential).t2(f, spec.gamma, spec.beta);
}

GridFunction forward_difference(const GridFunction& u, int axis) {
  const Domain& domain = u.domain();
  CellOffset offset{0, 0, 0};
  offset[axis] = 1;
  const double inv_h = 1.0 / domain.spacing();
  GridFunction out(domain);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = (u[domain.shifted(i, offset)] - u[i]) * inv_h;
  return out;
}

// ---------------------------------------------------------------------------

DominationRatio domination_ratio(const GridFunction& g, const GridFunction& h) {
  if (g.size() != h.size()) throw std::invalid_argument("domination_ratio: size mismatch");
  std::vector<double> ratios(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double num = std::abs(g[i]);
    if (num == 0.0) {
      ratios[i] = 0.0;
      continue;
    }
    if (!(h[i] > 0.0)) {
      throw std::domain_error("domination_ratio: dominating function vanishes where g != 0 (cell " +
                              std::to_string(i) + ")");
    }
    ratios[i] = num / h[i];
  }
  std::sort(ratios.begin(), ratios.end());
  auto quantile = [&](double level) {
    const auto rank = static_cast<std::size_t>(std::ceil(level * static_cast<double>(ratios.size())));
    return ratios[std::min(ratios.size() - 1, rank == 0 ? 0 : rank - 1)];
  };
  return DominationRatio{ratios.back(), quantile(0.5), quantile(0.9), quantile(0.99)};
}

}  // namespace lomo
