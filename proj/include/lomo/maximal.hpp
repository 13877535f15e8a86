#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lomo/grid.hpp"
#include "lomo/rearrangement.hpp"

namespace lomo {

/// Geometric radius family standing in for sup over r > 0.
class RadiusGrid {
 public:
  /// K >= 16 radii from r_min to r_max with constant ratio.
  static RadiusGrid geometric(double r_min, double r_max, std::size_t count);
  /// One grid spacing up to L/2; the default family of every operator.
  static RadiusGrid for_domain(const Domain& domain, std::size_t count = 32);

  std::span<const double> radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  double front() const { return radii_.front(); }
  double back() const { return radii_.back(); }

 private:
  explicit RadiusGrid(std::vector<double> radii) : radii_(std::move(radii)) {}
  std::vector<double> radii_;
};

/// M_alpha f(x) = max over r of |B(x,r)|^{alpha/n - 1} * integral of |f| over B(x,r),
/// for every cell center x.
GridFunction fractional_maximal(const GridFunction& f, double alpha, const RadiusGrid& radii);

/// M_alpha f for several alpha sharing one pass over the ball sums.
std::vector<GridFunction> fractional_maximal_family(const GridFunction& f, std::span<const double> alphas,
                                                   const RadiusGrid& radii);

/// M f = M_0 f.
GridFunction hardy_littlewood(const GridFunction& f, const RadiusGrid& radii);

/// Where the ball cutoff goes when the maximal function is localised.
enum class Cutoff {
  output,  ///< (M_alpha f) chi_B
  input,   ///< M_alpha (f chi_B)
};

GridFunction localized_fractional_maximal(const GridFunction& f, double alpha,
                                          const RadiusGrid& radii, const Ball& b, Cutoff cutoff);

/// H(t) = t^{alpha/n - 1} * integral of phi over (0, t].
double hardy_operator(const DecreasingProfile& phi, double alpha, int n, double t);

/// sup over tau > t of tau^{alpha/n} phi**(tau).
///
/// On each step of phi the map tau -> tau^{alpha/n} phi**(tau) has the form
/// c1 tau^{a-1} + c2 tau^a with c1, c2 >= 0 and a < 1, whose only critical
/// point is a minimum. The supremum is therefore attained at t itself or at a
/// breakpoint past t.
double sup_hardy(const DecreasingProfile& phi, double alpha, int n, double t);

/// Lorentz functional (integral of (t^{1/q} g(t))^s dt/t)^{1/s} of
/// g(t) = sup_hardy(phi, alpha, n, t), or sup t^{1/q} g(t) for s = inf.
/// Infinite when the tail g(t) ~ t^{alpha/n - 1} is not integrable.
double sup_hardy_lorentz_norm(const DecreasingProfile& phi, double alpha, int n, double q, double s);

}  // namespace lomo
