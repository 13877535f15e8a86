#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "lomo/grid.hpp"
#include "lomo/maximal.hpp"
#include "lomo/rearrangement.hpp"

namespace lomo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Exponents of a Lorentz-Morrey space L_{p,q;lambda}; (u, s) is the second
/// fine index used by two-space statements.
struct SpaceParams {
  double p = 2.0;
  double q = 2.0;
  double lambda = 0.0;
  double u = 2.0;
  double s = 2.0;

  /// p' with 1/p + 1/p' = 1; infinite for p = 1.
  double conjugate_p() const { return p == 1.0 ? kInfinity : p / (p - 1.0); }
  /// Throws unless p >= 1 and q in (0, inf].
  void validate() const;
};

/// Centers (flat cell indices) and radii replacing sup over x and r.
struct SweepSpec {
  std::vector<std::size_t> centers;
  RadiusGrid radii;

  /// Every cell as a center.
  static SweepSpec full(const Domain& domain, std::size_t radii_count = 32);
  /// Cells on a coarse lattice of the given stride plus the cell nearest the
  /// centroid of supp f. stride = 0 picks the smallest power of two keeping
  /// the lattice at <= 4096 centers.
  static SweepSpec strided(const GridFunction& f, std::size_t stride = 0, std::size_t radii_count = 32);
  /// Stride chosen by `strided` for a domain when asked for the default.
  static std::size_t default_stride(const Domain& domain);
};

struct NormResult {
  double value = 0.0;
  std::size_t argmax_center = 0;
  double argmax_radius = 0.0;
  std::size_t balls_evaluated = 0;
};

/// (integral of (t^{1/p} f*(t))^q dt/t)^{1/q}, or sup t^{1/p} f*(t) for q = inf,
/// evaluated in closed form on the step profile.
double lorentz_norm(const DecreasingProfile& profile, double p, double q);
double lorentz_norm(const GridFunction& f, double p, double q);

/// The same functional with f** in place of f*. Finite pieces use Gauss-Legendre
/// quadrature on log-spaced panels; the tail past supp f* is closed form.
double lorentz_norm_double_star(const DecreasingProfile& profile, double p, double q);

/// sup over the sweep of r^{-lambda/p} ||f||_{L_p(B(x,r))}.
NormResult morrey_norm(const GridFunction& f, double p, double lambda, const SweepSpec& sweep);

/// sup over the sweep of r^{-lambda/p} ||f chi_{B(x,r)}||_{L_{p,q}}.
NormResult lorentz_morrey_norm(const GridFunction& f, double p, double q, double lambda,
                               const SweepSpec& sweep);

/// Several (p, q, lambda) over one sweep; every ball is rearranged once.
std::vector<NormResult> lorentz_morrey_norms(const GridFunction& f, std::span<const SpaceParams> params,
                                             const SweepSpec& sweep);

/// r^{-lambda/p} ||f chi_{B(x,r)}||_{L_{p,q}} for one ball.
double lorentz_morrey_term(const GridFunction& f, double p, double q, double lambda, const Point& center,
                           double radius);

/// Growth of the Lorentz-Morrey ball term when lambda lies outside [0, n].
/// For lambda > n returns term(r/2) / term(r); for lambda < 0 returns
/// term(r) / term(r/2). Values above one that persist across radii mean the
/// norm is infinite for every f that is not identically zero.
double degenerate_space_probe(const GridFunction& f, double p, double q, double lambda, const Point& center,
                              double radius);

}  // namespace lomo
