#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lomo/grid.hpp"
#include "lomo/maximal.hpp"

namespace lomo {

/// Bochner-Riesz mean parameters; delta > (n-1)/2 is enforced by `make`.
struct MultiplierSpec {
  double delta = 1.0;
  double r = 1.0;

  static MultiplierSpec make(int dim, double delta, double r);
};

/// Multiplies the DFT coefficient at wavenumber xi = 2 pi k / L by
/// (1 - r^2 |xi|^2)_+^delta and transforms back.
GridFunction bochner_riesz(const GridFunction& f, const MultiplierSpec& spec);

/// sup over r in the radius grid of |B_r^delta f|, pointwise.
GridFunction maximal_bochner_riesz(const GridFunction& f, double delta, const RadiusGrid& radii);

/// Periodic -Delta_h + diag(V) on the grid, with its eigendecomposition.
struct Hamiltonian {
  Domain domain;
  Eigen::MatrixXd matrix;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
};

/// Largest N^n accepted for a dense eigendecomposition.
inline constexpr std::size_t kDenseBudget = 4096;

/// Second-order centered Laplacian plus V. Requires V > 0 and N^n <= 4096.
/// Does not require N to be a power of two.
Hamiltonian build_hamiltonian(const GridFunction& potential);

/// Symbol of -Delta_h at a flat spectrum index: sum over axes of (2 - 2 cos(2 pi k / N)) / h^2.
double discrete_laplacian_symbol(const Domain& domain, std::size_t flat);

enum class SchrodingerMode { t1, t2 };

/// Potential and exponents of V^gamma (-Delta + V)^{-beta} (t1) or
/// V^gamma grad (-Delta + V)^{-beta} (t2).
struct SchrodingerSpec {
  GridFunction potential;
  double gamma = 0.0;
  double beta = 0.0;
  SchrodingerMode mode = SchrodingerMode::t1;

  /// Validates V > 0 and 0 <= gamma <= beta <= 1 (t1), or
  /// 0 <= gamma <= 1/2 <= beta <= 1 with beta - gamma >= 1/2 (t2).
  static SchrodingerSpec make(GridFunction potential, double gamma, double beta, SchrodingerMode mode);

  /// Order of the fractional maximal operator dominating the operator:
  /// 2(beta - gamma) for t1, 2(beta - gamma) - 1 for t2.
  double dominating_alpha() const;
};

/// Fractional powers of -Delta_h + V. Constant potentials take a Fourier
/// diagonal path; anything else is diagonalised densely once at construction.
class SchrodingerOperator {
 public:
  explicit SchrodingerOperator(GridFunction potential);

  const GridFunction& potential() const { return potential_; }
  bool circulant() const { return !dense_.has_value(); }
  const Domain& domain() const { return potential_.domain(); }

  /// (-Delta_h + V)^exponent f.
  GridFunction apply_power(const GridFunction& f, double exponent) const;

  GridFunction t1(const GridFunction& f, double gamma, double beta) const;
  /// Components V^gamma D_d (-Delta_h + V)^{-beta} f with the forward
  /// difference D_d u(x) = (u(x + h e_d) - u(x)) / h, whose adjoint pairing
  /// gives D^T D = -Delta_h.
  std::vector<GridFunction> t2_components(const GridFunction& f, double gamma, double beta) const;
  /// Pointwise Euclidean magnitude of `t2_components`.
  GridFunction t2(const GridFunction& f, double gamma, double beta) const;

 private:
  GridFunction potential_;
  std::optional<Hamiltonian> dense_;
};

GridFunction t1_apply(const GridFunction& f, const SchrodingerSpec& spec);
GridFunction t2_apply(const GridFunction& f, const SchrodingerSpec& spec);

/// Forward difference along one axis.
GridFunction forward_difference(const GridFunction& u, int axis);

struct DominationRatio {
  double sup = 0.0;
  double q50 = 0.0;
  double q90 = 0.0;
  double q99 = 0.0;
};

/// Pointwise |g| / h. h must be positive wherever g is non-zero; points with
/// g = 0 contribute ratio 0.
DominationRatio domination_ratio(const GridFunction& g, const GridFunction& h);

}  // namespace lomo
