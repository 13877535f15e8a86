#pragma once

#include <complex>
#include <vector>

#include "lomo/grid.hpp"

namespace lomo::detail {

using Spectrum = std::vector<std::complex<double>>;

/// Unnormalised forward DFT of real samples over the domain's axes.
Spectrum forward_dft(const Domain& domain, std::span<const double> samples);

/// Inverse DFT including the 1/N^n factor.
Spectrum inverse_dft(const Domain& domain, Spectrum spectrum);

/// Signed integer frequency per axis for a flat spectrum index, in [-N/2, N/2).
std::array<long, 3> frequency_index(const Domain& domain, std::size_t flat);

/// Applies a real multiplier m(flat spectrum index) and returns the real part
/// of the result. Throws if the imaginary residual exceeds 1e-10 ||f||_2.
std::vector<double> apply_real_multiplier(const Domain& domain, std::span<const double> samples,
                                          std::span<const double> multiplier);

}  // namespace lomo::detail
