#include "fft.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace lomo::detail {

namespace {

// FFTW's planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void transform(const Domain& domain, Spectrum& data, int sign) {
  int dims[3];
  for (int d = 0; d < domain.dim; ++d) dims[d] = static_cast<int>(domain.points_per_axis);
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(domain.dim, dims, buffer, buffer, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

Spectrum forward_dft(const Domain& domain, std::span<const double> samples) {
  Spectrum data(samples.begin(), samples.end());
  transform(domain, data, FFTW_FORWARD);
  return data;
}

Spectrum inverse_dft(const Domain& domain, Spectrum spectrum) {
  transform(domain, spectrum, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(domain.size());
  for (auto& c : spectrum) c *= scale;
  return spectrum;
}

std::array<long, 3> frequency_index(const Domain& domain, std::size_t flat) {
  const auto idx = domain.unravel(flat);
  const auto n = static_cast<long>(domain.points_per_axis);
  std::array<long, 3> k{0, 0, 0};
  for (int d = 0; d < domain.dim; ++d) {
    const auto i = static_cast<long>(idx[d]);
    k[d] = i < n / 2 ? i : i - n;
  }
  return k;
}

std::vector<double> apply_real_multiplier(const Domain& domain, std::span<const double> samples,
                                          std::span<const double> multiplier) {
  Spectrum spectrum = forward_dft(domain, samples);
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] *= multiplier[i];
  const Spectrum back = inverse_dft(domain, std::move(spectrum));
  std::vector<double> out(back.size());
  double residual2 = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < back.size(); ++i) {
    out[i] = back[i].real();
    residual2 += back[i].imag() * back[i].imag();
    norm2 += samples[i] * samples[i];
  }
  if (std::sqrt(residual2) > 1e-10 * std::sqrt(norm2) + 1e-300) {
    throw std::runtime_error("Fourier multiplier left an imaginary residual above 1e-10 ||f||_2");
  }
  return out;
}

}  // namespace lomo::detail
