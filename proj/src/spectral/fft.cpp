#include "gevreyflow/spectral/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace gevreyflow::fft {

namespace {

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// The FFTW planner is not thread-safe; execution through the new-array
// interface is. Plans are made once per size and live for the process.
const Plans& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, Plans> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  double* real = fftw_alloc_real(static_cast<std::size_t>(n));
  fftw_complex* half = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  Plans p;
  p.r2c = fftw_plan_dft_r2c_1d(n, real, half, flags);
  p.c2r = fftw_plan_dft_c2r_1d(n, half, real, flags);
  fftw_free(half);
  fftw_free(real);
  return cache.emplace(n, p).first->second;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void forward(std::span<const double> samples, std::span<cplx> spectrum) {
  const int n = static_cast<int>(samples.size());
  const auto nh = static_cast<std::size_t>(n / 2);
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<cplx> half(nh + 1);
  fftw_execute_dft_r2c(plans_for(n).r2c, in.data(), as_fftw(half.data()));
  const double inv_n = 1.0 / n;
  for (std::size_t j = 0; j <= nh; ++j) spectrum[j] = half[j] * inv_n;
  spectrum[nh] = cplx(spectrum[nh].real(), 0.0);
  for (std::size_t j = nh + 1; j < static_cast<std::size_t>(n); ++j) {
    spectrum[j] = std::conj(spectrum[static_cast<std::size_t>(n) - j]);
  }
}

void inverse(std::span<const cplx> spectrum, std::span<double> samples) {
  const int n = static_cast<int>(spectrum.size());
  const auto nh = static_cast<std::size_t>(n / 2);
  std::vector<cplx> half(spectrum.begin(), spectrum.begin() + static_cast<std::ptrdiff_t>(nh + 1));
  half[0] = cplx(half[0].real(), 0.0);
  half[nh] = cplx(half[nh].real(), 0.0);
  fftw_execute_dft_c2r(plans_for(n).c2r, as_fftw(half.data()), samples.data());
}

Spectrum forward(std::span<const double> samples) {
  Spectrum out(samples.size());
  forward(samples, out);
  return out;
}

std::vector<double> inverse(std::span<const cplx> spectrum) {
  std::vector<double> out(spectrum.size());
  inverse(spectrum, out);
  return out;
}

std::vector<double> padded_inverse(std::span<const cplx> spectrum, int factor) {
  const auto n = spectrum.size();
  const auto m = n * static_cast<std::size_t>(factor);
  const auto nh = n / 2;
  Spectrum padded(m, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < nh; ++j) padded[j] = spectrum[j];
  for (std::size_t j = nh + 1; j < n; ++j) padded[m - n + j] = spectrum[j];
  if (factor > 1) {
    const double nyq = 0.5 * spectrum[nh].real();
    padded[nh] = nyq;
    padded[m - nh] = nyq;
  } else {
    padded[nh] = spectrum[nh];
  }
  std::vector<double> out(m);
  inverse(padded, out);
  return out;
}

void truncated_forward(std::span<const double> fine_samples, int factor, int keep,
                       std::span<cplx> spectrum) {
  const auto m = fine_samples.size();
  const auto n = m / static_cast<std::size_t>(factor);
  const auto kk = static_cast<std::size_t>(keep);
  const Spectrum fine = forward(fine_samples);
  std::fill(spectrum.begin(), spectrum.end(), cplx(0.0, 0.0));
  for (std::size_t k = 0; k <= kk && k < n / 2; ++k) spectrum[k] = fine[k];
  for (std::size_t k = 1; k <= kk && k < n / 2; ++k) spectrum[n - k] = fine[m - k];
}

double hermitian_defect(std::span<const cplx> spectrum) {
  const auto n = spectrum.size();
  double defect = std::max(std::abs(spectrum[0].imag()), std::abs(spectrum[n / 2].imag()));
  for (std::size_t j = 1; j < n / 2; ++j) {
    defect = std::max(defect, std::abs(spectrum[n - j] - std::conj(spectrum[j])));
  }
  return defect;
}

}  // namespace gevreyflow::fft
