#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gevreyflow::fft {

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;

// Real-field DFT pair behind SpectralField, backed by FFTW. Spectra are full
// length-N arrays in FFT order with F_k = (1/N) sum_j f_j e^{-i xi_k x_j};
// the inverse is f_j = sum_k F_k e^{i xi_k x_j}. All functions are safe to
// call concurrently.

/// samples (length N) -> full spectrum (length N), Hermitian by construction.
void forward(std::span<const double> samples, std::span<cplx> spectrum);
/// Full Hermitian spectrum -> samples. Uses k = 0..N/2 only.
void inverse(std::span<const cplx> spectrum, std::span<double> samples);

Spectrum forward(std::span<const double> samples);
std::vector<double> inverse(std::span<const cplx> spectrum);

/// Samples of the band-limited interpolant on a grid with factor*N nodes.
/// The Nyquist coefficient is split evenly between +N/2 and -N/2.
std::vector<double> padded_inverse(std::span<const cplx> spectrum, int factor);

/// Forward transform of samples on a factor*N grid, keeping only wavenumbers
/// |k| <= keep of the coarse N-point spectrum (written to `spectrum`).
void truncated_forward(std::span<const double> fine_samples, int factor, int keep,
                       std::span<cplx> spectrum);

/// Largest deviation from F_{-k} = conj(F_k), including Im of the Nyquist mode.
double hermitian_defect(std::span<const cplx> spectrum);

}  // namespace gevreyflow::fft
