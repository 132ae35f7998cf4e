#include "gevreyflow/spectral/products.hpp"

#include "gevreyflow/spectral/fft.hpp"
#include "gevreyflow/spectral/kernels.hpp"
#include "gevreyflow/spectral/multiplier.hpp"

namespace gevreyflow::spectral {

std::vector<double> refined_samples(std::span<const cplx> spectrum) {
  return fft::padded_inverse(spectrum, 2);
}

Spectrum project_refined(std::span<const double> refined, int modes) {
  Spectrum out(static_cast<std::size_t>(modes));
  fft::truncated_forward(refined, 2, modes / 4, out);
  return out;
}

Spectrum triple_product(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> c) {
  auto fa = refined_samples(a);
  const auto fb = refined_samples(b);
  const auto fc = refined_samples(c);
  kernels::product(fa, fb, fa);
  kernels::product(fa, fc, fa);
  return project_refined(fa, static_cast<int>(a.size()));
}

Spectrum multiply_nodes(std::span<const double> a_nodes, std::span<const cplx> f) {
  auto v = fft::inverse(f);
  kernels::product(a_nodes, v, v);
  Spectrum out = fft::forward(v);
  dealias(out);
  return out;
}

Spectrum derivative(std::span<const cplx> f, const Grid& grid, int order) {
  Spectrum out(f.begin(), f.end());
  apply_multiplier(out, grid, Deriv{order});
  return out;
}

double refined_integral(std::span<const double> refined, double length) {
  return length * kernels::sum(refined) / static_cast<double>(refined.size());
}

}  // namespace gevreyflow::spectral
