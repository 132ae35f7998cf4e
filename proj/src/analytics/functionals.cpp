#include "gevreyflow/analytics/functionals.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gevreyflow/error.hpp"
#include "gevreyflow/spectral/fft.hpp"
#include "gevreyflow/spectral/kernels.hpp"
#include "gevreyflow/spectral/multiplier.hpp"
#include "gevreyflow/spectral/products.hpp"

namespace gevreyflow {

using spectral::Spectrum;

double FunctionalBreakdown::term(const std::string& name) const {
  for (const auto& [n, v] : terms) {
    if (n == name) return v;
  }
  throw std::out_of_range("no term named " + name);
}

namespace {

void check_mu(int mu) {
  if (mu != 1 && mu != -1) throw DomainError("mu must be +1 or -1");
}

void check_sigma(double sigma) {
  if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0, got " + std::to_string(sigma));
}

Spectrum copy(std::span<const cplx> s) { return Spectrum(s.begin(), s.end()); }

Spectrum weighted(std::span<const cplx> s, const Grid& grid, const MultiplierSymbol& sym) {
  Spectrum out = copy(s);
  apply_multiplier(out, grid, sym);
  return out;
}

// L sum_k Re(conj(a_k) b_k) = int a b for real fields.
double inner(std::span<const cplx> a, std::span<const cplx> b, double length) {
  kernels::NeumaierSum acc;
  for (std::size_t j = 0; j < a.size(); ++j) acc.add(std::real(std::conj(a[j]) * b[j]));
  return length * acc.value();
}

double energy(std::span<const cplx> a, double length) { return inner(a, a, length); }

FunctionalBreakdown finish(std::vector<std::pair<std::string, double>> terms) {
  kernels::NeumaierSum acc;
  for (const auto& t : terms) acc.add(t.second);
  return FunctionalBreakdown{acc.value(), std::move(terms)};
}

Spectrum operator_F_spectrum(std::span<const cplx> w, const Grid& grid, double sigma, int mu) {
  const auto n = w.size();
  Spectrum out(n, cplx(0.0, 0.0));
  if (sigma == 0.0) return out;
  const auto cube = spectral::triple_product(w, w, w);
  const auto sw = weighted(w, grid, SechWeight{sigma});
  auto back = spectral::triple_product(sw, sw, sw);
  apply_multiplier(back, grid, CoshWeight{sigma});
  for (std::size_t j = 0; j < n; ++j) out[j] = (static_cast<double>(mu) / 3.0) * (cube[j] - back[j]);
  apply_multiplier(out, grid, Deriv{1});
  return out;
}

Spectrum operator_G_spectrum(std::span<const cplx> w, const Grid& grid, const std::vector<double>& a_nodes,
                             double sigma) {
  auto out = spectral::multiply_nodes(a_nodes, w);
  if (sigma == 0.0) {
    for (auto& c : out) c = 0.0;
    return out;
  }
  const auto sw = weighted(w, grid, SechWeight{sigma});
  auto back = spectral::multiply_nodes(a_nodes, sw);
  apply_multiplier(back, grid, CoshWeight{sigma});
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= back[j];
  return out;
}

}  // namespace

FunctionalBreakdown functional_A(const SpectralField& u, double sigma, int mu) {
  check_mu(mu);
  check_sigma(sigma);
  const auto& grid = u.grid();
  const double L = grid.length();
  const auto U = weighted(u.spectrum(), grid, CoshWeight{sigma});
  const auto Ux = spectral::derivative(U, grid, 1);
  const auto Uxx = spectral::derivative(U, grid, 2);

  const auto r = spectral::refined_samples(U);
  const auto rx = spectral::refined_samples(Ux);
  std::vector<double> u4(r.size()), uux2(r.size()), u6(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double s2 = r[j] * r[j];
    u4[j] = s2 * s2;
    u6[j] = u4[j] * s2;
    uux2[j] = s2 * rx[j] * rx[j];
  }
  const double m = static_cast<double>(mu);
  return finish({
      {"I0", energy(U, L)},
      {"I1a", energy(Ux, L)},
      {"I2a", energy(Uxx, L)},
      {"T4", -(m / 6.0) * spectral::refined_integral(u4, L)},
      {"T5", -(5.0 * m / 3.0) * spectral::refined_integral(uux2, L)},
      {"T6", spectral::refined_integral(u6, L) / 18.0},
  });
}

SpectralField operator_F(const SpectralField& w, double sigma, int mu) {
  check_mu(mu);
  check_sigma(sigma);
  auto in = copy(w.spectrum());
  dealias(in);
  return synthesize(operator_F_spectrum(in, w.grid(), sigma, mu), w.grid());
}

SpectralField operator_G(const SpectralField& w, const DampingProfile& a, double sigma) {
  check_sigma(sigma);
  auto in = copy(w.spectrum());
  dealias(in);
  return synthesize(operator_G_spectrum(in, w.grid(), a.sample(w.grid()), sigma), w.grid());
}

FunctionalBreakdown energy_rate_A(const SpectralField& u, double sigma, int mu) {
  check_mu(mu);
  check_sigma(sigma);
  const auto& grid = u.grid();
  const double L = grid.length();
  const double m = static_cast<double>(mu);
  const auto U = weighted(u.spectrum(), grid, CoshWeight{sigma});
  const auto F = operator_F_spectrum(U, grid, sigma, mu);
  const auto Ux = spectral::derivative(U, grid, 1);
  const auto Uxx = spectral::derivative(U, grid, 2);
  const auto Fx = spectral::derivative(F, grid, 1);
  const auto Fxx = spectral::derivative(F, grid, 2);

  const auto r = spectral::refined_samples(U);
  const auto rx = spectral::refined_samples(Ux);
  const auto rxx = spectral::refined_samples(Uxx);
  const auto f = spectral::refined_samples(F);
  const std::size_t n = r.size();
  std::vector<double> g3(n), g5(n), g_uux2(n), g_u2uxx(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u2 = r[j] * r[j];
    g3[j] = u2 * r[j] * f[j];
    g5[j] = u2 * u2 * r[j] * f[j];
    g_uux2[j] = r[j] * rx[j] * rx[j] * f[j];
    g_u2uxx[j] = u2 * rxx[j] * f[j];
  }
  return finish({
      {"UF", 2.0 * inner(U, F, L)},
      {"UxFx", 2.0 * inner(Ux, Fx, L)},
      {"U3F", -(2.0 * m / 3.0) * spectral::refined_integral(g3, L)},
      {"UxxFxx", 2.0 * inner(Uxx, Fxx, L)},
      {"U5F", spectral::refined_integral(g5, L) / 3.0},
      {"UUx2F", (10.0 * m / 3.0) * spectral::refined_integral(g_uux2, L)},
      {"U2UxxF", (10.0 * m / 3.0) * spectral::refined_integral(g_u2uxx, L)},
  });
}

MassRate mass_rate_M(const SpectralField& v, const DampingProfile& a, double sigma, int mu, int m) {
  check_mu(mu);
  check_sigma(sigma);
  if (m < 3 || m % 2 == 0) throw DomainError("dispersion order m must be odd and >= 3");
  const auto& grid = v.grid();
  const double L = grid.length();
  const auto U = weighted(v.spectrum(), grid, CoshWeight{sigma});
  const auto a_nodes = a.sample(grid);

  // int a V^2 on the N grid is exact: a carries one mode, V^2 at most N/2.
  const auto vals = fft::inverse(U);
  kernels::NeumaierSum acc;
  for (std::size_t j = 0; j < vals.size(); ++j) acc.add(a_nodes[j] * vals[j] * vals[j]);
  const double damping = -2.0 * L * acc.value() / static_cast<double>(vals.size());

  auto fg = operator_F_spectrum(U, grid, sigma, mu);
  const auto g = operator_G_spectrum(U, grid, a_nodes, sigma);
  for (std::size_t j = 0; j < fg.size(); ++j) fg[j] += g[j];
  const double fg_term = 2.0 * inner(fg, U, L);
  return MassRate{damping + fg_term, damping, fg_term};
}

double damping_A_norm(const DampingProfile& a, double sigma, int K) {
  check_sigma(sigma);
  if (K < 8) throw DomainError("A-norm truncation order K must be >= 8");
  const double C = a.growth_constant();
  const double q = sigma * a.growth_rate();
  if (!(q < 1.0)) {
    std::ostringstream msg;
    msg << "A-norm series diverges: sigma R = " << q << " >= 1";
    throw DivergenceError(msg.str());
  }

  kernels::NeumaierSum head;
  double power = 1.0;  // sigma^k / k!
  auto term = [&](int k) { return std::pow(k + 1.0, 0.25) * power * a.sup_derivative(k); };
  for (int k = 0;; ++k) {
    if (k > 0) power *= sigma / k;
    head.add(term(k));
    if (k < K) continue;
    if (q == 0.0 || C == 0.0) return head.value();
    // Terms beyond k are bounded by C (j+1)^{1/4} q^j, whose ratio is at most rho.
    const double rho = std::pow((k + 3.0) / (k + 2.0), 0.25) * q;
    if (rho < 1.0) {
      const double tail = C * std::pow(k + 2.0, 0.25) * std::pow(q, k + 1) / (1.0 - rho);
      if (tail <= 1e-12 * head.value()) return head.value() + tail;
    }
    if (k > 100000) throw DivergenceError("A-norm tail failed to converge");
  }
}

}  // namespace gevreyflow
