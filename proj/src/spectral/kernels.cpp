#include "gevreyflow/spectral/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gevreyflow::kernels {

namespace serial {

void scale(std::span<cplx> values, std::span<const double> factors) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= factors[i];
}

void scale(std::span<cplx> values, std::span<const cplx> factors) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= factors[i];
}

void product(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

double weighted_energy(std::span<const cplx> v, std::span<const double> w) {
  NeumaierSum acc;
  for (std::size_t i = 0; i < v.size(); ++i) acc.add(w[i] * std::norm(v[i]));
  return acc.value();
}

double weighted_inner(std::span<const cplx> a, std::span<const cplx> b, std::span<const double> w) {
  NeumaierSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc.add(w[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag()));
  }
  return acc.value();
}

double sum(std::span<const double> values) {
  NeumaierSum acc;
  for (double x : values) acc.add(x);
  return acc.value();
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double x : values) {
    if (std::isnan(x)) return x;
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace serial

namespace parallel {

namespace {

// Splits [0, n) into kReductionChunks ranges, reduces each with `term`, and
// adds the partials in chunk order.
template <class Term>
double chunked_sum(std::size_t n, Term term) {
  std::array<double, kReductionChunks> partial{};
  const auto chunks = static_cast<long>(kReductionChunks);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < chunks; ++c) {
    const std::size_t lo = n * static_cast<std::size_t>(c) / kReductionChunks;
    const std::size_t hi = n * static_cast<std::size_t>(c + 1) / kReductionChunks;
    NeumaierSum acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[static_cast<std::size_t>(c)] = acc.value();
  }
  NeumaierSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

}  // namespace

void scale(std::span<cplx> values, std::span<const double> factors) {
  const auto n = static_cast<long>(values.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] *= factors[static_cast<std::size_t>(i)];
}

void scale(std::span<cplx> values, std::span<const cplx> factors) {
  const auto n = static_cast<long>(values.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] *= factors[static_cast<std::size_t>(i)];
}

void product(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const auto n = static_cast<long>(a.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = a[k] * b[k];
  }
}

double weighted_energy(std::span<const cplx> v, std::span<const double> w) {
  return chunked_sum(v.size(), [&](std::size_t i) { return w[i] * std::norm(v[i]); });
}

double weighted_inner(std::span<const cplx> a, std::span<const cplx> b, std::span<const double> w) {
  return chunked_sum(a.size(), [&](std::size_t i) {
    return w[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
  });
}

double sum(std::span<const double> values) {
  return chunked_sum(values.size(), [&](std::size_t i) { return values[i]; });
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  bool nan = false;
  const auto n = static_cast<long>(values.size());
#pragma omp parallel for reduction(max : m) reduction(|| : nan) schedule(static)
  for (long i = 0; i < n; ++i) {
    const double x = values[static_cast<std::size_t>(i)];
    if (std::isnan(x)) nan = true;
    m = std::max(m, std::abs(x));
  }
  return nan ? std::nan("") : m;
}

}  // namespace parallel

}  // namespace gevreyflow::kernels
