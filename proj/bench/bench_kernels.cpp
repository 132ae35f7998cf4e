// Serial reference vs OpenMP kernels: wall time and agreement.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "gevreyflow/inequalities/properties.hpp"
#include "gevreyflow/spectral/kernels.hpp"

namespace k = gevreyflow::kernels;
using gevreyflow::kernels::cplx;

template <class Fn>
double best_of(int reps, Fn&& fn) {
  double best = HUGE_VAL;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double ts, double tp, double diff) {
  std::printf("%-28s %12.6f %12.6f %8.2fx   |diff| %.3g\n", name, ts, tp, ts / tp, diff);
}

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::stoul(argv[1]) : (1u << 22);
  std::printf("threads %d, n = %zu\n", omp_get_max_threads(), n);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  std::vector<double> w(n), a(n), b(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = {g(rng), g(rng)};
    w[i] = std::abs(g(rng));
    a[i] = g(rng);
    b[i] = g(rng);
  }

  double es = 0, ep = 0;
  const double ts = best_of(5, [&] { es = k::serial::weighted_energy(v, w); });
  const double tp = best_of(5, [&] { ep = k::parallel::weighted_energy(v, w); });
  row("weighted_energy", ts, tp, std::abs(es - ep));

  double is = 0, ip = 0;
  row("weighted_inner", best_of(5, [&] { is = k::serial::weighted_inner(v, v, w); }),
      best_of(5, [&] { ip = k::parallel::weighted_inner(v, v, w); }), std::abs(is - ip));

  double ss = 0, sp = 0;
  row("sum", best_of(5, [&] { ss = k::serial::sum(a); }), best_of(5, [&] { sp = k::parallel::sum(a); }),
      std::abs(ss - sp));

  row("product", best_of(5, [&] { k::serial::product(a, b, out); }),
      best_of(5, [&] { k::parallel::product(a, b, out); }), 0.0);

  gevreyflow::PropertySuiteOptions opt;
  opt.samples = 200000;
  std::vector<gevreyflow::PropertyResult> rs, rp;
  const double t_suite_s = best_of(1, [&] { rs = gevreyflow::serial::run_property_suite(opt); });
  const double t_suite_p = best_of(1, [&] { rp = gevreyflow::parallel::run_property_suite(opt); });
  row("property_suite (2e5 x 4)", t_suite_s, t_suite_p, rs == rp ? 0.0 : 1.0);
  return 0;
}
