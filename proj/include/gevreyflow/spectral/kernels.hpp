#pragma once

// Data-parallel inner loops shared by the spectral, dynamics and analytics
// code. Every kernel has a serial reference in kernels::serial and an OpenMP
// version in kernels::parallel; the unqualified entry points pick one by
// array length. Reductions in both versions are compensated (Neumaier) and
// the parallel ones combine a fixed number of chunks in index order, so their
// result does not depend on the thread count.

#include <complex>
#include <cstddef>
#include <span>

namespace gevreyflow::kernels {

using cplx = std::complex<double>;

/// Arrays shorter than this run the serial kernel.
inline constexpr std::size_t kParallelThreshold = 1u << 14;
/// Chunk count of parallel reductions.
inline constexpr std::size_t kReductionChunks = 64;

namespace serial {
void scale(std::span<cplx> values, std::span<const double> factors);
void scale(std::span<cplx> values, std::span<const cplx> factors);
void product(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// sum_i w_i |v_i|^2
double weighted_energy(std::span<const cplx> v, std::span<const double> w);
/// sum_i w_i Re(conj(a_i) b_i)
double weighted_inner(std::span<const cplx> a, std::span<const cplx> b, std::span<const double> w);
double sum(std::span<const double> values);
double max_abs(std::span<const double> values);
}  // namespace serial

namespace parallel {
void scale(std::span<cplx> values, std::span<const double> factors);
void scale(std::span<cplx> values, std::span<const cplx> factors);
void product(std::span<const double> a, std::span<const double> b, std::span<double> out);
double weighted_energy(std::span<const cplx> v, std::span<const double> w);
double weighted_inner(std::span<const cplx> a, std::span<const cplx> b, std::span<const double> w);
double sum(std::span<const double> values);
double max_abs(std::span<const double> values);
}  // namespace parallel

inline bool use_parallel(std::size_t n) noexcept { return n >= kParallelThreshold; }

inline void scale(std::span<cplx> v, std::span<const double> f) {
  use_parallel(v.size()) ? parallel::scale(v, f) : serial::scale(v, f);
}
inline void scale(std::span<cplx> v, std::span<const cplx> f) {
  use_parallel(v.size()) ? parallel::scale(v, f) : serial::scale(v, f);
}
inline void product(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  use_parallel(a.size()) ? parallel::product(a, b, out) : serial::product(a, b, out);
}
inline double weighted_energy(std::span<const cplx> v, std::span<const double> w) {
  return use_parallel(v.size()) ? parallel::weighted_energy(v, w) : serial::weighted_energy(v, w);
}
inline double weighted_inner(std::span<const cplx> a, std::span<const cplx> b,
                             std::span<const double> w) {
  return use_parallel(a.size()) ? parallel::weighted_inner(a, b, w)
                                : serial::weighted_inner(a, b, w);
}
inline double sum(std::span<const double> v) {
  return use_parallel(v.size()) ? parallel::sum(v) : serial::sum(v);
}
inline double max_abs(std::span<const double> v) {
  return use_parallel(v.size()) ? parallel::max_abs(v) : serial::max_abs(v);
}

/// Running compensated sum.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace gevreyflow::kernels
