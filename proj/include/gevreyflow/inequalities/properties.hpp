#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gevreyflow {

struct PropertyResult {
  std::string name;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  /// min over samples of margin / max(1, |rhs|)
  double worst_relative_margin = 0.0;
  std::vector<double> worst_witness;

  friend bool operator==(const PropertyResult&, const PropertyResult&) = default;
};

struct PropertySuiteOptions {
  std::uint64_t samples = 1'000'000;  // per inequality
  std::uint64_t seed = 1;
  double triple_cosh_K = 8.0;
};

/// Randomized runs of the four weight inequalities. Magnitudes are drawn
/// log-uniformly from [1e-6, 1e3] with random sign, exponents uniformly from
/// [0, 1]. Samples are split into a fixed number of chunks, each with its own
/// std::mt19937_64 seeded from (seed, inequality, chunk), and chunk results are
/// merged in order, so serial and parallel runs agree exactly.
namespace serial {
std::vector<PropertyResult> run_property_suite(const PropertySuiteOptions& options);
}
namespace parallel {
std::vector<PropertyResult> run_property_suite(const PropertySuiteOptions& options);
}

/// Brute-force scan of the triple-cosh bound over sigma in [0, sigma_max] and
/// xi_i in [-xi_max, xi_max] on `points` nodes per axis.
struct LatticeScan {
  int points = 50;
  double sigma_max = 2.0;
  double xi_max = 20.0;
  double theta1 = 1.0;
  double theta2 = 1.0;
  double K = 8.0;
  std::uint64_t evaluated = 0;
  std::uint64_t violations = 0;
  /// sup of lhs / (sigma^{t1+t2} xi_med^{t1} xi_max^{t2}) over points with a positive denominator
  double supremum = 0.0;
  /// K if no violation was found, otherwise 1.1 * supremum
  double certified_K = 0.0;
};

LatticeScan scan_triple_cosh(double K, int points = 50, double sigma_max = 2.0, double xi_max = 20.0,
                             double theta1 = 1.0, double theta2 = 1.0);

}  // namespace gevreyflow
