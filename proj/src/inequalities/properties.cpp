#include "gevreyflow/inequalities/properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "gevreyflow/error.hpp"
#include "gevreyflow/inequalities/checks.hpp"

namespace gevreyflow {

namespace {

constexpr std::uint64_t kChunks = 64;
constexpr int kInequalities = 4;
const std::array<const char*, kInequalities> kNames = {"sinh", "cosh_minus_one", "equivalence", "triple_cosh"};

struct Sampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  double uniform() { return unit(rng); }
  double magnitude() { return std::pow(10.0, -6.0 + 9.0 * uniform()); }
  double signed_magnitude() { return uniform() < 0.5 ? -magnitude() : magnitude(); }
};

InequalityVerdict draw(int which, Sampler& s, double K) {
  switch (which) {
    case 0: {
      const double r = s.signed_magnitude();
      return check_sinh(r, s.uniform());
    }
    case 1: {
      const double sigma = s.magnitude();
      const double xi = s.signed_magnitude();
      return check_cosh_minus_one(sigma, xi, s.uniform());
    }
    case 2: {
      const double sigma = s.magnitude();
      return check_equivalence(sigma, s.signed_magnitude());
    }
    default: {
      const double sigma = s.magnitude();
      const double x1 = s.signed_magnitude();
      const double x2 = s.signed_magnitude();
      const double x3 = s.signed_magnitude();
      const double t1 = s.uniform();
      return check_triple_cosh(sigma, x1, x2, x3, t1, s.uniform(), K);
    }
  }
}

PropertyResult run_chunk(int which, std::uint64_t chunk, const PropertySuiteOptions& o) {
  const std::uint64_t base = o.samples / kChunks;
  const std::uint64_t count = base + (chunk < o.samples % kChunks ? 1 : 0);
  Sampler s{std::mt19937_64(o.seed + static_cast<std::uint64_t>(which) * kChunks + chunk)};
  PropertyResult r;
  r.name = kNames[static_cast<std::size_t>(which)];
  r.worst_relative_margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto v = draw(which, s, o.triple_cosh_K);
    ++r.samples;
    if (!v.holds) ++r.violations;
    const double rel = v.margin / std::max(1.0, std::abs(v.rhs));
    if (rel < r.worst_relative_margin) {
      r.worst_relative_margin = rel;
      r.worst_witness = v.witness;
    }
  }
  return r;
}

PropertyResult merge(const std::vector<PropertyResult>& parts) {
  PropertyResult out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    out.samples += parts[i].samples;
    out.violations += parts[i].violations;
    if (parts[i].worst_relative_margin < out.worst_relative_margin) {
      out.worst_relative_margin = parts[i].worst_relative_margin;
      out.worst_witness = parts[i].worst_witness;
    }
  }
  return out;
}

void check_options(const PropertySuiteOptions& o) {
  if (o.samples == 0) throw ConfigError("property suite needs at least one sample");
  if (!(o.triple_cosh_K > 0.0)) throw ConfigError("triple-cosh constant must be > 0");
}

}  // namespace

namespace serial {
std::vector<PropertyResult> run_property_suite(const PropertySuiteOptions& options) {
  check_options(options);
  std::vector<PropertyResult> out;
  for (int w = 0; w < kInequalities; ++w) {
    std::vector<PropertyResult> parts;
    for (std::uint64_t c = 0; c < kChunks; ++c) parts.push_back(run_chunk(w, c, options));
    out.push_back(merge(parts));
  }
  return out;
}
}  // namespace serial

namespace parallel {
std::vector<PropertyResult> run_property_suite(const PropertySuiteOptions& options) {
  check_options(options);
  constexpr auto total = static_cast<long>(kInequalities * kChunks);
  std::vector<PropertyResult> parts(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < total; ++i) {
    parts[static_cast<std::size_t>(i)] =
        run_chunk(static_cast<int>(i / static_cast<long>(kChunks)), static_cast<std::uint64_t>(i) % kChunks, options);
  }
  std::vector<PropertyResult> out;
  for (int w = 0; w < kInequalities; ++w) {
    const auto first = parts.begin() + w * static_cast<long>(kChunks);
    out.push_back(merge(std::vector<PropertyResult>(first, first + static_cast<long>(kChunks))));
  }
  return out;
}
}  // namespace parallel

LatticeScan scan_triple_cosh(double K, int points, double sigma_max, double xi_max, double theta1,
                             double theta2) {
  if (points < 2) throw ConfigError("lattice needs at least 2 points per axis");
  LatticeScan scan{points, sigma_max, xi_max, theta1, theta2, K, 0, 0, 0.0, 0.0};
  std::vector<double> xi(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) xi[static_cast<std::size_t>(i)] = -xi_max + 2.0 * xi_max * i / (points - 1);

  std::uint64_t evaluated = 0;
  std::uint64_t violations = 0;
  double sup = 0.0;
#pragma omp parallel for reduction(+ : evaluated, violations) reduction(max : sup) schedule(static)
  for (int is = 0; is < points; ++is) {
    const double sigma = sigma_max * is / (points - 1);
    for (int a = 0; a < points; ++a) {
      for (int b = 0; b < points; ++b) {
        for (int c = 0; c < points; ++c) {
          const auto v = check_triple_cosh(sigma, xi[static_cast<std::size_t>(a)], xi[static_cast<std::size_t>(b)],
                                           xi[static_cast<std::size_t>(c)], theta1, theta2, K);
          ++evaluated;
          if (!v.holds) ++violations;
          const double denom = v.rhs / K;
          if (denom > 0.0) sup = std::max(sup, v.lhs / denom);
        }
      }
    }
  }
  scan.evaluated = evaluated;
  scan.violations = violations;
  scan.supremum = sup;
  scan.certified_K = violations == 0 ? K : 1.1 * sup;
  return scan;
}

}  // namespace gevreyflow
