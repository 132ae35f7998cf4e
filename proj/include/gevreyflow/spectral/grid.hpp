#pragma once

#include <memory>
#include <span>
#include <vector>

namespace gevreyflow {

/// Uniform periodic grid on [0, L) with N nodes.
///
/// Spectral arrays use FFT storage order: index j holds wavenumber k = j for
/// j < N/2 and k = j - N otherwise, so index N/2 is the Nyquist mode
/// k = -N/2. Frequencies are xi_k = 2 pi k / L.
class Grid {
 public:
  /// Throws ConfigError unless L > 0 and N is even with N >= 16.
  static Grid make(double length, int modes);

  double length() const noexcept { return length_; }
  int modes() const noexcept { return modes_; }
  double spacing() const noexcept { return length_ / modes_; }
  double node(int j) const noexcept { return j * spacing(); }

  /// Signed wavenumber k stored at FFT index j.
  int wavenumber(int index) const noexcept {
    return index < modes_ / 2 ? index : index - modes_;
  }
  /// FFT index of wavenumber k, for -N/2 <= k < N/2.
  int index_of(int k) const noexcept { return k >= 0 ? k : k + modes_; }

  double frequency(int index) const noexcept { return (*frequencies_)[static_cast<std::size_t>(index)]; }
  std::span<const double> frequencies() const noexcept { return *frequencies_; }
  std::vector<double> nodes() const;

  /// pi N / L, the magnitude of the Nyquist frequency.
  double max_frequency() const noexcept;
  /// Highest wavenumber kept by dealiasing.
  int retained_wavenumber() const noexcept { return modes_ / 4; }

  /// Same length, `factor` times the nodes. Used for zero-padded quadrature.
  Grid refined(int factor) const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.length_ == b.length_ && a.modes_ == b.modes_;
  }

 private:
  Grid(double length, int modes);

  double length_;
  int modes_;
  std::shared_ptr<const std::vector<double>> frequencies_;
};

}  // namespace gevreyflow
