#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace asrjudge {

/// Precomputed radix-2 transform of one size. `transform` is const and may
/// be called from several threads at once.
class FftPlan {
 public:
  /// Throws InvalidArgument unless `size` is a power of two >= 1.
  explicit FftPlan(std::size_t size);

  std::size_t size() const noexcept { return size_; }

  /// Forward DFT in place: X[k] = sum_n x[n] exp(-2 pi i k n / N).
  void transform(std::span<std::complex<double>> data) const;

 private:
  std::size_t size_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<std::complex<double>> twiddles_;  // exp(-2 pi i k / N), k < N/2
};

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace asrjudge
