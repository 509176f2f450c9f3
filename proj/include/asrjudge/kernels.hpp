#pragma once

// Data-parallel inner loops. `serial` is the plain reference kept for tests
// and benchmarks; `parallel` is what the library calls.
//
// Parallel reductions sum fixed-size blocks and then combine the block sums
// in order, so their results do not depend on the thread count. They differ
// from the serial reference only by floating-point summation order.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "asrjudge/fft.hpp"
#include "asrjudge/mat2.hpp"

namespace asrjudge::kernels {

/// Samples per reduction block in the parallel kernels.
inline constexpr std::size_t kReductionBlock = 8192;

enum class Contrast { LogCosh, Cube };

/// Per-pass statistics of the FastICA fixed-point update, for each unmixing
/// row w_i and whitened sample z:
///   weighted.row(i) = mean(z * g(w_i . z)),  slope[i] = mean(g'(w_i . z)).
struct IcaStatistics {
  Mat2 weighted;
  std::array<double, 2> slope{};
};

/// Population covariance of two equally long rows.
struct Covariance2 {
  double xx = 0, xy = 0, yy = 0;
};

/// Frames of `nfft/2 + 1` bins each, frame-major.
struct FrameGrid {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<std::complex<double>> values;
};

// Both namespaces expose the same kernels:
//   add_saturating       out[i] = sat(a[i] + b[i]); the shorter input reads as
//                        zeros, out.size() == max(a.size(), b.size())
//   subtract_saturating  out[i] = sat(a[i] - b[i]); equal lengths
//   negate_saturating    out[i] = sat(-a[i])
//   average_truncating   out[i] = (a[i] + b[i]) / 2, rounded toward zero
//   affine2              out_k[i] = m.row(k) . (x[i] - mean_x, y[i] - mean_y)
//   stft                 windowed DFT of frames every `hop` samples, bins 0..nfft/2
//   power_grid           |X_k|^2 of the same frames, frame-major
//   mean_power           mean over those frames of |X_k|^2

namespace serial {
void add_saturating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out);
void subtract_saturating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out);
void negate_saturating(std::span<const std::int16_t> a, std::span<std::int16_t> out);
void average_truncating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out);
double mean(std::span<const double> x);
Covariance2 covariance(std::span<const double> x, std::span<const double> y, double mean_x, double mean_y);
void affine2(std::span<const double> x, std::span<const double> y, const Mat2& m, double mean_x, double mean_y,
             std::span<double> out0, std::span<double> out1);
IcaStatistics ica_statistics(std::span<const double> z0, std::span<const double> z1, const Mat2& w, Contrast contrast);
FrameGrid stft(std::span<const double> signal, const FftPlan& plan, std::span<const double> window, std::size_t hop);
std::vector<double> power_grid(std::span<const double> signal, const FftPlan& plan, std::span<const double> window,
                               std::size_t hop);
std::vector<double> mean_power(std::span<const double> signal, const FftPlan& plan, std::span<const double> window,
                               std::size_t hop);
}  // namespace serial

namespace parallel {
void add_saturating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out);
void subtract_saturating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out);
void negate_saturating(std::span<const std::int16_t> a, std::span<std::int16_t> out);
void average_truncating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out);
double mean(std::span<const double> x);
Covariance2 covariance(std::span<const double> x, std::span<const double> y, double mean_x, double mean_y);
void affine2(std::span<const double> x, std::span<const double> y, const Mat2& m, double mean_x, double mean_y,
             std::span<double> out0, std::span<double> out1);
IcaStatistics ica_statistics(std::span<const double> z0, std::span<const double> z1, const Mat2& w, Contrast contrast);
FrameGrid stft(std::span<const double> signal, const FftPlan& plan, std::span<const double> window, std::size_t hop);
std::vector<double> power_grid(std::span<const double> signal, const FftPlan& plan, std::span<const double> window,
                               std::size_t hop);
std::vector<double> mean_power(std::span<const double> signal, const FftPlan& plan, std::span<const double> window,
                               std::size_t hop);
}  // namespace parallel

/// 1 + floor((length - nfft) / hop), or 0 when length < nfft.
std::size_t frame_count(std::size_t length, std::size_t nfft, std::size_t hop) noexcept;

}  // namespace asrjudge::kernels
