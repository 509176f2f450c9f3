#pragma once

// Per-element helpers shared by the serial and parallel kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>

#include "asrjudge/fft.hpp"
#include "asrjudge/kernels.hpp"

namespace asrjudge::kernels::detail {

inline std::int16_t saturate(std::int32_t v) {
  return static_cast<std::int16_t>(std::clamp<std::int32_t>(v, INT16_MIN, INT16_MAX));
}

inline std::int16_t average(std::int16_t a, std::int16_t b) {
  return static_cast<std::int16_t>((static_cast<std::int32_t>(a) + b) / 2);  // C++ division truncates
}

struct ContrastValue {
  double g;
  double dg;
};

inline ContrastValue contrast(double u, Contrast c) {
  if (c == Contrast::Cube) return {u * u * u, 3.0 * u * u};
  const double t = std::tanh(u);
  return {t, 1.0 - t * t};
}

/// Raw (unnormalized) sums for one sample, accumulated into `acc`:
/// acc[0..1] += z * g(w0.z), acc[2..3] += z * g(w1.z), acc[4..5] += g'(w_i.z)
inline void accumulate_ica(double z0, double z1, const Mat2& w, Contrast c, double* acc) {
  const ContrastValue v0 = contrast(w.a00 * z0 + w.a01 * z1, c);
  const ContrastValue v1 = contrast(w.a10 * z0 + w.a11 * z1, c);
  acc[0] += z0 * v0.g;
  acc[1] += z1 * v0.g;
  acc[2] += z0 * v1.g;
  acc[3] += z1 * v1.g;
  acc[4] += v0.dg;
  acc[5] += v1.dg;
}

inline IcaStatistics finish_ica(const double* acc, std::size_t n) {
  const double inv = 1.0 / static_cast<double>(n);
  IcaStatistics s;
  s.weighted = {acc[0] * inv, acc[1] * inv, acc[2] * inv, acc[3] * inv};
  s.slope = {acc[4] * inv, acc[5] * inv};
  return s;
}

/// Windowed transform of one frame into `scratch` (size nfft).
inline void transform_frame(std::span<const double> signal, std::size_t offset, const FftPlan& plan,
                            std::span<const double> window, std::span<std::complex<double>> scratch) {
  for (std::size_t i = 0; i < scratch.size(); ++i) scratch[i] = {signal[offset + i] * window[i], 0.0};
  plan.transform(scratch);
}

}  // namespace asrjudge::kernels::detail
