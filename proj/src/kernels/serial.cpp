#include <vector>

#include "asrjudge/error.hpp"
#include "asrjudge/kernels.hpp"
#include "scalar.hpp"

namespace asrjudge::kernels {

std::size_t frame_count(std::size_t length, std::size_t nfft, std::size_t hop) noexcept {
  if (length < nfft || hop == 0) return 0;
  return 1 + (length - nfft) / hop;
}

namespace serial {

void add_saturating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::int32_t x = i < a.size() ? a[i] : 0;
    const std::int32_t y = i < b.size() ? b[i] : 0;
    out[i] = detail::saturate(x + y);
  }
}

void subtract_saturating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::saturate(std::int32_t{a[i]} - b[i]);
}

void negate_saturating(std::span<const std::int16_t> a, std::span<std::int16_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::saturate(-std::int32_t{a[i]});
}

void average_truncating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::average(a[i], b[i]);
}

double mean(std::span<const double> x) {
  double sum = 0;
  for (const double v : x) sum += v;
  return x.empty() ? 0.0 : sum / static_cast<double>(x.size());
}

Covariance2 covariance(std::span<const double> x, std::span<const double> y, double mean_x, double mean_y) {
  Covariance2 c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    c.xx += dx * dx;
    c.xy += dx * dy;
    c.yy += dy * dy;
  }
  const double inv = x.empty() ? 0.0 : 1.0 / static_cast<double>(x.size());
  return {c.xx * inv, c.xy * inv, c.yy * inv};
}

void affine2(std::span<const double> x, std::span<const double> y, const Mat2& m, double mean_x, double mean_y,
             std::span<double> out0, std::span<double> out1) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    out0[i] = m.a00 * dx + m.a01 * dy;
    out1[i] = m.a10 * dx + m.a11 * dy;
  }
}

IcaStatistics ica_statistics(std::span<const double> z0, std::span<const double> z1, const Mat2& w, Contrast contrast) {
  double acc[6] = {};
  for (std::size_t i = 0; i < z0.size(); ++i) detail::accumulate_ica(z0[i], z1[i], w, contrast, acc);
  return detail::finish_ica(acc, z0.size());
}

FrameGrid stft(std::span<const double> signal, const FftPlan& plan, std::span<const double> window, std::size_t hop) {
  const std::size_t nfft = plan.size();
  FrameGrid grid;
  grid.frames = frame_count(signal.size(), nfft, hop);
  grid.bins = nfft / 2 + 1;
  grid.values.resize(grid.frames * grid.bins);
  std::vector<std::complex<double>> scratch(nfft);
  for (std::size_t f = 0; f < grid.frames; ++f) {
    detail::transform_frame(signal, f * hop, plan, window, scratch);
    std::copy_n(scratch.begin(), grid.bins, grid.values.begin() + static_cast<std::ptrdiff_t>(f * grid.bins));
  }
  return grid;
}

std::vector<double> power_grid(std::span<const double> signal, const FftPlan& plan, std::span<const double> window,
                               std::size_t hop) {
  const std::size_t nfft = plan.size();
  const std::size_t frames = frame_count(signal.size(), nfft, hop);
  const std::size_t bins = nfft / 2 + 1;
  std::vector<double> out(frames * bins);
  std::vector<std::complex<double>> scratch(nfft);
  for (std::size_t f = 0; f < frames; ++f) {
    detail::transform_frame(signal, f * hop, plan, window, scratch);
    for (std::size_t k = 0; k < bins; ++k) out[f * bins + k] = std::norm(scratch[k]);
  }
  return out;
}

std::vector<double> mean_power(std::span<const double> signal, const FftPlan& plan, std::span<const double> window,
                               std::size_t hop) {
  const std::size_t nfft = plan.size();
  const std::size_t frames = frame_count(signal.size(), nfft, hop);
  std::vector<double> power(nfft / 2 + 1, 0.0);
  std::vector<std::complex<double>> scratch(nfft);
  for (std::size_t f = 0; f < frames; ++f) {
    detail::transform_frame(signal, f * hop, plan, window, scratch);
    for (std::size_t k = 0; k < power.size(); ++k) power[k] += std::norm(scratch[k]);
  }
  if (frames > 0) {
    for (auto& p : power) p /= static_cast<double>(frames);
  }
  return power;
}

}  // namespace serial
}  // namespace asrjudge::kernels
