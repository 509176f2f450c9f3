#include <array>
#include <vector>

#include <omp.h>

#include "asrjudge/kernels.hpp"
#include "scalar.hpp"

namespace asrjudge::kernels::parallel {

namespace {

using Index = std::ptrdiff_t;

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

/// Runs `body(begin, end, partial)` over fixed blocks, each with its own
/// zeroed partial of width W, then sums partials in block order.
template <std::size_t W, typename Body>
std::array<double, W> blocked_reduce(std::size_t n, Body body) {
  const std::size_t blocks = block_count(n);
  std::vector<std::array<double, W>> partials(blocks, std::array<double, W>{});
#pragma omp parallel for schedule(static)
  for (Index b = 0; b < static_cast<Index>(blocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = std::min(n, begin + kReductionBlock);
    body(begin, end, partials[static_cast<std::size_t>(b)].data());
  }
  std::array<double, W> total{};
  for (const auto& p : partials)
    for (std::size_t k = 0; k < W; ++k) total[k] += p[k];
  return total;
}

}  // namespace

void add_saturating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out) {
  const Index n = static_cast<Index>(out.size());
  const Index na = static_cast<Index>(a.size());
  const Index nb = static_cast<Index>(b.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const std::int32_t x = i < na ? a[static_cast<std::size_t>(i)] : 0;
    const std::int32_t y = i < nb ? b[static_cast<std::size_t>(i)] : 0;
    out[static_cast<std::size_t>(i)] = detail::saturate(x + y);
  }
}

void subtract_saturating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out) {
  const Index n = static_cast<Index>(out.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = detail::saturate(std::int32_t{a[k]} - b[k]);
  }
}

void negate_saturating(std::span<const std::int16_t> a, std::span<std::int16_t> out) {
  const Index n = static_cast<Index>(out.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = detail::saturate(-std::int32_t{a[k]});
  }
}

void average_truncating(std::span<const std::int16_t> a, std::span<const std::int16_t> b, std::span<std::int16_t> out) {
  const Index n = static_cast<Index>(out.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = detail::average(a[k], b[k]);
  }
}

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const auto sum = blocked_reduce<1>(x.size(), [&](std::size_t begin, std::size_t end, double* acc) {
    for (std::size_t i = begin; i < end; ++i) acc[0] += x[i];
  });
  return sum[0] / static_cast<double>(x.size());
}

Covariance2 covariance(std::span<const double> x, std::span<const double> y, double mean_x, double mean_y) {
  if (x.empty()) return {};
  const auto s = blocked_reduce<3>(x.size(), [&](std::size_t begin, std::size_t end, double* acc) {
    for (std::size_t i = begin; i < end; ++i) {
      const double dx = x[i] - mean_x;
      const double dy = y[i] - mean_y;
      acc[0] += dx * dx;
      acc[1] += dx * dy;
      acc[2] += dy * dy;
    }
  });
  const double inv = 1.0 / static_cast<double>(x.size());
  return {s[0] * inv, s[1] * inv, s[2] * inv};
}

void affine2(std::span<const double> x, std::span<const double> y, const Mat2& m, double mean_x, double mean_y,
             std::span<double> out0, std::span<double> out1) {
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double dx = x[k] - mean_x;
    const double dy = y[k] - mean_y;
    out0[k] = m.a00 * dx + m.a01 * dy;
    out1[k] = m.a10 * dx + m.a11 * dy;
  }
}

IcaStatistics ica_statistics(std::span<const double> z0, std::span<const double> z1, const Mat2& w, Contrast contrast) {
  const auto acc = blocked_reduce<6>(z0.size(), [&](std::size_t begin, std::size_t end, double* a) {
    for (std::size_t i = begin; i < end; ++i) detail::accumulate_ica(z0[i], z1[i], w, contrast, a);
  });
  return detail::finish_ica(acc.data(), z0.size());
}

FrameGrid stft(std::span<const double> signal, const FftPlan& plan, std::span<const double> window, std::size_t hop) {
  const std::size_t nfft = plan.size();
  FrameGrid grid;
  grid.frames = frame_count(signal.size(), nfft, hop);
  grid.bins = nfft / 2 + 1;
  grid.values.resize(grid.frames * grid.bins);
#pragma omp parallel
  {
    std::vector<std::complex<double>> scratch(nfft);
#pragma omp for schedule(static)
    for (Index f = 0; f < static_cast<Index>(grid.frames); ++f) {
      const auto frame = static_cast<std::size_t>(f);
      detail::transform_frame(signal, frame * hop, plan, window, scratch);
      std::copy_n(scratch.begin(), grid.bins, grid.values.begin() + static_cast<Index>(frame * grid.bins));
    }
  }
  return grid;
}

std::vector<double> power_grid(std::span<const double> signal, const FftPlan& plan, std::span<const double> window,
                               std::size_t hop) {
  const std::size_t nfft = plan.size();
  const std::size_t frames = frame_count(signal.size(), nfft, hop);
  const std::size_t bins = nfft / 2 + 1;
  std::vector<double> out(frames * bins);
#pragma omp parallel
  {
    std::vector<std::complex<double>> scratch(nfft);
#pragma omp for schedule(static)
    for (Index f = 0; f < static_cast<Index>(frames); ++f) {
      const auto frame = static_cast<std::size_t>(f);
      detail::transform_frame(signal, frame * hop, plan, window, scratch);
      for (std::size_t k = 0; k < bins; ++k) out[frame * bins + k] = std::norm(scratch[k]);
    }
  }
  return out;
}

std::vector<double> mean_power(std::span<const double> signal, const FftPlan& plan, std::span<const double> window,
                               std::size_t hop) {
  // Frames are transformed concurrently a chunk at a time and accumulated in
  // frame order, which reproduces the serial kernel bit for bit.
  constexpr std::size_t kChunkFrames = 256;
  const std::size_t nfft = plan.size();
  const std::size_t frames = frame_count(signal.size(), nfft, hop);
  const std::size_t bins = nfft / 2 + 1;
  std::vector<double> power(bins, 0.0);
  std::vector<double> chunk(kChunkFrames * bins);
  for (std::size_t first = 0; first < frames; first += kChunkFrames) {
    const std::size_t count = std::min(kChunkFrames, frames - first);
#pragma omp parallel
    {
      std::vector<std::complex<double>> scratch(nfft);
#pragma omp for schedule(static)
      for (Index c = 0; c < static_cast<Index>(count); ++c) {
        const auto local = static_cast<std::size_t>(c);
        detail::transform_frame(signal, (first + local) * hop, plan, window, scratch);
        for (std::size_t k = 0; k < bins; ++k) chunk[local * bins + k] = std::norm(scratch[k]);
      }
    }
    for (std::size_t c = 0; c < count; ++c)
      for (std::size_t k = 0; k < bins; ++k) power[k] += chunk[c * bins + k];
  }
  if (frames > 0) {
    for (auto& p : power) p /= static_cast<double>(frames);
  }
  return power;
}

}  // namespace asrjudge::kernels::parallel
