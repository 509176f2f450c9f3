#include "asrjudge/separation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "asrjudge/error.hpp"

namespace asrjudge {

std::string_view to_string(SeparationMethod m) {
  return m == SeparationMethod::CenterCancel ? "center" : "ica";
}

double correlation(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n == 0) return 0.0;
  a = a.first(n);
  b = b.first(n);
  const double ma = kernels::parallel::mean(a);
  const double mb = kernels::parallel::mean(b);
  const kernels::Covariance2 c = kernels::parallel::covariance(a, b, ma, mb);
  if (c.xx <= 0.0 || c.yy <= 0.0) return 0.0;
  return c.xy / std::sqrt(c.xx * c.yy);
}

double correlation(std::span<const std::int16_t> a, std::span<const std::int16_t> b) {
  const std::vector<double> x(a.begin(), a.end());
  const std::vector<double> y(b.begin(), b.end());
  return correlation(x, y);
}

SeparationResult cancel_center(const AudioBuffer& audio) {
  if (audio.channel_count() != 2) throw InvalidArgument("center cancellation needs stereo input");
  SeparationResult r;
  r.method = SeparationMethod::CenterCancel;
  r.instrumental_est = side_signal(audio);
  r.vocals_est = downmix(audio);
  r.diagnostics.iterations = 0;
  r.diagnostics.converged = true;
  r.diagnostics.component_correlation = correlation(r.vocals_est.samples, r.instrumental_est.samples);
  r.diagnostics.note = "instrumental = L - R (side); vocals = (L + R) / 2 (side cancelled at half gain)";
  return r;
}

Whitened whiten(std::span<const double> x0, std::span<const double> x1) {
  if (x0.size() != x1.size()) throw InvalidArgument("whiten: rows differ in length");
  if (x0.size() < 2) throw InvalidArgument("whiten: need at least two samples");
  Whitened w;
  w.means = {kernels::parallel::mean(x0), kernels::parallel::mean(x1)};
  const kernels::Covariance2 c = kernels::parallel::covariance(x0, x1, w.means[0], w.means[1]);
  if (!(c.xx > 0.0) || !(c.yy > 0.0)) throw DegenerateInput("whiten: a row is constant (zero variance)");
  const SymEigen2 e = eigen_symmetric(c.xx, c.xy, c.yy);
  // Relative cut-off: identical or exactly proportional channels leave only
  // rounding noise in the smaller eigenvalue.
  if (!(e.values[1] > 1e-10 * e.values[0])) throw DegenerateInput("whiten: covariance is rank-deficient (channels are linearly dependent)");
  const double s0 = 1.0 / std::sqrt(e.values[0]);
  const double s1 = 1.0 / std::sqrt(e.values[1]);
  // Rows of E^T scaled by D^-1/2.
  w.whitening = {e.vectors.a00 * s0, e.vectors.a10 * s0, e.vectors.a01 * s1, e.vectors.a11 * s1};
  w.rows[0].resize(x0.size());
  w.rows[1].resize(x0.size());
  kernels::parallel::affine2(x0, x1, w.whitening, w.means[0], w.means[1], w.rows[0], w.rows[1]);
  return w;
}

IcaComponents fastica_components(std::span<const double> x0, std::span<const double> x1, const FastIcaOptions& options) {
  if (options.max_iter == 0) throw InvalidArgument("fastica: max_iter must be positive");
  if (!(options.tol > 0.0)) throw InvalidArgument("fastica: tol must be positive");
  const Whitened white = whiten(x0, x1);
  const std::span<const double> z0 = white.rows[0];
  const std::span<const double> z1 = white.rows[1];

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat2 w{normal(rng), normal(rng), normal(rng), normal(rng)};
  w = symmetric_decorrelation(w);

  IcaComponents out;
  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    const kernels::IcaStatistics s = kernels::parallel::ica_statistics(z0, z1, w, options.contrast);
    Mat2 next{s.weighted.a00 - s.slope[0] * w.a00, s.weighted.a01 - s.slope[0] * w.a01,
              s.weighted.a10 - s.slope[1] * w.a10, s.weighted.a11 - s.slope[1] * w.a11};
    next = symmetric_decorrelation(next);
    const double change = std::max(std::abs(std::abs(next.a00 * w.a00 + next.a01 * w.a01) - 1.0),
                                   std::abs(std::abs(next.a10 * w.a10 + next.a11 * w.a11) - 1.0));
    w = next;
    out.iterations = iter;
    if (change < options.tol) {
      out.converged = true;
      break;
    }
  }

  out.mixing = MixingEstimate{w, white.whitening, white.means};
  for (auto& c : out.components) c.resize(z0.size());
  kernels::parallel::affine2(z0, z1, w, 0.0, 0.0, out.components[0], out.components[1]);
  return out;
}

MonoSignal rescale_component(std::span<const double> component, RescaleMode mode, std::uint32_t sample_rate) {
  MonoSignal out{sample_rate, std::vector<std::int16_t>(component.size(), 0)};
  for (const double v : component) {
    if (!std::isfinite(v)) throw InvalidArgument("rescale_component: non-finite sample");
  }
  if (mode == RescaleMode::FixedGain) {
    for (std::size_t i = 0; i < component.size(); ++i) {
      const double v = std::trunc(component[i] * 32767.0 * 100.0);
      out.samples[i] = static_cast<std::int16_t>(std::clamp(v, -32768.0, 32767.0));
    }
    return out;
  }
  double peak = 0.0;
  for (const double v : component) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return out;
  const double gain = 0.891 * 32767.0 / peak;
  for (std::size_t i = 0; i < component.size(); ++i) {
    out.samples[i] = static_cast<std::int16_t>(std::lround(component[i] * gain));
  }
  return out;
}

SeparationResult fastica2(const AudioBuffer& audio, const FastIcaOptions& options) {
  if (audio.channel_count() != 2) throw InvalidArgument("FastICA separation needs stereo input");
  const std::vector<double> left(audio.channel(0).begin(), audio.channel(0).end());
  const std::vector<double> right(audio.channel(1).begin(), audio.channel(1).end());
  if (left == right) throw DegenerateInput("FastICA: left and right channels are identical (rank-1 mixture)");

  IcaComponents ica = fastica_components(left, right, options);
  SeparationResult r;
  r.method = SeparationMethod::FastIca;
  r.vocals_est = rescale_component(ica.components[0], options.rescale, audio.sample_rate());
  r.instrumental_est = rescale_component(ica.components[1], options.rescale, audio.sample_rate());
  r.diagnostics.iterations = ica.iterations;
  r.diagnostics.converged = ica.converged;
  r.diagnostics.component_correlation = correlation(ica.components[0], ica.components[1]);
  r.diagnostics.note = "component order and sign are arbitrary: vocals = component 1, instrumental = component 2";
  r.mixing = ica.mixing;
  return r;
}

}  // namespace asrjudge
