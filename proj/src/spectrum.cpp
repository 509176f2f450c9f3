#include "asrjudge/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <span>

#include "asrjudge/error.hpp"
#include "asrjudge/fft.hpp"
#include "asrjudge/kernels.hpp"

namespace asrjudge {
namespace {

void validate(std::size_t nfft, std::size_t hop) {
  if (nfft < 16 || !is_power_of_two(nfft)) throw InvalidArgument("nfft must be a power of two >= 16");
  if (hop == 0 || hop > nfft) throw InvalidArgument("hop must be in 1..nfft");
}

std::vector<double> normalised(const MonoSignal& signal, std::size_t min_length = 0) {
  std::vector<double> x(std::max(signal.samples.size(), min_length), 0.0);
  std::transform(signal.samples.begin(), signal.samples.end(), x.begin(),
                 [](std::int16_t s) { return static_cast<double>(s) / 32768.0; });
  return x;
}

// Amplitude correction so a bin-centred sine of peak A reads A.
std::vector<double> power_scale(std::span<const double> window) {
  double sum = 0;
  for (const double w : window) sum += w;
  const std::size_t bins = window.size() / 2 + 1;
  std::vector<double> scale(bins, 4.0 / (sum * sum));
  scale.front() = 1.0 / (sum * sum);
  scale.back() = 1.0 / (sum * sum);
  return scale;
}

double to_db(double power) {
  if (!(power > 0.0)) return kSilenceFloorDb;
  return std::max(10.0 * std::log10(power), kSilenceFloorDb);
}

void append_fixed(std::string& out, double v) {
  char buf[64];
  // Avoid "-0.000" for values that round to zero.
  if (std::abs(v) < 0.0005) v = 0.0;
  const int n = std::snprintf(buf, sizeof buf, "%.3f", v);
  out.append(buf, static_cast<std::size_t>(n));
}

std::string pgm_header(std::size_t width, std::size_t height) {
  return "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
}

}  // namespace

std::vector<double> make_window(Window window, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (window == Window::Hann && n > 1) {
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
    }
  }
  return w;
}

StftFrames stft(const MonoSignal& signal, const StftParams& params) {
  validate(params.nfft, params.hop);
  if (signal.samples.size() < params.nfft) throw InvalidArgument("signal is shorter than nfft");
  const std::vector<double> x = normalised(signal);
  const FftPlan plan(params.nfft);
  const std::vector<double> window = make_window(params.window, params.nfft);
  kernels::FrameGrid g = kernels::parallel::stft(x, plan, window, params.hop);
  return StftFrames{g.frames, g.bins, params.nfft, params.hop, signal.sample_rate, std::move(g.values)};
}

double SpectrogramGrid::bin_frequency(std::size_t bin) const {
  return static_cast<double>(bin) * sample_rate / static_cast<double>(nfft);
}

double SpectrogramGrid::frame_time(std::size_t frame) const {
  return (static_cast<double>(frame * hop) + static_cast<double>(nfft) / 2.0) / sample_rate;
}

SpectrogramGrid spectrogram(const MonoSignal& signal, const StftParams& params) {
  validate(params.nfft, params.hop);
  if (signal.samples.size() < params.nfft) throw InvalidArgument("signal is shorter than nfft");
  if (signal.sample_rate == 0) throw InvalidArgument("sample rate must be positive");
  const std::vector<double> x = normalised(signal);
  const FftPlan plan(params.nfft);
  const std::vector<double> window = make_window(params.window, params.nfft);
  const std::vector<double> scale = power_scale(window);

  SpectrogramGrid grid;
  grid.frame_count = kernels::frame_count(x.size(), params.nfft, params.hop);
  grid.bin_count = params.nfft / 2 + 1;
  grid.sample_rate = signal.sample_rate;
  grid.nfft = params.nfft;
  grid.hop = params.hop;
  grid.values = kernels::parallel::power_grid(x, plan, window, params.hop);
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    grid.values[i] = to_db(grid.values[i] * scale[i % grid.bin_count]);
  }
  return grid;
}

std::string_view to_string(FrequencyScale s) { return s == FrequencyScale::Linear ? "linear" : "log"; }

SpectrumCurve frequency_analysis(const MonoSignal& signal, FrequencyScale scale, const AnalysisParams& params) {
  validate(params.nfft, params.hop);
  if (signal.samples.empty()) throw InvalidArgument("frequency analysis of an empty signal");
  if (signal.sample_rate == 0) throw InvalidArgument("sample rate must be positive");
  const std::vector<double> x = normalised(signal, params.nfft);
  const FftPlan plan(params.nfft);
  const std::vector<double> window = make_window(params.window, params.nfft);
  const std::vector<double> correction = power_scale(window);
  const std::vector<double> power = kernels::parallel::mean_power(x, plan, window, params.hop);

  const double bin_hz = static_cast<double>(signal.sample_rate) / static_cast<double>(params.nfft);
  std::vector<double> db(power.size());
  for (std::size_t k = 0; k < power.size(); ++k) db[k] = to_db(power[k] * correction[k]);

  SpectrumCurve curve;
  curve.scale = scale;
  if (scale == FrequencyScale::Linear) {
    curve.bins.reserve(db.size());
    for (std::size_t k = 0; k < db.size(); ++k) curve.bins.push_back({static_cast<double>(k) * bin_hz, db[k]});
    return curve;
  }

  if (!(params.log_points_per_octave > 0) || !(params.log_start_hz > 0)) {
    throw InvalidArgument("log view needs positive points per octave and start frequency");
  }
  const double nyquist = signal.sample_rate / 2.0;
  for (std::size_t i = 0;; ++i) {
    const double f = params.log_start_hz * std::exp2(static_cast<double>(i) / params.log_points_per_octave);
    if (f > nyquist) break;
    const double pos = f / bin_hz;
    const auto lo = std::min(static_cast<std::size_t>(pos), db.size() - 2);
    const double t = pos - static_cast<double>(lo);
    curve.bins.push_back({f, db[lo] + (db[lo + 1] - db[lo]) * t});
  }
  return curve;
}

std::uint8_t db_to_grey(double db) {
  const double v = std::clamp(db, kSilenceFloorDb, 0.0);
  return static_cast<std::uint8_t>(std::lround((v - kSilenceFloorDb) / -kSilenceFloorDb * 255.0));
}

std::string export_grid(const SpectrogramGrid& grid, ExportFormat format) {
  std::string out;
  if (format == ExportFormat::Csv) {
    out += "time_s";
    for (std::size_t k = 0; k < grid.bin_count; ++k) {
      out += ',';
      append_fixed(out, grid.bin_frequency(k));
    }
    out += '\n';
    for (std::size_t f = 0; f < grid.frame_count; ++f) {
      append_fixed(out, grid.frame_time(f));
      for (std::size_t k = 0; k < grid.bin_count; ++k) {
        out += ',';
        append_fixed(out, grid.at(f, k));
      }
      out += '\n';
    }
    return out;
  }
  out = pgm_header(grid.frame_count, grid.bin_count);
  out.reserve(out.size() + grid.frame_count * grid.bin_count);
  for (std::size_t row = 0; row < grid.bin_count; ++row) {
    const std::size_t bin = grid.bin_count - 1 - row;
    for (std::size_t f = 0; f < grid.frame_count; ++f) out += static_cast<char>(db_to_grey(grid.at(f, bin)));
  }
  return out;
}

std::string export_curve(const SpectrumCurve& curve, ExportFormat format) {
  std::string out;
  if (format == ExportFormat::Csv) {
    out += "frequency_hz,magnitude_db\n";
    for (const auto& p : curve.bins) {
      append_fixed(out, p.frequency_hz);
      out += ',';
      append_fixed(out, p.magnitude_db);
      out += '\n';
    }
    return out;
  }
  out = pgm_header(curve.bins.size(), 1);
  for (const auto& p : curve.bins) out += static_cast<char>(db_to_grey(p.magnitude_db));
  return out;
}

}  // namespace asrjudge
