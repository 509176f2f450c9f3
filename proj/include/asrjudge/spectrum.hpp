#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "asrjudge/audio.hpp"

namespace asrjudge {

enum class Window { Hann, Rectangular };

/// Symmetric window of length n (Hann: 0.5 - 0.5 cos(2 pi i / (n - 1))).
std::vector<double> make_window(Window window, std::size_t n);

struct StftParams {
  std::size_t nfft = 256;
  std::size_t hop = 128;
  Window window = Window::Hann;
};

/// Windowed DFT coefficients of full-scale-normalised samples (x / 32768),
/// frame-major, bins 0..nfft/2.
struct StftFrames {
  std::size_t frame_count = 0;
  std::size_t bin_count = 0;
  std::size_t nfft = 0;
  std::size_t hop = 0;
  std::uint32_t sample_rate = 0;
  std::vector<std::complex<double>> values;

  std::complex<double> at(std::size_t frame, std::size_t bin) const { return values[frame * bin_count + bin]; }
};

/// Throws InvalidArgument unless nfft is a power of two >= 16,
/// 1 <= hop <= nfft and the signal holds at least nfft samples.
StftFrames stft(const MonoSignal& signal, const StftParams& params = {});

inline constexpr double kSilenceFloorDb = -120.0;

/// dBFS cells, frame-major. A full-scale sine centred on a bin reads 0 dB in
/// that bin.
struct SpectrogramGrid {
  std::size_t frame_count = 0;
  std::size_t bin_count = 0;
  std::uint32_t sample_rate = 0;
  std::size_t nfft = 0;
  std::size_t hop = 0;
  std::vector<double> values;

  double at(std::size_t frame, std::size_t bin) const { return values[frame * bin_count + bin]; }
  double bin_frequency(std::size_t bin) const;
  /// Centre of the frame in seconds.
  double frame_time(std::size_t frame) const;
};

SpectrogramGrid spectrogram(const MonoSignal& signal, const StftParams& params = {});

enum class FrequencyScale { Linear, Logarithmic };

std::string_view to_string(FrequencyScale s);

struct SpectrumPoint {
  double frequency_hz = 0;
  double magnitude_db = 0;
};

struct SpectrumCurve {
  std::vector<SpectrumPoint> bins;
  FrequencyScale scale = FrequencyScale::Linear;
};

struct AnalysisParams {
  std::size_t nfft = 2048;
  std::size_t hop = 1024;
  Window window = Window::Hann;
  double log_points_per_octave = 48;
  double log_start_hz = 20;
};

/// Mean power spectrum over all frames, in dBFS. A signal shorter than nfft
/// is zero-padded to one frame. The logarithmic view samples
/// log_start_hz * 2^(i / points_per_octave) up to Nyquist, interpolating
/// linearly in dB between bin centres. Throws InvalidArgument on an empty
/// signal.
SpectrumCurve frequency_analysis(const MonoSignal& signal, FrequencyScale scale, const AnalysisParams& params = {});

enum class ExportFormat { Csv, Pgm };

/// CSV: header `time_s,<bin frequencies>` then one row per frame.
/// PGM: binary P5, one column per frame, highest bin in the top row,
/// [floor, 0] dB mapped linearly onto [0, 255].
std::string export_grid(const SpectrogramGrid& grid, ExportFormat format);

/// CSV: `frequency_hz,magnitude_db` rows. PGM: a single row of pixels.
std::string export_curve(const SpectrumCurve& curve, ExportFormat format);

/// dB to 8-bit grey level, with the floor at 0 and 0 dB at 255.
std::uint8_t db_to_grey(double db);

}  // namespace asrjudge
