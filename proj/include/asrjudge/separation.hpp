#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asrjudge/audio.hpp"
#include "asrjudge/kernels.hpp"
#include "asrjudge/mat2.hpp"

namespace asrjudge {

enum class SeparationMethod { CenterCancel, FastIca };

std::string_view to_string(SeparationMethod m);

/// Whitening and unmixing learned from a stereo pair. Sources are recovered as
/// unmixing * whitening * (x - means).
struct MixingEstimate {
  Mat2 unmixing = Mat2::identity();  // rows orthonormal in whitened space
  Mat2 whitening = Mat2::identity();
  std::array<double, 2> means{};
};

struct SeparationDiagnostics {
  std::size_t iterations = 0;
  bool converged = true;
  double component_correlation = 0.0;  // Pearson correlation of the two outputs
  std::string note;
};

struct SeparationResult {
  MonoSignal vocals_est;
  MonoSignal instrumental_est;
  SeparationMethod method = SeparationMethod::CenterCancel;
  SeparationDiagnostics diagnostics;
  std::optional<MixingEstimate> mixing;  // FastICA only
};

/// Mid/side split of a stereo mix. instrumental_est is the side signal
/// sat(L - R), where centre-panned content cancels. vocals_est cancels that
/// side signal out of the original again, at half gain per channel:
/// L - (L - R)/2 == R + (L - R)/2 == (L + R)/2. Throws InvalidArgument on mono.
SeparationResult cancel_center(const AudioBuffer& audio);

struct Whitened {
  std::array<std::vector<double>, 2> rows;
  Mat2 whitening;
  std::array<double, 2> means{};
};

/// Zero mean, unit variance, zero cross-covariance, via the eigenvectors of
/// the 2x2 covariance (whitening = D^-1/2 E^T). Throws InvalidArgument when
/// fewer than two samples or lengths differ, DegenerateInput for a constant
/// row or a rank-deficient covariance.
Whitened whiten(std::span<const double> x0, std::span<const double> x1);

enum class RescaleMode {
  NormalizePeak,  // peak |sample| = 0.891 * 32767 (about -1 dBFS)
  FixedGain,      // value * 32767 * 100, truncated and saturated
};

struct FastIcaOptions {
  std::size_t max_iter = 200;
  double tol = 1e-4;
  std::uint64_t seed = 0;
  kernels::Contrast contrast = kernels::Contrast::LogCosh;
  RescaleMode rescale = RescaleMode::NormalizePeak;
};

struct IcaComponents {
  std::array<std::vector<double>, 2> components;  // unit variance each
  MixingEstimate mixing;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Symmetric fixed-point FastICA with two components on raw rows.
/// Deterministic for a given input and seed.
IcaComponents fastica_components(std::span<const double> x0, std::span<const double> x1, const FastIcaOptions& options);

/// Two-component FastICA on the stereo channels. Component order and sign
/// carry no meaning; vocals_est is component 1 and instrumental_est
/// component 2. Not converging is reported in diagnostics, not thrown.
SeparationResult fastica2(const AudioBuffer& audio, const FastIcaOptions& options = {});

/// Converts a real-valued component to PCM16. An all-zero component is
/// returned as silence.
MonoSignal rescale_component(std::span<const double> component, RescaleMode mode, std::uint32_t sample_rate);

/// Pearson correlation; 0 when either side has zero variance.
double correlation(std::span<const double> a, std::span<const double> b);
double correlation(std::span<const std::int16_t> a, std::span<const std::int16_t> b);

}  // namespace asrjudge
