#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace asrjudge {

/// One channel of 16-bit PCM.
struct MonoSignal {
  std::uint32_t sample_rate = 0;
  std::vector<std::int16_t> samples;

  friend bool operator==(const MonoSignal&, const MonoSignal&) = default;
};

/// PCM16 audio with one or two equally long channels.
class AudioBuffer {
 public:
  AudioBuffer() = default;

  /// Throws InvalidArgument on zero rate, a channel count other than 1 or 2,
  /// or channels of different lengths.
  AudioBuffer(std::uint32_t sample_rate, std::vector<std::vector<std::int16_t>> channels);

  static AudioBuffer mono(MonoSignal signal);
  static AudioBuffer stereo(MonoSignal left, MonoSignal right);

  std::uint32_t sample_rate() const noexcept { return sample_rate_; }
  std::size_t channel_count() const noexcept { return channels_.size(); }
  std::size_t frames() const noexcept { return channels_.empty() ? 0 : channels_.front().size(); }
  std::span<const std::int16_t> channel(std::size_t i) const { return channels_.at(i); }
  const std::vector<std::vector<std::int16_t>>& channels() const noexcept { return channels_; }

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;

 private:
  std::uint32_t sample_rate_ = 0;
  std::vector<std::vector<std::int16_t>> channels_;
};

/// RIFF/WAVE, PCM format 1 (or EXTENSIBLE with a PCM sub-format), 16-bit,
/// mono or stereo. Throws FormatError otherwise or on truncation.
AudioBuffer read_wav(std::span<const std::uint8_t> bytes);

/// Canonical 44-byte header followed by interleaved little-endian PCM16.
std::vector<std::uint8_t> write_wav(const AudioBuffer& audio);

AudioBuffer load_wav(const std::filesystem::path& path);
void save_wav(const std::filesystem::path& path, const AudioBuffer& audio);

/// (left, right). Throws InvalidArgument for mono input.
std::pair<MonoSignal, MonoSignal> split_channels(const AudioBuffer& audio);

/// Each sample negated; -32768 saturates to 32767.
MonoSignal invert_phase(const MonoSignal& signal);

/// Saturating sample-wise sum. The shorter signal is zero-padded.
/// Throws InvalidArgument on differing sample rates.
MonoSignal overlay(const MonoSignal& a, const MonoSignal& b);

/// (L + R) / 2, rounded toward zero. Throws InvalidArgument for mono input.
MonoSignal downmix(const AudioBuffer& audio);

/// Saturating L - R. Throws InvalidArgument for mono input.
MonoSignal side_signal(const AudioBuffer& audio);

}  // namespace asrjudge
