#include "asrjudge/audio.hpp"

#include <algorithm>
#include <string>

#include "asrjudge/error.hpp"
#include "asrjudge/kernels.hpp"

namespace asrjudge {

AudioBuffer::AudioBuffer(std::uint32_t sample_rate, std::vector<std::vector<std::int16_t>> channels)
    : sample_rate_(sample_rate), channels_(std::move(channels)) {
  if (sample_rate_ == 0) throw InvalidArgument("sample rate must be positive");
  if (channels_.size() != 1 && channels_.size() != 2) {
    throw InvalidArgument("audio must have 1 or 2 channels, got " + std::to_string(channels_.size()));
  }
  if (channels_.size() == 2 && channels_[0].size() != channels_[1].size()) {
    throw InvalidArgument("stereo channels differ in length");
  }
}

AudioBuffer AudioBuffer::mono(MonoSignal signal) {
  std::vector<std::vector<std::int16_t>> ch;
  ch.push_back(std::move(signal.samples));
  return AudioBuffer(signal.sample_rate, std::move(ch));
}

AudioBuffer AudioBuffer::stereo(MonoSignal left, MonoSignal right) {
  if (left.sample_rate != right.sample_rate) throw InvalidArgument("channels have different sample rates");
  std::vector<std::vector<std::int16_t>> ch;
  ch.push_back(std::move(left.samples));
  ch.push_back(std::move(right.samples));
  return AudioBuffer(left.sample_rate, std::move(ch));
}

namespace {

void require_stereo(const AudioBuffer& audio, const char* what) {
  if (audio.channel_count() != 2) throw InvalidArgument(std::string(what) + " needs stereo input");
}

}  // namespace

std::pair<MonoSignal, MonoSignal> split_channels(const AudioBuffer& audio) {
  require_stereo(audio, "split_channels");
  const auto& ch = audio.channels();
  return {MonoSignal{audio.sample_rate(), ch[0]}, MonoSignal{audio.sample_rate(), ch[1]}};
}

MonoSignal invert_phase(const MonoSignal& signal) {
  MonoSignal out{signal.sample_rate, std::vector<std::int16_t>(signal.samples.size())};
  kernels::parallel::negate_saturating(signal.samples, out.samples);
  return out;
}

MonoSignal overlay(const MonoSignal& a, const MonoSignal& b) {
  if (a.sample_rate != b.sample_rate) {
    throw InvalidArgument("overlay of signals at " + std::to_string(a.sample_rate) + " Hz and " +
                          std::to_string(b.sample_rate) + " Hz");
  }
  MonoSignal out{a.sample_rate, std::vector<std::int16_t>(std::max(a.samples.size(), b.samples.size()))};
  kernels::parallel::add_saturating(a.samples, b.samples, out.samples);
  return out;
}

MonoSignal downmix(const AudioBuffer& audio) {
  require_stereo(audio, "downmix");
  MonoSignal out{audio.sample_rate(), std::vector<std::int16_t>(audio.frames())};
  kernels::parallel::average_truncating(audio.channel(0), audio.channel(1), out.samples);
  return out;
}

MonoSignal side_signal(const AudioBuffer& audio) {
  require_stereo(audio, "side_signal");
  MonoSignal out{audio.sample_rate(), std::vector<std::int16_t>(audio.frames())};
  kernels::parallel::subtract_saturating(audio.channel(0), audio.channel(1), out.samples);
  return out;
}

}  // namespace asrjudge
