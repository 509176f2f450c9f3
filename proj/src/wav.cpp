#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "asrjudge/audio.hpp"
#include "asrjudge/error.hpp"

namespace asrjudge {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t le16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

std::uint32_t le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) { out.insert(out.end(), tag, tag + 4); }

struct Format {
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

}  // namespace

AudioBuffer read_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("not a RIFF/WAVE file");
  }
  std::optional<Format> fmt;
  std::optional<std::span<const std::uint8_t>> data;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* header = bytes.data() + pos;
    const std::uint32_t size = le32(header + 4);
    const std::size_t body = pos + 8;
    const bool is_data = std::memcmp(header, "data", 4) == 0;
    if (body + size > bytes.size()) {
      if (is_data) throw FormatError("truncated data chunk: header declares " + std::to_string(size) + " bytes, " +
                                     std::to_string(bytes.size() - body) + " present");
      throw FormatError("truncated chunk '" + std::string(reinterpret_cast<const char*>(header), 4) + "'");
    }
    if (std::memcmp(header, "fmt ", 4) == 0) {
      if (size < 16) throw FormatError("fmt chunk too short");
      const std::uint8_t* f = bytes.data() + body;
      std::uint16_t code = le16(f);
      if (code == kFormatExtensible) {
        // Sub-format GUID starts 24 bytes in; its first two bytes carry the format code.
        if (size < 40) throw FormatError("extensible fmt chunk too short");
        code = le16(f + 24);
      }
      if (code != kFormatPcm) throw FormatError("unsupported WAV format code " + std::to_string(code) + " (only PCM)");
      fmt = Format{le16(f + 2), le32(f + 4), le16(f + 14)};
    } else if (is_data) {
      data = bytes.subspan(body, size);
    }
    pos = body + size + (size & 1u);  // chunks are word aligned
  }
  if (!fmt) throw FormatError("missing fmt chunk");
  if (!data) throw FormatError("missing data chunk");
  if (fmt->bits != 16) throw FormatError("unsupported bit depth " + std::to_string(fmt->bits) + " (only 16-bit PCM)");
  if (fmt->channels != 1 && fmt->channels != 2) {
    throw FormatError("unsupported channel count " + std::to_string(fmt->channels) + " (mono or stereo only)");
  }
  if (fmt->sample_rate == 0) throw FormatError("sample rate is zero");
  const std::size_t block = 2u * fmt->channels;
  if (data->size() % block != 0) throw FormatError("data chunk is not a whole number of frames");

  const std::size_t frames = data->size() / block;
  std::vector<std::vector<std::int16_t>> channels(fmt->channels, std::vector<std::int16_t>(frames));
  const std::uint8_t* p = data->data();
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t c = 0; c < fmt->channels; ++c, p += 2) channels[c][i] = static_cast<std::int16_t>(le16(p));
  }
  return AudioBuffer(fmt->sample_rate, std::move(channels));
}

std::vector<std::uint8_t> write_wav(const AudioBuffer& audio) {
  const auto channels = static_cast<std::uint16_t>(audio.channel_count());
  const std::uint16_t block_align = static_cast<std::uint16_t>(2u * channels);
  const auto data_bytes = static_cast<std::uint32_t>(audio.frames() * block_align);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, channels);
  put32(out, audio.sample_rate());
  put32(out, audio.sample_rate() * block_align);
  put16(out, block_align);
  put16(out, 16);
  put_tag(out, "data");
  put32(out, data_bytes);
  for (std::size_t i = 0; i < audio.frames(); ++i) {
    for (std::size_t c = 0; c < channels; ++c) put16(out, static_cast<std::uint16_t>(audio.channel(c)[i]));
  }
  return out;
}

AudioBuffer load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_wav(bytes);
}

void save_wav(const std::filesystem::path& path, const AudioBuffer& audio) {
  const auto bytes = write_wav(audio);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace asrjudge
