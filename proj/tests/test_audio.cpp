#include <cstring>
#include <filesystem>

#include "asrjudge/audio.hpp"
#include "asrjudge/error.hpp"
#include "audio_fixtures.hpp"
#include "oracles.hpp"

using namespace asrjudge;
using Samples = std::vector<std::int16_t>;

namespace {

std::uint32_t le32(const std::vector<std::uint8_t>& b, std::size_t at) {
  return b[at] | (b[at + 1] << 8) | (b[at + 2] << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}
std::uint16_t le16(const std::vector<std::uint8_t>& b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}
void put16(std::vector<std::uint8_t>& b, std::size_t at, std::uint16_t v) {
  b[at] = static_cast<std::uint8_t>(v);
  b[at + 1] = static_cast<std::uint8_t>(v >> 8);
}
void put32(std::vector<std::uint8_t>& b, std::size_t at, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

MonoSignal mono(Samples s, std::uint32_t rate = 8000) { return MonoSignal{rate, std::move(s)}; }

}  // namespace

TEST_SUITE("audio") {

TEST_CASE("canonical header for 44.1 kHz stereo") {
  const AudioBuffer a(44100, {Samples{1, 2, 3}, Samples{-1, -2, -3}});
  const auto bytes = write_wav(a);
  REQUIRE(bytes.size() == 44 + 12);
  CHECK(std::memcmp(bytes.data(), "RIFF", 4) == 0);
  CHECK(le32(bytes, 4) == 36 + 12);
  CHECK(std::memcmp(bytes.data() + 8, "WAVEfmt ", 8) == 0);
  CHECK(le32(bytes, 16) == 16);
  CHECK(le16(bytes, 20) == 1);
  CHECK(le16(bytes, 22) == 2);
  CHECK(le32(bytes, 24) == 44100);
  CHECK(le32(bytes, 28) == 176400);
  CHECK(le16(bytes, 32) == 4);
  CHECK(le16(bytes, 34) == 16);
  CHECK(std::memcmp(bytes.data() + 36, "data", 4) == 0);
  CHECK(le32(bytes, 40) == 12);
  // Interleaved little-endian frames.
  CHECK(le16(bytes, 44) == 1);
  CHECK(static_cast<std::int16_t>(le16(bytes, 46)) == -1);
}

TEST_CASE("read back what was written") {
  const AudioBuffer a(44100, {Samples{1, 2, 3, 4}, Samples{5, 6, 7, 8}});
  const AudioBuffer b = read_wav(write_wav(a));
  CHECK(b.sample_rate() == 44100);
  CHECK(b.channel_count() == 2);
  CHECK(b.frames() == 4);
  CHECK(b == a);
  const AudioBuffer empty(8000, {Samples{}});
  const auto bytes = write_wav(empty);
  CHECK(bytes.size() == 44);
  CHECK(le32(bytes, 40) == 0);
  CHECK(read_wav(bytes) == empty);
}

TEST_CASE("wav round-trip on random buffers") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 150; ++i) {
    const std::size_t frames = std::uniform_int_distribution<std::size_t>(0, 3000)(rng);
    const std::uint32_t rate = std::uniform_int_distribution<std::uint32_t>(1, 192000)(rng);
    std::vector<Samples> channels;
    const int count = 1 + i % 2;
    for (int c = 0; c < count; ++c) channels.push_back(synth::random_pcm(frames, rng));
    const AudioBuffer a(rate, channels);
    CHECK(read_wav(write_wav(a)) == a);
  }
}

TEST_CASE("reader rejects what it does not support") {
  const AudioBuffer a(8000, {Samples{1, 2}});
  auto bytes = write_wav(a);
  SUBCASE("8-bit") {
    put16(bytes, 34, 8);
    CHECK_THROWS_AS(read_wav(bytes), FormatError);
  }
  SUBCASE("float format") {
    put16(bytes, 20, 3);
    CHECK_THROWS_AS(read_wav(bytes), FormatError);
  }
  SUBCASE("three channels") {
    put16(bytes, 22, 3);
    CHECK_THROWS_AS(read_wav(bytes), FormatError);
  }
  SUBCASE("truncated data chunk") {
    bytes.pop_back();
    CHECK_THROWS_AS(read_wav(bytes), FormatError);
  }
  SUBCASE("not RIFF") {
    bytes[0] = 'X';
    CHECK_THROWS_AS(read_wav(bytes), FormatError);
  }
  SUBCASE("half a frame") {
    put32(bytes, 40, 3);
    bytes.pop_back();
    put32(bytes, 4, static_cast<std::uint32_t>(bytes.size() - 8));
    CHECK_THROWS_AS(read_wav(bytes), FormatError);
  }
}

TEST_CASE("reader skips unknown chunks") {
  const AudioBuffer a(8000, {Samples{7, -7, 9}});
  auto bytes = write_wav(a);
  // Odd-sized LIST chunk before data, padded to an even length.
  const std::vector<std::uint8_t> extra{'L', 'I', 'S', 'T', 3, 0, 0, 0, 'a', 'b', 'c', 0};
  bytes.insert(bytes.begin() + 36, extra.begin(), extra.end());
  put32(bytes, 4, static_cast<std::uint32_t>(bytes.size() - 8));
  CHECK(read_wav(bytes) == a);
}

TEST_CASE("file load and save") {
  const auto dir = std::filesystem::temp_directory_path() / "asrjudge_audio_test";
  std::filesystem::create_directories(dir);
  const AudioBuffer a(22050, {Samples{1, -1}, Samples{2, -2}});
  save_wav(dir / "x.wav", a);
  CHECK(load_wav(dir / "x.wav") == a);
  CHECK_THROWS_AS(load_wav(dir / "missing.wav"), IoError);
  CHECK_THROWS_AS(save_wav(dir / "no" / "such" / "dir.wav", a), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("buffer validation") {
  CHECK_THROWS_AS(AudioBuffer(0, {Samples{1}}), InvalidArgument);
  CHECK_THROWS_AS(AudioBuffer(8000, {}), InvalidArgument);
  CHECK_THROWS_AS(AudioBuffer(8000, {Samples{1}, Samples{1}, Samples{1}}), InvalidArgument);
  CHECK_THROWS_AS(AudioBuffer(8000, {Samples{1}, Samples{1, 2}}), InvalidArgument);
}

TEST_CASE("split channels") {
  const AudioBuffer a = AudioBuffer::stereo(mono({1, 2}), mono({3, 4}));
  const auto [l, r] = split_channels(a);
  CHECK(l.samples == Samples{1, 2});
  CHECK(r.samples == Samples{3, 4});
  const auto [l2, r2] = split_channels(AudioBuffer::stereo(mono({5, 6}), mono({5, 6})));
  CHECK(l2 == r2);
  CHECK_THROWS_AS(split_channels(AudioBuffer::mono(mono({1}))), InvalidArgument);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const AudioBuffer x = AudioBuffer::stereo(mono(synth::random_pcm(100, rng)), mono(synth::random_pcm(100, rng)));
    const auto [xl, xr] = split_channels(x);
    CHECK(AudioBuffer::stereo(xl, xr) == x);
  }
}

TEST_CASE("invert phase") {
  CHECK(invert_phase(mono({1, -5, 0})).samples == Samples{-1, 5, 0});
  CHECK(invert_phase(mono({-32768})).samples == Samples{32767});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    Samples s = synth::random_pcm(500, rng);
    for (auto& v : s) {
      if (v == -32768) v = 0;
    }
    CHECK(invert_phase(invert_phase(mono(s))).samples == s);
  }
}

TEST_CASE("overlay") {
  CHECK(overlay(mono({100}), mono({-100})).samples == Samples{0});
  CHECK(overlay(mono({30000}), mono({30000})).samples == Samples{32767});
  CHECK(overlay(mono({-30000}), mono({-30000})).samples == Samples{-32768});
  CHECK(overlay(mono({1, 2, 3}), mono({10})).samples == Samples{11, 2, 3});
  CHECK_THROWS_AS(overlay(mono({1}, 8000), mono({1}, 44100)), InvalidArgument);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Samples x = synth::random_pcm(400, rng);
    for (auto& v : x) {
      if (v == -32768) v = -32767;
    }
    const MonoSignal a = mono(synth::random_pcm(400, rng)), b = mono(synth::random_pcm(300, rng));
    CHECK(overlay(a, b) == overlay(b, a));
    CHECK(overlay(a, mono({})) == a);
    CHECK(overlay(mono(x), invert_phase(mono(x))).samples == Samples(400, 0));
  }
}

TEST_CASE("downmix") {
  CHECK(downmix(AudioBuffer::stereo(mono({2}), mono({4}))).samples == Samples{3});
  CHECK(downmix(AudioBuffer::stereo(mono({3, -3}), mono({0, 0}))).samples == Samples{1, -1});
  CHECK_THROWS_AS(downmix(AudioBuffer::mono(mono({1}))), InvalidArgument);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const MonoSignal x = mono(synth::random_pcm(300, rng));
    CHECK(downmix(AudioBuffer::stereo(x, x)) == x);
    const MonoSignal l = mono(synth::random_pcm(300, rng)), r = mono(synth::random_pcm(300, rng));
    const auto energy = [](const Samples& s) {
      long double e = 0;
      for (auto v : s) e += static_cast<long double>(v) * v;
      return e;
    };
    CHECK(energy(downmix(AudioBuffer::stereo(l, r)).samples) <= std::max(energy(l.samples), energy(r.samples)));
  }
}

TEST_CASE("left plus inverted right is the side signal") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const MonoSignal l = mono(synth::random_pcm(1000, rng)), r = mono(synth::random_pcm(1000, rng));
    const AudioBuffer a = AudioBuffer::stereo(l, r);
    const MonoSignal via_overlay = overlay(l, invert_phase(r));
    const MonoSignal side = side_signal(a);
    Samples expected(1000);
    for (std::size_t k = 0; k < 1000; ++k) expected[k] = oracle::saturate(static_cast<long>(l.samples[k]) - r.samples[k]);
    CHECK(side.samples == expected);
    // Inverting -32768 saturates first, so the overlay route can be one
    // step short exactly there.
    for (std::size_t k = 0; k < 1000; ++k) {
      if (r.samples[k] != -32768) CHECK(via_overlay.samples[k] == expected[k]);
    }
  }
}

}  // TEST_SUITE
