#include <random>

#include "asrjudge/error.hpp"
#include "asrjudge/transcript_io.hpp"
#include "asrjudge/utf8.hpp"
#include "oracles.hpp"

using namespace asrjudge;

TEST_SUITE("transcript_io") {

TEST_CASE("srt cue with Finnish text") {
  const Transcript t = parse_srt("1\n00:00:34,700 --> 00:00:39,940\nLakki lukkee lähikirjastosta\n");
  REQUIRE(t.segments.size() == 1);
  CHECK(t.segments[0] == Segment{{34700}, {39940}, "Lakki lukkee lähikirjastosta"});
}

TEST_CASE("srt edge inputs") {
  CHECK(parse_srt("").segments.empty());
  CHECK(parse_srt("\n\n").segments.empty());
  CHECK_THROWS_AS(parse_srt("1\n00:00:02,000 --> 00:00:01,000\nx\n"), ParseError);
}

TEST_CASE("srt accepts dots, CRLF, BOM, missing index and multi-line text") {
  const Transcript t = parse_srt(
      "\xEF\xBB\xBF"
      "7\r\n00:01:29.220 --> 00:01:29.240\r\nTordaita alas,\r\nniinku katu hauskaa.\r\n\r\n"
      "00:00:01,000 --> 00:00:02,000\r\nb\r\n");
  REQUIRE(t.segments.size() == 2);
  // Sorted by start.
  CHECK(t.segments[0].text == "b");
  CHECK(t.segments[1] == Segment{{89220}, {89240}, "Tordaita alas, niinku katu hauskaa."});
}

TEST_CASE("srt timestamp errors name the line") {
  try {
    parse_srt("1\n00:00:01,000 --> 00:00:02,000\na\n\n2\n00:00:61,000 --> 00:00:62,000\nb\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_srt("1\n00:00:01 --> 00:00:02,000\na\n"), ParseError);
  CHECK_THROWS_AS(parse_srt("1\n00:00:01,000 -> 00:00:02,000\na\n"), ParseError);
}

TEST_CASE("srt timestamps round-trip through format") {
  CHECK(format_srt_time({0}) == "00:00:00,000");
  CHECK(format_srt_time({142840}) == "00:02:22,840");
  // Beyond 99 hours the hour field widens.
  const Timestamp big{(123LL * 3600 + 4 * 60 + 5) * 1000 + 6};
  CHECK(format_srt_time(big) == "123:04:05,006");
  CHECK(parse_srt_time(format_srt_time(big)) == big);
  CHECK(format_srt_time(parse_srt_time("01:02:03.004")) == "01:02:03,004");
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> ms(0, 99LL * 3600 * 1000 + 3599999);
  for (int i = 0; i < 1000; ++i) {
    const Timestamp t{ms(rng)};
    CHECK(parse_srt_time(format_srt_time(t)) == t);
  }
}

TEST_CASE("console log lines") {
  const ConsoleLogParse p = parse_console_log("[02:22.840 --> 02:52.280] Pieni tauko... ja olemme takaisin.\n");
  REQUIRE(p.transcript.segments.size() == 1);
  CHECK(p.transcript.segments[0] == Segment{{142840}, {172280}, "Pieni tauko... ja olemme takaisin."});

  const ConsoleLogParse stats = parse_console_log("Transcription speed: 3.3 audio seconds/s");
  CHECK(stats.transcript.segments.empty());
  CHECK(stats.skipped_lines == 1);

  const ConsoleLogParse zero = parse_console_log("[00:00.000 --> 00:00.000] x");
  REQUIRE(zero.transcript.segments.size() == 1);
  CHECK(zero.transcript.segments[0].start == zero.transcript.segments[0].end);

  // Minutes past 59 are allowed in this format.
  CHECK(parse_console_log("[75:00.000 --> 75:01.500] y").transcript.segments.at(0).end.milliseconds == 4501500);
}

TEST_CASE("full transcriber console log") {
  const ConsoleLogParse p = parse_console_log(oracle::read_file(oracle::fixture("pantterinousut/faster_whisper_console.log")));
  const auto& s = p.transcript.segments;
  // Every bracketed cue line of the listing.
  CHECK(s.size() == 33);
  CHECK(p.skipped_lines == 8);
  REQUIRE(s.size() > 6);
  CHECK(s[6] == Segment{{34700}, {39940}, "Lakki lukkee lähikirjastosta, 95 Suomi Ruotsille kostaa."});
  // Overlapping repeats at 01:29 survive as two segments.
  CHECK(s[19].text == s[20].text);
  CHECK(s[20].start.milliseconds == 89220);
  CHECK(s.back().end.milliseconds == 172280);

  const Transcript detected = parse_transcript(oracle::read_file(oracle::fixture("pantterinousut/faster_whisper_console.log")), "fw");
  CHECK(detected.segments == s);
  CHECK(detected.source_label == "fw");
}

TEST_CASE("emit srt") {
  CHECK(emit_srt(Transcript{"", {Segment{{0}, {1000}, "a"}}}) == "1\n00:00:00,000 --> 00:00:01,000\na\n");
  CHECK(emit_srt(Transcript{}).empty());
  CHECK(emit_srt(Transcript{"", {Segment{{0}, {1000}, "a"}, Segment{{1000}, {2000}, "b"}}}, LineEnding::CrLf) ==
        "1\r\n00:00:00,000 --> 00:00:01,000\r\na\r\n\r\n2\r\n00:00:01,000 --> 00:00:02,000\r\nb\r\n");
}

TEST_CASE("console log transcript round-trips through srt") {
  const Transcript t = parse_console_log(oracle::read_file(oracle::fixture("pantterinousut/faster_whisper_console.log"))).transcript;
  CHECK(parse_srt(emit_srt(t)).segments == t.segments);
  CHECK(parse_srt(emit_srt(t, LineEnding::CrLf)).segments == t.segments);
}

TEST_CASE("srt parse/emit identity on random transcripts") {
  std::mt19937_64 rng(2024);
  const std::u32string alphabet = U"abcdefghijklmnopqrstuvwxyzäöÅ -,.!?0123456789";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    Transcript t;
    const int n = std::uniform_int_distribution<int>(0, 12)(rng);
    std::int64_t clock = 0;
    for (int i = 0; i < n; ++i) {
      clock += std::uniform_int_distribution<std::int64_t>(0, 5000)(rng);
      const std::int64_t len = std::uniform_int_distribution<std::int64_t>(0, 8000)(rng);
      std::u32string text;
      const int chars = std::uniform_int_distribution<int>(1, 30)(rng);
      for (int c = 0; c < chars; ++c) text += alphabet[pick(rng)];
      // Cue text is trimmed and cannot be blank.
      while (!text.empty() && text.back() == U' ') text.pop_back();
      while (!text.empty() && text.front() == U' ') text.erase(text.begin());
      if (text.empty()) text = U"x";
      // Collapse internal double spaces: multi-line joins use one space.
      std::u32string clean;
      for (char32_t c : text) {
        if (c == U' ' && !clean.empty() && clean.back() == U' ') continue;
        clean += c;
      }
      t.segments.push_back(Segment{{clock}, {clock + len}, utf8::encode(clean)});
    }
    const std::string srt = emit_srt(t, trial % 2 ? LineEnding::CrLf : LineEnding::Lf);
    CHECK(parse_srt(srt).segments == t.segments);
  }
}

TEST_CASE("reference lyrics") {
  CHECK(parse_reference("Kovaa pelii, Bostoni palaa\n").lines == std::vector<std::string>{"Kovaa pelii, Bostoni palaa"});
  CHECK(parse_reference("\n\n").lines.empty());
  CHECK(parse_reference(" a \n b ").lines == std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(parse_reference("ok\n\xC3\x28\n"), ParseError);
  const ReferenceLyrics r = parse_reference(oracle::read_file(oracle::fixture("pantterinousut/asr_comparison/reference.txt")));
  CHECK(r.lines.size() == 7);
  CHECK(r.lines[0] == "...Kuka tykkäs JRstä oli täys pelle");
}

}  // TEST_SUITE
