#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace asrjudge {

/// Milliseconds since the start of the audio.
struct Timestamp {
  std::int64_t milliseconds = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// `HH:MM:SS,mmm` (hours widen past two digits as needed).
std::string format_srt_time(Timestamp t);

/// Parses `H+:MM:SS[,.]mmm`. `line` is only used for the error message.
Timestamp parse_srt_time(std::string_view text, std::size_t line = 0);

struct Segment {
  Timestamp start;
  Timestamp end;
  std::string text;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Transcript {
  std::string source_label;
  std::vector<Segment> segments;  // sorted by start, ties in input order
};

struct ReferenceLyrics {
  std::vector<std::string> lines;
};

enum class LineEnding { Lf, CrLf };

/// SubRip input. Both ',' and '.' are accepted before the milliseconds.
/// Multi-line cue text is joined with single spaces.
Transcript parse_srt(std::string_view text);

struct ConsoleLogParse {
  Transcript transcript;
  std::size_t skipped_lines = 0;  // non-blank lines that were not cues
};

/// Transcriber console output: `[MM:SS.mmm --> MM:SS.mmm] text` lines.
/// Everything else (banners, timing stats) is skipped and counted.
ConsoleLogParse parse_console_log(std::string_view text);

std::string emit_srt(const Transcript& transcript, LineEnding ending = LineEnding::Lf);

/// One lyric per line; blank lines dropped, surrounding whitespace trimmed.
ReferenceLyrics parse_reference(std::string_view text);

/// Picks parse_console_log when the text contains bracketed cue lines,
/// parse_srt otherwise.
Transcript parse_transcript(std::string_view text, std::string source_label = {});

}  // namespace asrjudge
