#include "asrjudge/transcript_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <regex>

#include "asrjudge/error.hpp"
#include "asrjudge/utf8.hpp"

namespace asrjudge {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\f\v";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

/// Splits on '\n' and strips a trailing '\r' from each line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::int64_t to_int(std::string_view s) {
  std::int64_t v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

void sort_by_start(std::vector<Segment>& segments) {
  std::stable_sort(segments.begin(), segments.end(),
                   [](const Segment& a, const Segment& b) { return a.start < b.start; });
}

}  // namespace

std::string format_srt_time(Timestamp t) {
  const std::int64_t ms = t.milliseconds;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld,%03lld", static_cast<long long>(ms / 3600000),
                static_cast<long long>(ms / 60000 % 60), static_cast<long long>(ms / 1000 % 60),
                static_cast<long long>(ms % 1000));
  return buf;
}

Timestamp parse_srt_time(std::string_view text, std::size_t line) {
  const std::string_view s = trim(text);
  const auto fail = [&] { return ParseError("malformed timestamp '" + std::string(s) + "'", line); };
  const auto c1 = s.find(':');
  if (c1 == std::string_view::npos) throw fail();
  const auto c2 = s.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw fail();
  const auto sep = s.find_first_of(",.", c2 + 1);
  if (sep == std::string_view::npos) throw fail();
  const auto hh = s.substr(0, c1);
  const auto mm = s.substr(c1 + 1, c2 - c1 - 1);
  const auto ss = s.substr(c2 + 1, sep - c2 - 1);
  const auto frac = s.substr(sep + 1);
  if (!all_digits(hh) || hh.size() > 9 || mm.size() != 2 || !all_digits(mm) || ss.size() != 2 ||
      !all_digits(ss) || frac.size() != 3 || !all_digits(frac)) {
    throw fail();
  }
  const auto minutes = to_int(mm);
  const auto seconds = to_int(ss);
  if (minutes > 59 || seconds > 59) throw fail();
  return Timestamp{((to_int(hh) * 60 + minutes) * 60 + seconds) * 1000 + to_int(frac)};
}

Transcript parse_srt(std::string_view text) {
  text = utf8::strip_bom(text);
  const auto lines = split_lines(text);
  Transcript out;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    // Cue: optional numeric index, timing line, one or more text lines.
    if (all_digits(trim(lines[i]))) ++i;
    if (i >= lines.size()) throw ParseError("cue index without timing line", i);
    const std::size_t timing_line = i + 1;
    const std::string_view timing = lines[i];
    const auto arrow = timing.find("-->");
    if (arrow == std::string_view::npos) throw ParseError("expected 'start --> end' timing line", timing_line);
    std::string_view end_part = trim(timing.substr(arrow + 3));
    // Tolerate trailing positioning hints after the end time.
    if (const auto sp = end_part.find_first_of(" \t"); sp != std::string_view::npos) end_part = end_part.substr(0, sp);
    Segment seg;
    seg.start = parse_srt_time(timing.substr(0, arrow), timing_line);
    seg.end = parse_srt_time(end_part, timing_line);
    if (seg.end < seg.start) throw ParseError("cue ends before it starts", timing_line);
    ++i;
    while (i < lines.size() && !trim(lines[i]).empty()) {
      if (!seg.text.empty()) seg.text += ' ';
      seg.text += trim(lines[i]);
      ++i;
    }
    if (seg.text.empty()) throw ParseError("cue has no text", timing_line);
    if (!utf8::is_valid(seg.text)) throw ParseError("cue text is not valid UTF-8", timing_line);
    out.segments.push_back(std::move(seg));
  }
  sort_by_start(out.segments);
  return out;
}

ConsoleLogParse parse_console_log(std::string_view text) {
  static const std::regex cue(R"(^\[(\d+):(\d{2})\.(\d{3}) --> (\d+):(\d{2})\.(\d{3})\]\s(.*)$)");
  text = utf8::strip_bom(text);
  ConsoleLogParse out;
  for (const std::string_view line : split_lines(text)) {
    if (trim(line).empty()) continue;
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(line.begin(), line.end(), m, cue)) {
      ++out.skipped_lines;
      continue;
    }
    const auto field = [&](int k) { return to_int(std::string_view(&*m[k].first, static_cast<std::size_t>(m[k].length()))); };
    const auto ms = [&](int base) { return (field(base) * 60 + field(base + 1)) * 1000 + field(base + 2); };
    Segment seg{Timestamp{ms(1)}, Timestamp{ms(4)}, std::string(trim(m[7].str()))};
    if (field(2) > 59 || field(5) > 59 || seg.end < seg.start || seg.text.empty() || !utf8::is_valid(seg.text)) {
      ++out.skipped_lines;
      continue;
    }
    out.transcript.segments.push_back(std::move(seg));
  }
  sort_by_start(out.transcript.segments);
  return out;
}

std::string emit_srt(const Transcript& transcript, LineEnding ending) {
  const std::string_view nl = ending == LineEnding::CrLf ? "\r\n" : "\n";
  std::string out;
  std::size_t index = 1;
  for (const auto& seg : transcript.segments) {
    if (index > 1) out += nl;
    out += std::to_string(index++);
    out += nl;
    out += format_srt_time(seg.start);
    out += " --> ";
    out += format_srt_time(seg.end);
    out += nl;
    std::string body = seg.text;
    std::replace_if(body.begin(), body.end(), [](char c) { return c == '\n' || c == '\r'; }, ' ');
    out += body;
    out += nl;
  }
  return out;
}

ReferenceLyrics parse_reference(std::string_view text) {
  text = utf8::strip_bom(text);
  if (!utf8::is_valid(text)) {
    // Re-run the strict decoder for its offset-bearing message.
    utf8::decode(text);
  }
  ReferenceLyrics out;
  for (const auto line : split_lines(text)) {
    const auto t = trim(line);
    if (!t.empty()) out.lines.emplace_back(t);
  }
  return out;
}

Transcript parse_transcript(std::string_view text, std::string source_label) {
  static const std::regex probe(R"((^|\n)\[\d+:\d{2}\.\d{3} --> \d+:\d{2}\.\d{3}\])");
  Transcript t = std::regex_search(text.begin(), text.end(), probe) ? parse_console_log(text).transcript
                                                                     : parse_srt(text);
  t.source_label = std::move(source_label);
  return t;
}

}  // namespace asrjudge
