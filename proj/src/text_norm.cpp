#include "asrjudge/text_norm.hpp"

#include <algorithm>
#include <limits>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "asrjudge/edit_metrics.hpp"
#include "asrjudge/error.hpp"
#include "asrjudge/utf8.hpp"

namespace asrjudge {

namespace {

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw Error("ICU NFC normalizer unavailable");
  return *n;
}

bool is_boundary_punct(UChar32 c) {
  switch (c) {
    case U'.': case U',': case U'!': case U'?': case U'"': case U'-': case U';': case U':':
    case U'\'': case U'(': case U')':
    case 0x2026:  // …
    case 0x201C: case 0x201D: case 0x201E:  // “ ” „
    case 0x2018: case 0x2019:  // ‘ ’
    case 0x2013: case 0x2014:  // en and em dash
      return true;
    default:
      return false;
  }
}

std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

}  // namespace

std::string NormalizedLine::joined() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

NormalizedLine normalize(std::string_view line) {
  NormalizedLine out;
  out.original = std::string(line);

  UErrorCode status = U_ZERO_ERROR;
  const auto& normalizer = nfc();
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(icu::StringPiece(line.data(), static_cast<int32_t>(line.size())));
  text = normalizer.normalize(text, status);
  text.toLower(icu::Locale::getRoot());
  text = normalizer.normalize(text, status);
  if (U_FAILURE(status)) throw Error(std::string("normalization failed: ") + u_errorName(status));

  const int32_t n = text.length();
  int32_t i = 0;
  while (i < n) {
    while (i < n && u_isUWhiteSpace(text.char32At(i))) i = text.moveIndex32(i, 1);
    int32_t start = i;
    while (i < n && !u_isUWhiteSpace(text.char32At(i))) i = text.moveIndex32(i, 1);
    int32_t end = i;
    while (start < end && is_boundary_punct(text.char32At(start))) start = text.moveIndex32(start, 1);
    while (end > start) {
      const int32_t prev = text.moveIndex32(end, -1);
      if (!is_boundary_punct(text.char32At(prev))) break;
      end = prev;
    }
    if (end > start) out.tokens.push_back(to_utf8(text.tempSubStringBetween(start, end)));
  }
  return out;
}

namespace {

LyricPair make_pair(const ReferenceLyrics& reference, std::size_t ref_index, std::string_view hypothesis,
                    std::string label, std::string lyric) {
  LyricPair pair;
  pair.reference = normalize(reference.lines[ref_index]);
  pair.hypothesis = normalize(hypothesis);
  pair.label = std::move(label);
  pair.lyric = lyric.empty() ? "line " + std::to_string(ref_index + 1) : std::move(lyric);
  pair.ref_index = ref_index;
  if (pair.reference.tokens.empty() || pair.hypothesis.tokens.empty()) {
    throw InvalidArgument("pair '" + pair.label + "' has an empty side after normalization");
  }
  return pair;
}

}  // namespace

PairingOutcome pair_lyrics(const ReferenceLyrics& reference, const Transcript& hypothesis,
                           const PairingSpec& pairing) {
  PairingOutcome out;
  if (pairing.automatic) {
    std::size_t next = 0;
    for (std::size_t r = 0; r < reference.lines.size(); ++r) {
      const std::string ref = normalize(reference.lines[r]).joined();
      std::size_t best = hypothesis.segments.size();
      std::size_t best_distance = std::numeric_limits<std::size_t>::max();
      for (std::size_t s = next; s < hypothesis.segments.size(); ++s) {
        const std::size_t d = levenshtein(ref, normalize(hypothesis.segments[s].text).joined());
        if (d < best_distance) {
          best_distance = d;
          best = s;
        }
      }
      if (best == hypothesis.segments.size()) {
        out.unpaired.push_back(r);
        continue;
      }
      std::string label = "line " + std::to_string(r + 1);
      if (!hypothesis.source_label.empty()) label += " / " + hypothesis.source_label;
      out.pairs.push_back(make_pair(reference, r, hypothesis.segments[best].text, std::move(label), {}));
      next = best + 1;
    }
    return out;
  }

  std::vector<bool> covered(reference.lines.size(), false);
  for (const auto& entry : pairing.entries) {
    if (entry.ref_index >= reference.lines.size()) {
      throw InvalidArgument("pairing '" + entry.label + "': ref_index " + std::to_string(entry.ref_index) +
                            " out of range (" + std::to_string(reference.lines.size()) + " reference lines)");
    }
    std::string text;
    if (entry.hyp_text) {
      text = *entry.hyp_text;
    } else if (entry.hyp_index) {
      if (*entry.hyp_index >= hypothesis.segments.size()) {
        throw InvalidArgument("pairing '" + entry.label + "': hyp_index " + std::to_string(*entry.hyp_index) +
                              " out of range (" + std::to_string(hypothesis.segments.size()) + " segments)");
      }
      text = hypothesis.segments[*entry.hyp_index].text;
    } else {
      throw InvalidArgument("pairing '" + entry.label + "' has neither hyp_index nor hyp_text");
    }
    covered[entry.ref_index] = true;
    out.pairs.push_back(make_pair(reference, entry.ref_index, text, entry.label, entry.lyric));
  }
  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const LyricPair& a, const LyricPair& b) { return a.ref_index < b.ref_index; });
  for (std::size_t r = 0; r < covered.size(); ++r) {
    if (!covered[r]) out.unpaired.push_back(r);
  }
  return out;
}

PairingSpec parse_pairing_spec(const nlohmann::json& json, std::string_view label_suffix) {
  if (!json.is_array()) throw InvalidArgument("pairing spec must be a JSON array");
  PairingSpec spec;
  for (std::size_t i = 0; i < json.size(); ++i) {
    const auto& item = json[i];
    const std::string where = "pairing entry " + std::to_string(i);
    if (!item.is_object()) throw InvalidArgument(where + " is not an object");
    if (!item.contains("ref_index") || !item["ref_index"].is_number_unsigned()) {
      throw InvalidArgument(where + ": ref_index must be a non-negative integer");
    }
    PairingEntry e;
    e.ref_index = item["ref_index"].get<std::size_t>();
    if (item.contains("hyp_text")) {
      if (!item["hyp_text"].is_string()) throw InvalidArgument(where + ": hyp_text must be a string");
      e.hyp_text = item["hyp_text"].get<std::string>();
    }
    if (item.contains("hyp_index")) {
      if (!item["hyp_index"].is_number_unsigned()) throw InvalidArgument(where + ": hyp_index must be a non-negative integer");
      e.hyp_index = item["hyp_index"].get<std::size_t>();
    }
    if (e.hyp_text.has_value() == e.hyp_index.has_value()) {
      throw InvalidArgument(where + ": exactly one of hyp_index or hyp_text is required");
    }
    e.lyric = item.value("lyric", std::string{});
    e.label = item.value("label", e.lyric.empty() ? "line " + std::to_string(e.ref_index + 1) : e.lyric);
    e.label += label_suffix;
    if (e.lyric.empty()) e.lyric = "line " + std::to_string(e.ref_index + 1);
    spec.entries.push_back(std::move(e));
  }
  return spec;
}

}  // namespace asrjudge
