#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "asrjudge/transcript_io.hpp"

namespace asrjudge {

struct NormalizedLine {
  std::string original;
  std::vector<std::string> tokens;

  /// Tokens joined with single spaces.
  std::string joined() const;
};

/// NFC, lowercase, boundary punctuation stripped, whitespace-split.
/// Intra-word hyphens survive ("tv-pöllöstä" is one token).
NormalizedLine normalize(std::string_view line);

/// One reference line judged against one hypothesis extract.
struct LyricPair {
  NormalizedLine reference;
  NormalizedLine hypothesis;
  std::string label;       // unique, e.g. "Lyric #5 / YouTube"; annotations key on it
  std::string lyric;       // groups the two sides of a comparison, e.g. "Lyric #5"
  std::size_t ref_index = 0;
};

struct PairingEntry {
  std::size_t ref_index = 0;
  std::optional<std::size_t> hyp_index;  // segment of the transcript
  std::optional<std::string> hyp_text;   // or an inline hypothesis
  std::string label;
  std::string lyric;
};

/// Explicit entries, or `automatic` for greedy time-monotone matching.
struct PairingSpec {
  bool automatic = false;
  std::vector<PairingEntry> entries;
};

struct PairingOutcome {
  std::vector<LyricPair> pairs;
  std::vector<std::size_t> unpaired;  // reference line indices without a partner
};

/// Explicit mode is total over valid indices; automatic mode walks the
/// reference in order and picks, among segments after the previous pick, the
/// one with the smallest edit distance on normalized text (earliest on ties).
PairingOutcome pair_lyrics(const ReferenceLyrics& reference, const Transcript& hypothesis,
                           const PairingSpec& pairing);

/// JSON array of {ref_index, hyp_index | hyp_text, label[, lyric]}.
/// `label_suffix` is appended to every label (" / YouTube").
PairingSpec parse_pairing_spec(const nlohmann::json& json, std::string_view label_suffix = {});

}  // namespace asrjudge
