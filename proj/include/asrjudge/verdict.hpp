#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "asrjudge/edit_metrics.hpp"
#include "asrjudge/rational.hpp"
#include "asrjudge/text_norm.hpp"

namespace asrjudge {

enum class Judgement { Match, Hallucination, Mishearing };
enum class JudgementSource { Auto, Annotated };

std::string_view to_string(Judgement j);
std::string_view to_string(JudgementSource s);

struct Classification {
  Judgement kind = Judgement::Match;
  JudgementSource source = JudgementSource::Auto;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// A human judgement attached to one diff of one named pair.
struct Annotation {
  std::string pair_label;
  std::size_t diff_index = 0;
  Judgement kind = Judgement::Mishearing;  // Hallucination or Mishearing
  std::optional<Rational> distance_override;
  std::string note;
};

/// Rule-based stand-in for the human judge. Insertions are hallucinations,
/// deletions mishearings, substitutions are hallucinations when
/// char_distance / max(span lengths) exceeds `threshold`.
/// Throws InvalidArgument unless 0 < threshold <= 1.
Classification classify_diff(const Diff& diff, Rational threshold = Rational(1, 2));

struct ScoringOptions {
  PhonemePairSet phonemes = PhonemePairSet::defaults();
  Rational threshold{1, 2};
  /// Hallucinated regions carry no edit distance: distance is only measured
  /// for mishearings. Set to add their character distance as well.
  bool count_hallucination_distance = false;
};

struct ScoredDiff {
  Diff diff;
  Classification classification;
  Rational distance;             // what the score uses (override wins)
  Rational recomputed_distance;  // same rules, ignoring any override
  std::string note;
};

struct LineScore {
  std::size_t hallucination_count = 0;
  Rational adjusted_distance;
  Rational recomputed_distance;
  std::vector<ScoredDiff> diffs;
};

/// Annotations whose pair_label differs from `pair.label` are ignored; a
/// matching annotation with an out-of-range diff_index throws InvalidArgument.
LineScore score_line(const LyricPair& pair, std::span<const Annotation> annotations,
                     const ScoringOptions& options = {});

enum class Winner { A, B, Draw };
enum class VerdictReason { NoHallucinationBeatsHallucination, FewerHallucinations, SmallerDistance, Equal };

std::string_view to_string(Winner w);
std::string_view to_string(VerdictReason r);

struct Verdict {
  Winner winner = Winner::Draw;
  VerdictReason reason = VerdictReason::Equal;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Hallucination-free beats hallucinating; then fewer hallucinations; then
/// smaller adjusted distance; otherwise a draw.
Verdict decide_winner(const LineScore& a, const LineScore& b);

struct Tally {
  std::size_t wins_a = 0;
  std::size_t wins_b = 0;
  std::size_t draws = 0;

  std::size_t total() const noexcept { return wins_a + wins_b + draws; }
  friend bool operator==(const Tally&, const Tally&) = default;
};

Tally aggregate(std::span<const Verdict> verdicts);

/// JSON array of {pair_label, diff_index, kind, distance_override?, note?}.
/// `kind` is "hallucination" or "mishearing"; distance_override may be a
/// number or a "p/q" string.
std::vector<Annotation> parse_annotations(const nlohmann::json& json);

}  // namespace asrjudge
