#include "asrjudge/verdict.hpp"

#include <algorithm>

#include "asrjudge/error.hpp"
#include "asrjudge/utf8.hpp"

namespace asrjudge {

std::string_view to_string(Judgement j) {
  switch (j) {
    case Judgement::Match: return "match";
    case Judgement::Hallucination: return "hallucination";
    case Judgement::Mishearing: return "mishearing";
  }
  return "?";
}

std::string_view to_string(JudgementSource s) { return s == JudgementSource::Auto ? "auto" : "annotated"; }

std::string_view to_string(Winner w) {
  switch (w) {
    case Winner::A: return "a";
    case Winner::B: return "b";
    case Winner::Draw: return "draw";
  }
  return "?";
}

std::string_view to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::NoHallucinationBeatsHallucination: return "no_hallucination_beats_hallucination";
    case VerdictReason::FewerHallucinations: return "fewer_hallucinations";
    case VerdictReason::SmallerDistance: return "smaller_distance";
    case VerdictReason::Equal: return "equal";
  }
  return "?";
}

Classification classify_diff(const Diff& diff, Rational threshold) {
  if (threshold <= Rational(0) || threshold > Rational(1)) {
    throw InvalidArgument("classification threshold must lie in (0, 1], got " + threshold.to_string());
  }
  switch (diff.kind) {
    case DiffKind::Match: return {Judgement::Match, JudgementSource::Auto};
    case DiffKind::Insertion: return {Judgement::Hallucination, JudgementSource::Auto};
    case DiffKind::Deletion: return {Judgement::Mishearing, JudgementSource::Auto};
    case DiffKind::Substitution: break;
  }
  const auto longest = static_cast<std::int64_t>(std::max(utf8::length(diff.ref_span), utf8::length(diff.hyp_span)));
  const Rational ratio(static_cast<std::int64_t>(diff.char_distance), std::max<std::int64_t>(longest, 1));
  return {ratio > threshold ? Judgement::Hallucination : Judgement::Mishearing, JudgementSource::Auto};
}

namespace {

bool single_token(const std::string& s) { return !s.empty() && s.find(' ') == std::string::npos; }

Rational rule_distance(const Diff& d, Judgement kind, const ScoringOptions& options) {
  if (kind == Judgement::Match) return Rational(0);
  if (kind == Judgement::Hallucination && !options.count_hallucination_distance) return Rational(0);
  if (d.kind == DiffKind::Substitution && single_token(d.ref_span) && single_token(d.hyp_span)) {
    return phoneme_adjusted_distance(d.ref_span, d.hyp_span, options.phonemes);
  }
  return Rational(static_cast<std::int64_t>(d.char_distance));
}

}  // namespace

LineScore score_line(const LyricPair& pair, std::span<const Annotation> annotations, const ScoringOptions& options) {
  const std::vector<Diff> diffs = word_diff(pair.reference, pair.hypothesis);

  std::vector<const Annotation*> by_index(diffs.size(), nullptr);
  for (const auto& a : annotations) {
    if (a.pair_label != pair.label) continue;
    if (a.diff_index >= diffs.size()) {
      throw InvalidArgument("annotation for '" + a.pair_label + "' refers to diff " + std::to_string(a.diff_index) +
                            " but the pair has " + std::to_string(diffs.size()) + " diffs");
    }
    by_index[a.diff_index] = &a;
  }

  LineScore score;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    ScoredDiff sd;
    sd.diff = diffs[i];
    sd.classification = classify_diff(sd.diff, options.threshold);
    std::optional<Rational> override_distance;
    if (const Annotation* a = by_index[i]) {
      sd.classification = {a->kind, JudgementSource::Annotated};
      override_distance = a->distance_override;
      sd.note = a->note;
    }
    sd.recomputed_distance = rule_distance(sd.diff, sd.classification.kind, options);
    sd.distance = override_distance.value_or(sd.recomputed_distance);
    if (sd.classification.kind == Judgement::Hallucination) ++score.hallucination_count;
    score.adjusted_distance += sd.distance;
    score.recomputed_distance += sd.recomputed_distance;
    score.diffs.push_back(std::move(sd));
  }
  return score;
}

Verdict decide_winner(const LineScore& a, const LineScore& b) {
  const std::size_t ha = a.hallucination_count;
  const std::size_t hb = b.hallucination_count;
  if ((ha == 0) != (hb == 0)) {
    return {ha == 0 ? Winner::A : Winner::B, VerdictReason::NoHallucinationBeatsHallucination};
  }
  if (ha != hb) return {ha < hb ? Winner::A : Winner::B, VerdictReason::FewerHallucinations};
  if (a.adjusted_distance != b.adjusted_distance) {
    return {a.adjusted_distance < b.adjusted_distance ? Winner::A : Winner::B, VerdictReason::SmallerDistance};
  }
  return {Winner::Draw, VerdictReason::Equal};
}

Tally aggregate(std::span<const Verdict> verdicts) {
  Tally t;
  for (const auto& v : verdicts) {
    switch (v.winner) {
      case Winner::A: ++t.wins_a; break;
      case Winner::B: ++t.wins_b; break;
      case Winner::Draw: ++t.draws; break;
    }
  }
  return t;
}

std::vector<Annotation> parse_annotations(const nlohmann::json& json) {
  if (!json.is_array()) throw InvalidArgument("annotation file must be a JSON array");
  std::vector<Annotation> out;
  for (std::size_t i = 0; i < json.size(); ++i) {
    const auto& item = json[i];
    const std::string where = "annotation " + std::to_string(i);
    if (!item.is_object()) throw InvalidArgument(where + " is not an object");
    Annotation a;
    if (!item.contains("pair_label") || !item["pair_label"].is_string()) throw InvalidArgument(where + ": pair_label missing");
    a.pair_label = item["pair_label"].get<std::string>();
    if (!item.contains("diff_index") || !item["diff_index"].is_number_unsigned()) {
      throw InvalidArgument(where + ": diff_index must be a non-negative integer");
    }
    a.diff_index = item["diff_index"].get<std::size_t>();
    const std::string kind = item.value("kind", std::string{});
    if (kind == "hallucination") {
      a.kind = Judgement::Hallucination;
    } else if (kind == "mishearing") {
      a.kind = Judgement::Mishearing;
    } else {
      throw InvalidArgument(where + ": kind must be \"hallucination\" or \"mishearing\"");
    }
    if (item.contains("distance_override") && !item["distance_override"].is_null()) {
      const auto& d = item["distance_override"];
      Rational value;
      if (d.is_string()) {
        value = Rational::parse(d.get<std::string>());
      } else if (d.is_number()) {
        value = Rational::parse(d.dump());
      } else {
        throw InvalidArgument(where + ": distance_override must be a number or \"p/q\" string");
      }
      if (value < Rational(0)) throw InvalidArgument(where + ": distance_override must be non-negative");
      a.distance_override = value;
    }
    a.note = item.value("note", std::string{});
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace asrjudge
