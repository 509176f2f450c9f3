#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "asrjudge/verdict.hpp"

namespace asrjudge {

/// One reference line judged for both hypotheses.
struct LyricEvaluation {
  std::string lyric;
  std::string reference;
  LyricPair pair_a;
  LyricPair pair_b;
  LineScore score_a;
  LineScore score_b;
  Verdict verdict;
  std::vector<std::string> discrepancies;
};

struct Evaluation {
  std::string name_a = "A";
  std::string name_b = "B";
  std::vector<LyricEvaluation> lyrics;
  Tally tally;
  std::optional<Tally> stated_tally;
  std::vector<std::string> discrepancies;  // evaluation-wide notes
};

struct EvaluationInput {
  std::string name_a = "A";
  std::string name_b = "B";
  std::vector<LyricPair> pairs_a;
  std::vector<LyricPair> pairs_b;
  std::vector<Annotation> annotations;
  ScoringOptions options;
  std::optional<Tally> stated_tally;  // a tally claimed elsewhere, checked against ours
};

/// Scores both sides, matches them by reference line and decides winners.
/// Throws InvalidArgument when a reference line is paired on one side only,
/// or when an annotation names a label that no pair carries.
Evaluation evaluate(const EvaluationInput& input);

struct Report {
  nlohmann::json json;
  std::string text;
};

/// JSON document plus a plain-text table (Real / A / B / Verdict per lyric).
/// Any annotation override that disagrees with the recomputed distance is
/// listed under the lyric's discrepancies.
Report render_report(const Evaluation& evaluation);

}  // namespace asrjudge
