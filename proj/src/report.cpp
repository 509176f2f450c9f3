#include "asrjudge/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "asrjudge/error.hpp"

namespace asrjudge {

namespace {

void collect_override_notes(const std::string& label, const LineScore& score, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < score.diffs.size(); ++i) {
    const auto& d = score.diffs[i];
    if (d.distance != d.recomputed_distance) {
      out.push_back(label + " diff " + std::to_string(i) + " ('" + d.diff.ref_span + "' -> '" + d.diff.hyp_span +
                    "'): annotated distance " + d.distance.to_string() + ", recomputed " +
                    d.recomputed_distance.to_string());
    }
  }
}

std::string tally_string(const Tally& t) {
  return "a=" + std::to_string(t.wins_a) + " b=" + std::to_string(t.wins_b) + " draws=" + std::to_string(t.draws);
}

}  // namespace

Evaluation evaluate(const EvaluationInput& input) {
  std::set<std::string> labels;
  for (const auto& p : input.pairs_a) labels.insert(p.label);
  for (const auto& p : input.pairs_b) labels.insert(p.label);
  for (const auto& a : input.annotations) {
    if (!labels.count(a.pair_label)) throw InvalidArgument("annotation refers to unknown pair '" + a.pair_label + "'");
  }

  std::map<std::size_t, const LyricPair*> b_by_ref;
  for (const auto& p : input.pairs_b) {
    if (!b_by_ref.emplace(p.ref_index, &p).second) {
      throw InvalidArgument("reference line " + std::to_string(p.ref_index) + " paired twice for " + input.name_b);
    }
  }
  if (input.pairs_a.size() != input.pairs_b.size()) {
    throw InvalidArgument("hypotheses cover different numbers of reference lines (" +
                          std::to_string(input.pairs_a.size()) + " vs " + std::to_string(input.pairs_b.size()) + ")");
  }

  Evaluation ev;
  ev.name_a = input.name_a;
  ev.name_b = input.name_b;
  ev.stated_tally = input.stated_tally;
  std::vector<Verdict> verdicts;
  std::set<std::size_t> seen_a;
  for (const auto& pa : input.pairs_a) {
    if (!seen_a.insert(pa.ref_index).second) {
      throw InvalidArgument("reference line " + std::to_string(pa.ref_index) + " paired twice for " + input.name_a);
    }
    const auto it = b_by_ref.find(pa.ref_index);
    if (it == b_by_ref.end()) {
      throw InvalidArgument("reference line " + std::to_string(pa.ref_index) + " has no " + input.name_b + " pair");
    }
    LyricEvaluation le;
    le.lyric = pa.lyric;
    le.reference = pa.reference.original;
    le.pair_a = pa;
    le.pair_b = *it->second;
    le.score_a = score_line(le.pair_a, input.annotations, input.options);
    le.score_b = score_line(le.pair_b, input.annotations, input.options);
    le.verdict = decide_winner(le.score_a, le.score_b);
    collect_override_notes(le.pair_a.label, le.score_a, le.discrepancies);
    collect_override_notes(le.pair_b.label, le.score_b, le.discrepancies);
    verdicts.push_back(le.verdict);
    ev.lyrics.push_back(std::move(le));
  }
  ev.tally = aggregate(verdicts);
  if (ev.stated_tally && *ev.stated_tally != ev.tally) {
    ev.discrepancies.push_back("stated tally " + tally_string(*ev.stated_tally) +
                               " does not match the tally computed from the verdicts " + tally_string(ev.tally));
  }
  return ev;
}

namespace {

nlohmann::json distance_json(const Rational& r) { return r.den() == 1 ? nlohmann::json(r.num()) : nlohmann::json(r.to_double()); }

nlohmann::json score_json(const LineScore& s) {
  nlohmann::json diffs = nlohmann::json::array();
  for (const auto& d : s.diffs) {
    nlohmann::json j{
        {"kind", to_string(d.diff.kind)},
        {"ref", d.diff.ref_span},
        {"hyp", d.diff.hyp_span},
        {"char_distance", d.diff.char_distance},
        {"classification", to_string(d.classification.kind)},
        {"source", to_string(d.classification.source)},
        {"distance", distance_json(d.distance)},
        {"recomputed_distance", distance_json(d.recomputed_distance)},
    };
    if (!d.note.empty()) j["note"] = d.note;
    diffs.push_back(std::move(j));
  }
  return {
      {"hallucinations", s.hallucination_count},
      {"distance", distance_json(s.adjusted_distance)},
      {"distance_exact", s.adjusted_distance.to_string()},
      {"recomputed_distance", distance_json(s.recomputed_distance)},
      {"diffs", std::move(diffs)},
  };
}

std::string winner_name(const Evaluation& ev, Winner w) {
  switch (w) {
    case Winner::A: return ev.name_a;
    case Winner::B: return ev.name_b;
    case Winner::Draw: return "draw";
  }
  return "?";
}

std::string reason_text(VerdictReason r) {
  switch (r) {
    case VerdictReason::NoHallucinationBeatsHallucination: return "the other side hallucinates";
    case VerdictReason::FewerHallucinations: return "fewer hallucinations";
    case VerdictReason::SmallerDistance: return "smaller edit distance";
    case VerdictReason::Equal: return "equal";
  }
  return "?";
}

std::string highlight(const LineScore& s) {
  std::string out;
  for (const auto& d : s.diffs) {
    if (!out.empty()) out += ' ';
    const std::string& span = d.diff.hyp_span;
    switch (d.classification.kind) {
      case Judgement::Match: out += span; break;
      case Judgement::Hallucination: out += "[[" + (span.empty() ? std::string("-") : span) + "]]"; break;
      case Judgement::Mishearing: out += "{" + (span.empty() ? std::string("-") : span) + "}"; break;
    }
  }
  return out;
}

}  // namespace

Report render_report(const Evaluation& ev) {
  Report report;
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& le : ev.lyrics) {
    pairs.push_back({
        {"label", le.lyric},
        {"ref", le.reference},
        {"hyp_a", le.pair_a.hypothesis.original},
        {"hyp_b", le.pair_b.hypothesis.original},
        {"label_a", le.pair_a.label},
        {"label_b", le.pair_b.label},
        {"score_a", score_json(le.score_a)},
        {"score_b", score_json(le.score_b)},
        {"verdict", to_string(le.verdict.winner)},
        {"reason", to_string(le.verdict.reason)},
        {"discrepancies", le.discrepancies},
    });
  }
  report.json = {
      {"name_a", ev.name_a},
      {"name_b", ev.name_b},
      {"pairs", std::move(pairs)},
      {"tally_a", ev.tally.wins_a},
      {"tally_b", ev.tally.wins_b},
      {"draws", ev.tally.draws},
      {"discrepancies", ev.discrepancies},
  };
  if (ev.stated_tally) {
    report.json["stated_tally"] = {{"a", ev.stated_tally->wins_a}, {"b", ev.stated_tally->wins_b}, {"draws", ev.stated_tally->draws}};
  }

  std::ostringstream text;
  const std::size_t width = std::max({std::size_t{7}, ev.name_a.size() + 1, ev.name_b.size() + 1});
  const auto row = [&](const std::string& head, const std::string& body) {
    text << "  " << head << std::string(width - std::min(width, head.size()) + 1, ' ') << body << '\n';
  };
  for (const auto& le : ev.lyrics) {
    text << le.lyric << '\n';
    row("Real:", le.reference);
    const auto side = [&](const std::string& name, const LineScore& s) {
      row(name + ":", highlight(s) + "   (hallucinations " + std::to_string(s.hallucination_count) + ", distance " +
                          s.adjusted_distance.to_string() + ")");
    };
    side(ev.name_a, le.score_a);
    side(ev.name_b, le.score_b);
    row("Verdict:", le.verdict.winner == Winner::Draw ? "draw (" + reason_text(le.verdict.reason) + ")"
                                                     : winner_name(ev, le.verdict.winner) + " wins (" +
                                                           reason_text(le.verdict.reason) + ")");
    for (const auto& d : le.discrepancies) row("Note:", d);
    text << '\n';
  }
  text << "Tally: " << ev.name_a << ' ' << ev.tally.wins_a << ", " << ev.name_b << ' ' << ev.tally.wins_b
       << ", draws " << ev.tally.draws << '\n';
  for (const auto& d : ev.discrepancies) text << "Note: " << d << '\n';
  text << "Legend: [[hallucination]] {mishearing}\n";
  report.text = text.str();
  return report;
}

}  // namespace asrjudge
