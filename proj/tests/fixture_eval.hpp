#pragma once

// Builds an evaluation from one of the lyric-comparison fixture directories.

#include <fstream>
#include <iterator>
#include <string>

#include <json.hpp>

#include "asrjudge/error.hpp"
#include "asrjudge/report.hpp"
#include "asrjudge/text_norm.hpp"
#include "asrjudge/transcript_io.hpp"

namespace fixture_eval {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw asrjudge::IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// `dir` holds reference.txt, pairs.json and annotations.json; hyp_index
/// entries point into the console log one level up.
inline asrjudge::EvaluationInput load(const std::string& dir) {
  using namespace asrjudge;
  const ReferenceLyrics ref = parse_reference(slurp(dir + "/reference.txt"));
  const Transcript log = parse_transcript(slurp(dir + "/../faster_whisper_console.log"));
  const auto pairs = nlohmann::json::parse(slurp(dir + "/pairs.json"));
  EvaluationInput in;
  in.name_a = pairs["labels"]["a"].get<std::string>();
  in.name_b = pairs["labels"]["b"].get<std::string>();
  const auto& st = pairs["stated_tally"];
  in.stated_tally = Tally{st["a"].get<std::size_t>(), st["b"].get<std::size_t>(), st["draws"].get<std::size_t>()};
  in.pairs_a = pair_lyrics(ref, log, parse_pairing_spec(pairs["a"])).pairs;
  in.pairs_b = pair_lyrics(ref, log, parse_pairing_spec(pairs["b"])).pairs;
  in.annotations = parse_annotations(nlohmann::json::parse(slurp(dir + "/annotations.json")));
  return in;
}

}  // namespace fixture_eval
