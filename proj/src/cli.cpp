#include "asrjudge/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "asrjudge/audio.hpp"
#include "asrjudge/error.hpp"
#include "asrjudge/report.hpp"
#include "asrjudge/separation.hpp"
#include "asrjudge/spectrum.hpp"
#include "asrjudge/text_norm.hpp"
#include "asrjudge/transcript_io.hpp"

namespace asrjudge::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return s;
}

void write_text(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("error writing '" + path + "'");
}

json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// File when a path is given, `out` otherwise.
void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
  } else {
    write_text(path, data);
  }
}

std::string utc_stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

MonoSignal pick_channel(const AudioBuffer& audio, const std::string& channel) {
  if (audio.channel_count() == 1) {
    const auto s = audio.channel(0);
    return MonoSignal{audio.sample_rate(), {s.begin(), s.end()}};
  }
  if (channel == "mix") return downmix(audio);
  const auto s = audio.channel(channel == "left" ? 0 : 1);
  return MonoSignal{audio.sample_rate(), {s.begin(), s.end()}};
}

Window parse_window(const std::string& name) { return name == "rect" ? Window::Rectangular : Window::Hann; }

// --- parse -----------------------------------------------------------------

struct ParseArgs {
  std::string input;
  std::string out;
  std::string label;
  bool crlf = false;
};

void do_parse(const ParseArgs& a, std::ostream& out, std::ostream& err) {
  const Transcript t = parse_transcript(read_text(a.input), a.label);
  emit(a.out, emit_srt(t, a.crlf ? LineEnding::CrLf : LineEnding::Lf), out);
  err << "parsed " << t.segments.size() << " segments\n";
}

// --- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  std::string ref;
  std::string hyp_a;
  std::string hyp_b;
  std::string pairs;
  std::string annotations;
  std::string out;
  std::string text;
  std::string threshold = "1/2";
  std::string phonemes = "bp,td";
  std::string name_a;
  std::string name_b;
  bool auto_pair = false;
  bool count_hallucination_distance = false;
  bool stamp = false;
};

Tally parse_tally(const json& j) {
  if (!j.is_object()) throw InvalidArgument("stated_tally must be an object {a, b, draws}");
  Tally t;
  t.wins_a = j.at("a").get<std::size_t>();
  t.wins_b = j.at("b").get<std::size_t>();
  t.draws = j.value("draws", std::size_t{0});
  return t;
}

Transcript load_transcript(const std::string& path, const std::string& label) {
  if (path.empty()) return Transcript{label, {}};
  return parse_transcript(read_text(path), label);
}

void do_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  // Flag values are checked before any file is opened.
  ScoringOptions options;
  options.threshold = Rational::parse(a.threshold);
  if (!(options.threshold > Rational(0)) || options.threshold > Rational(1)) {
    throw InvalidArgument("--threshold must be in (0, 1]");
  }
  options.phonemes = PhonemePairSet::parse(a.phonemes);
  options.count_hallucination_distance = a.count_hallucination_distance;
  if (a.auto_pair == !a.pairs.empty()) throw InvalidArgument("give exactly one of --pairs or --auto-pair");
  if (a.auto_pair && (a.hyp_a.empty() || a.hyp_b.empty())) {
    throw InvalidArgument("--auto-pair needs both --hyp-a and --hyp-b");
  }

  const ReferenceLyrics reference = parse_reference(read_text(a.ref));

  EvaluationInput input;
  input.options = options;
  PairingSpec spec_a;
  PairingSpec spec_b;
  if (a.auto_pair) {
    spec_a.automatic = spec_b.automatic = true;
    input.name_a = a.name_a.empty() ? "A" : a.name_a;
    input.name_b = a.name_b.empty() ? "B" : a.name_b;
  } else {
    const json pairs = read_json(a.pairs);
    if (pairs.is_object()) {
      const json labels = pairs.value("labels", json::object());
      input.name_a = a.name_a.empty() ? labels.value("a", std::string("A")) : a.name_a;
      input.name_b = a.name_b.empty() ? labels.value("b", std::string("B")) : a.name_b;
      if (pairs.contains("stated_tally")) input.stated_tally = parse_tally(pairs["stated_tally"]);
      if (!pairs.contains("a") || !pairs.contains("b")) throw InvalidArgument("pairs file needs both \"a\" and \"b\" lists");
      spec_a = parse_pairing_spec(pairs["a"]);
      spec_b = parse_pairing_spec(pairs["b"]);
    } else {
      input.name_a = a.name_a.empty() ? "A" : a.name_a;
      input.name_b = a.name_b.empty() ? "B" : a.name_b;
      spec_a = parse_pairing_spec(pairs, " / " + input.name_a);
      spec_b = parse_pairing_spec(pairs, " / " + input.name_b);
    }
  }

  const Transcript hyp_a = load_transcript(a.hyp_a, input.name_a);
  const Transcript hyp_b = load_transcript(a.hyp_b, input.name_b);
  PairingOutcome pa = pair_lyrics(reference, hyp_a, spec_a);
  PairingOutcome pb = pair_lyrics(reference, hyp_b, spec_b);
  if (a.auto_pair) {
    for (auto* outcome : {&pa, &pb}) {
      for (auto& p : outcome->pairs) p.lyric = "line " + std::to_string(p.ref_index + 1);
    }
    for (const std::size_t r : pa.unpaired) err << "line " << r + 1 << ": no segment left in " << input.name_a << "\n";
    for (const std::size_t r : pb.unpaired) err << "line " << r + 1 << ": no segment left in " << input.name_b << "\n";
  }
  input.pairs_a = std::move(pa.pairs);
  input.pairs_b = std::move(pb.pairs);
  if (!a.annotations.empty()) input.annotations = parse_annotations(read_json(a.annotations));

  const Evaluation evaluation = evaluate(input);
  Report report = render_report(evaluation);
  if (a.stamp) report.json["generated_at"] = utc_stamp();
  emit(a.out, report.json.dump(2) + "\n", out);
  if (!a.text.empty()) emit(a.text, report.text, out);
  for (const auto& d : evaluation.discrepancies) err << "note: " << d << "\n";
}

// --- separate --------------------------------------------------------------

struct SeparateArgs {
  std::string input;
  std::string method = "center";
  std::string out_dir;
  std::size_t max_iter = 200;
  double tol = 1e-4;
  std::uint64_t seed = 0;
  std::string contrast = "logcosh";
  std::string rescale = "peak";
};

json mat_json(const Mat2& m) { return json::array({json::array({m.a00, m.a01}), json::array({m.a10, m.a11})}); }

void do_separate(const SeparateArgs& a, std::ostream& out, std::ostream& err) {
  const AudioBuffer audio = load_wav(a.input);
  SeparationResult result;
  if (a.method == "center") {
    result = cancel_center(audio);
  } else {
    FastIcaOptions options;
    options.max_iter = a.max_iter;
    options.tol = a.tol;
    options.seed = a.seed;
    options.contrast = a.contrast == "cube" ? kernels::Contrast::Cube : kernels::Contrast::LogCosh;
    options.rescale = a.rescale == "gain" ? RescaleMode::FixedGain : RescaleMode::NormalizePeak;
    result = fastica2(audio, options);
  }

  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec) throw IoError("cannot create '" + a.out_dir + "': " + ec.message());
  const fs::path dir(a.out_dir);
  save_wav(dir / "vocals.wav", AudioBuffer::mono(result.vocals_est));
  save_wav(dir / "instrumental.wav", AudioBuffer::mono(result.instrumental_est));

  json diag{
      {"method", std::string(to_string(result.method))},
      {"sample_rate", audio.sample_rate()},
      {"frames", audio.frames()},
      {"iterations", result.diagnostics.iterations},
      {"converged", result.diagnostics.converged},
      {"component_correlation", result.diagnostics.component_correlation},
      {"note", result.diagnostics.note},
  };
  if (result.mixing) {
    diag["unmixing"] = mat_json(result.mixing->unmixing);
    diag["whitening"] = mat_json(result.mixing->whitening);
    diag["means"] = result.mixing->means;
  }
  write_text((dir / "diagnostics.json").string(), diag.dump(2) + "\n");
  if (!result.diagnostics.converged) {
    err << "warning: FastICA stopped after " << result.diagnostics.iterations << " iterations without converging\n";
  }
  out << (dir / "vocals.wav").string() << "\n" << (dir / "instrumental.wav").string() << "\n";
}

// --- spectrogram / analyze -------------------------------------------------

struct SpectrogramArgs {
  std::string input;
  std::string csv;
  std::string pgm;
  std::size_t nfft = 256;
  std::size_t hop = 128;
  std::string channel = "mix";
  std::string window = "hann";
};

void do_spectrogram(const SpectrogramArgs& a, std::ostream& out, std::ostream&) {
  const AudioBuffer audio = load_wav(a.input);
  const SpectrogramGrid grid = spectrogram(pick_channel(audio, a.channel), {a.nfft, a.hop, parse_window(a.window)});
  if (!a.csv.empty()) emit(a.csv, export_grid(grid, ExportFormat::Csv), out);
  if (!a.pgm.empty()) emit(a.pgm, export_grid(grid, ExportFormat::Pgm), out);
  if (a.csv.empty() && a.pgm.empty()) {
    out << "frames " << grid.frame_count << "\nbins " << grid.bin_count << "\n";
  }
}

struct AnalyzeArgs {
  std::string input;
  std::string scale = "linear";
  std::string csv;
  std::size_t nfft = 2048;
  std::size_t hop = 1024;
  std::string channel = "mix";
  std::string window = "hann";
};

void do_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream&) {
  const AudioBuffer audio = load_wav(a.input);
  AnalysisParams params;
  params.nfft = a.nfft;
  params.hop = a.hop;
  params.window = parse_window(a.window);
  const FrequencyScale scale = a.scale == "log" ? FrequencyScale::Logarithmic : FrequencyScale::Linear;
  const SpectrumCurve curve = frequency_analysis(pick_channel(audio, a.channel), scale, params);
  emit(a.csv, export_curve(curve, ExportFormat::Csv), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Score ASR transcripts of sung lyrics and pre-process stereo audio", "asrjudge"};
  app.set_config("--config", "", "TOML/INI file with flag values; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  const std::vector<std::string> channels{"mix", "left", "right"};
  const std::vector<std::string> windows{"hann", "rect"};

  ParseArgs pa;
  auto* parse = app.add_subcommand("parse", "SRT or console log to canonical SRT");
  parse->add_option("input", pa.input, "transcript file")->required();
  parse->add_option("--out", pa.out, "output SRT (default stdout)");
  parse->add_option("--label", pa.label, "source label");
  parse->add_flag("--crlf", pa.crlf, "CRLF line endings");

  EvaluateArgs ea;
  auto* eval = app.add_subcommand("evaluate", "judge two transcripts against reference lyrics");
  eval->add_option("--ref", ea.ref, "reference lyrics, one line per lyric")->required();
  eval->add_option("--hyp-a", ea.hyp_a, "transcript A (SRT or console log)");
  eval->add_option("--hyp-b", ea.hyp_b, "transcript B (SRT or console log)");
  eval->add_option("--pairs", ea.pairs, "pairing JSON");
  eval->add_flag("--auto-pair", ea.auto_pair, "pair lines to segments by edit distance");
  eval->add_option("--annotations", ea.annotations, "judgement annotations JSON");
  eval->add_option("--out", ea.out, "report JSON (default stdout)");
  eval->add_option("--text", ea.text, "also write the plain-text table here");
  eval->add_option("--threshold", ea.threshold, "substitution hallucination threshold, as p/q or decimal")
      ->capture_default_str();
  eval->add_option("--phonemes", ea.phonemes, "halved substitution pairs, e.g. bp,td")->capture_default_str();
  eval->add_option("--name-a", ea.name_a, "display name of A");
  eval->add_option("--name-b", ea.name_b, "display name of B");
  eval->add_flag("--count-hallucination-distance", ea.count_hallucination_distance,
                 "add edit distance of hallucinated regions too");
  eval->add_flag("--stamp", ea.stamp, "record the generation time in the report");

  SeparateArgs sa;
  auto* sep = app.add_subcommand("separate", "split a stereo WAV into vocals and instrumental estimates");
  sep->add_option("input", sa.input, "stereo 16-bit WAV")->required();
  sep->add_option("--method", sa.method)->check(CLI::IsMember({"center", "ica"}))->capture_default_str();
  sep->add_option("--out-dir", sa.out_dir, "directory for vocals.wav, instrumental.wav, diagnostics.json")->required();
  sep->add_option("--max-iter", sa.max_iter)->check(CLI::PositiveNumber)->capture_default_str();
  sep->add_option("--tol", sa.tol)->check(CLI::PositiveNumber)->capture_default_str();
  sep->add_option("--seed", sa.seed)->capture_default_str();
  sep->add_option("--contrast", sa.contrast)->check(CLI::IsMember({"logcosh", "cube"}))->capture_default_str();
  sep->add_option("--rescale", sa.rescale)->check(CLI::IsMember({"peak", "gain"}))->capture_default_str();

  SpectrogramArgs ga;
  auto* spec = app.add_subcommand("spectrogram", "STFT spectrogram in dBFS");
  spec->add_option("input", ga.input, "16-bit WAV")->required();
  spec->add_option("--csv", ga.csv, "CSV output");
  spec->add_option("--pgm", ga.pgm, "PGM (P5) output");
  spec->add_option("--nfft", ga.nfft)->capture_default_str();
  spec->add_option("--hop", ga.hop)->capture_default_str();
  spec->add_option("--channel", ga.channel)->check(CLI::IsMember(channels))->capture_default_str();
  spec->add_option("--window", ga.window)->check(CLI::IsMember(windows))->capture_default_str();

  AnalyzeArgs aa;
  auto* an = app.add_subcommand("analyze", "whole-file frequency analysis");
  an->add_option("input", aa.input, "16-bit WAV")->required();
  an->add_option("--scale", aa.scale)->check(CLI::IsMember({"linear", "log"}))->capture_default_str();
  an->add_option("--csv", aa.csv, "CSV output (default stdout)");
  an->add_option("--nfft", aa.nfft)->capture_default_str();
  an->add_option("--hop", aa.hop)->capture_default_str();
  an->add_option("--channel", aa.channel)->check(CLI::IsMember(channels))->capture_default_str();
  an->add_option("--window", aa.window)->check(CLI::IsMember(windows))->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* failing = &app;
    for (const auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kExitInvalid;
  }

  try {
    if (parse->parsed()) do_parse(pa, out, err);
    if (eval->parsed()) do_evaluate(ea, out, err);
    if (sep->parsed()) do_separate(sa, out, err);
    if (spec->parsed()) do_spectrogram(ga, out, err);
    if (an->parsed()) do_analyze(aa, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace asrjudge::cli
