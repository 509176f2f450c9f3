#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asrjudge/rational.hpp"

namespace asrjudge {

struct NormalizedLine;

/// Character-level edit distance over Unicode scalar values.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

/// UTF-8 convenience overload; decodes both sides first.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Unordered, case-insensitive pairs of characters that are easy to confuse
/// by ear. A single substitution between such a pair costs half.
class PhonemePairSet {
 public:
  PhonemePairSet() = default;

  /// {b,p} and {t,d}.
  static PhonemePairSet defaults();

  /// Comma-separated two-character items: "bp,td,gk". Empty string gives the
  /// empty set.
  static PhonemePairSet parse(std::string_view text);

  void add(char32_t a, char32_t b);
  bool contains(char32_t a, char32_t b) const;
  bool empty() const noexcept { return pairs_.empty(); }
  std::string to_string() const;

 private:
  std::set<std::pair<char32_t, char32_t>> pairs_;
};

/// Levenshtein distance, halved when it is exactly one substitution between
/// characters of a listed pair.
Rational phoneme_adjusted_distance(std::string_view ref_word, std::string_view hyp_word,
                                   const PhonemePairSet& pairs);

enum class DiffKind { Match, Substitution, Insertion, Deletion };

std::string_view to_string(DiffKind kind);

/// One aligned region of a reference/hypothesis line pair.
struct Diff {
  DiffKind kind = DiffKind::Match;
  std::string ref_span;  // space-joined reference tokens, empty for Insertion
  std::string hyp_span;  // space-joined hypothesis tokens, empty for Deletion
  std::size_t char_distance = 0;

  friend bool operator==(const Diff&, const Diff&) = default;
};

enum class AlignOp { Match, Substitute, Insert, Delete };

struct AlignStep {
  AlignOp op;
  std::optional<std::size_t> ref;  // token index
  std::optional<std::size_t> hyp;
};

struct TokenAlignment {
  std::vector<AlignStep> steps;
  std::size_t cost = 0;
};

/// Minimum-cost token alignment. Substituting two tokens costs their
/// character distance; inserting or deleting a token costs its length.
/// Backtrace prefers diagonal, then deletion, then insertion.
TokenAlignment align_tokens(std::span<const std::string> ref, std::span<const std::string> hyp);

/// Word-level diff built on align_tokens. Each matched token is its own
/// Match diff. Consecutive substitutions stay separate regions; an insertion
/// or deletion merges with its non-matching neighbours, so a split or joined
/// word ("katuhaukka" / "katu haukka") becomes one region scored on the
/// space-joined spans.
std::vector<Diff> word_diff(const NormalizedLine& ref, const NormalizedLine& hyp);

}  // namespace asrjudge
