#include "asrjudge/edit_metrics.hpp"

#include <algorithm>
#include <numeric>

#include <unicode/uchar.h>

#include "asrjudge/error.hpp"
#include "asrjudge/text_norm.hpp"
#include "asrjudge/utf8.hpp"

namespace asrjudge {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Single rolling row over the shorter string.
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(utf8::decode(a), utf8::decode(b));
}

namespace {
char32_t fold(char32_t c) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))); }
}  // namespace

PhonemePairSet PhonemePairSet::defaults() {
  PhonemePairSet set;
  set.add(U'b', U'p');
  set.add(U't', U'd');
  return set;
}

PhonemePairSet PhonemePairSet::parse(std::string_view text) {
  PhonemePairSet set;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const std::u32string cps = utf8::decode(item);
      if (cps.size() != 2) throw InvalidArgument("phoneme pair '" + std::string(item) + "' must be two characters");
      set.add(cps[0], cps[1]);
    } else if (comma < text.size()) {
      throw InvalidArgument("empty item in phoneme pair list '" + std::string(text) + "'");
    }
    pos = comma + 1;
  }
  return set;
}

void PhonemePairSet::add(char32_t a, char32_t b) {
  a = fold(a);
  b = fold(b);
  pairs_.emplace(std::min(a, b), std::max(a, b));
}

bool PhonemePairSet::contains(char32_t a, char32_t b) const {
  a = fold(a);
  b = fold(b);
  return pairs_.count({std::min(a, b), std::max(a, b)}) != 0;
}

std::string PhonemePairSet::to_string() const {
  std::string out;
  for (const auto& [a, b] : pairs_) {
    if (!out.empty()) out += ',';
    out += utf8::encode(std::u32string{a, b});
  }
  return out;
}

Rational phoneme_adjusted_distance(std::string_view ref_word, std::string_view hyp_word,
                                   const PhonemePairSet& pairs) {
  std::u32string ref = utf8::decode(ref_word);
  std::u32string hyp = utf8::decode(hyp_word);
  std::transform(ref.begin(), ref.end(), ref.begin(), fold);
  std::transform(hyp.begin(), hyp.end(), hyp.begin(), fold);
  const std::size_t d = levenshtein(ref, hyp);
  if (d == 1 && ref.size() == hyp.size()) {
    // Equal length and distance one: exactly one position differs.
    const auto [r, h] = std::mismatch(ref.begin(), ref.end(), hyp.begin());
    if (pairs.contains(*r, *h)) return Rational(1, 2);
  }
  return Rational(static_cast<std::int64_t>(d));
}

std::string_view to_string(DiffKind kind) {
  switch (kind) {
    case DiffKind::Match: return "match";
    case DiffKind::Substitution: return "substitution";
    case DiffKind::Insertion: return "insertion";
    case DiffKind::Deletion: return "deletion";
  }
  return "?";
}

TokenAlignment align_tokens(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<std::u32string> r(n), h(m);
  std::transform(ref.begin(), ref.end(), r.begin(), [](const std::string& s) { return utf8::decode(s); });
  std::transform(hyp.begin(), hyp.end(), h.begin(), [](const std::string& s) { return utf8::decode(s); });

  std::vector<std::size_t> sub(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) sub[i * m + j] = levenshtein(r[i], h[j]);

  const std::size_t w = m + 1;
  std::vector<std::size_t> cost((n + 1) * w, 0);
  for (std::size_t i = 1; i <= n; ++i) cost[i * w] = cost[(i - 1) * w] + r[i - 1].size();
  for (std::size_t j = 1; j <= m; ++j) cost[j] = cost[j - 1] + h[j - 1].size();
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cost[i * w + j] = std::min({cost[(i - 1) * w + j - 1] + sub[(i - 1) * m + j - 1],
                                  cost[(i - 1) * w + j] + r[i - 1].size(),
                                  cost[i * w + j - 1] + h[j - 1].size()});
    }
  }

  TokenAlignment out;
  out.cost = cost[n * w + m];
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = cost[i * w + j];
    if (i > 0 && j > 0 && here == cost[(i - 1) * w + j - 1] + sub[(i - 1) * m + j - 1]) {
      out.steps.push_back({r[i - 1] == h[j - 1] ? AlignOp::Match : AlignOp::Substitute, i - 1, j - 1});
      --i;
      --j;
    } else if (i > 0 && here == cost[(i - 1) * w + j] + r[i - 1].size()) {
      out.steps.push_back({AlignOp::Delete, i - 1, std::nullopt});
      --i;
    } else {
      out.steps.push_back({AlignOp::Insert, std::nullopt, j - 1});
      --j;
    }
  }
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

std::vector<Diff> word_diff(const NormalizedLine& ref, const NormalizedLine& hyp) {
  const TokenAlignment alignment = align_tokens(ref.tokens, hyp.tokens);

  // Group steps into regions.
  std::vector<std::vector<const AlignStep*>> regions;
  for (const auto& step : alignment.steps) {
    if (step.op == AlignOp::Match) {
      regions.push_back({&step});
      continue;
    }
    if (!regions.empty() && regions.back().front()->op != AlignOp::Match) {
      auto& prev = regions.back();
      const bool prev_has_gap = std::any_of(prev.begin(), prev.end(), [](const AlignStep* s) {
        return s->op == AlignOp::Insert || s->op == AlignOp::Delete;
      });
      if (step.op != AlignOp::Substitute || prev_has_gap) {
        prev.push_back(&step);
        continue;
      }
    }
    regions.push_back({&step});
  }

  std::vector<Diff> diffs;
  diffs.reserve(regions.size());
  for (const auto& region : regions) {
    Diff d;
    for (const AlignStep* s : region) {
      if (s->ref) d.ref_span += (d.ref_span.empty() ? "" : " ") + ref.tokens[*s->ref];
      if (s->hyp) d.hyp_span += (d.hyp_span.empty() ? "" : " ") + hyp.tokens[*s->hyp];
    }
    if (region.front()->op == AlignOp::Match) {
      d.kind = DiffKind::Match;
    } else if (d.ref_span.empty()) {
      d.kind = DiffKind::Insertion;
    } else if (d.hyp_span.empty()) {
      d.kind = DiffKind::Deletion;
    } else {
      d.kind = DiffKind::Substitution;
    }
    d.char_distance = d.kind == DiffKind::Match ? 0 : levenshtein(d.ref_span, d.hyp_span);
    diffs.push_back(std::move(d));
  }
  return diffs;
}

}  // namespace asrjudge
