#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "histnorm/corpus.hpp"
#include "histnorm/edit.hpp"
#include "histnorm/error.hpp"

namespace histnorm {

enum class Metric { cer, ter, bleu };

inline const char* metric_name(Metric m) {
  switch (m) {
    case Metric::cer: return "cer";
    case Metric::ter: return "ter";
    default: return "bleu";
  }
}

// Higher is better for every metric when expressed as "signed": BLEU stays,
// error rates are negated. Used by the tuner.
inline double signed_metric(Metric m, double value) {
  return m == Metric::bleu ? value : -value;
}

enum class CerDenominator { reference, hypothesis };

// --- CER -------------------------------------------------------------------

struct CerStats {
  std::uint64_t edits = 0;
  std::uint64_t ref_chars = 0;
  std::uint64_t hyp_chars = 0;
  EditCounts counts;

  CerStats& operator+=(const CerStats& o) {
    edits += o.edits;
    ref_chars += o.ref_chars;
    hyp_chars += o.hyp_chars;
    counts.insertions += o.counts.insertions;
    counts.deletions += o.counts.deletions;
    counts.substitutions += o.counts.substitutions;
    return *this;
  }
};

// Character edit operations on the raw character stream, spaces included.
inline CerStats cer_sentence(const std::string& hyp, const std::string& ref) {
  const std::u32string h = utf8::decode(hyp, "hypothesis");
  const std::u32string r = utf8::decode(ref, "reference");
  const EditAlignment a = edit_align(h, r);
  CerStats s;
  s.edits = static_cast<std::uint64_t>(a.cost);
  s.ref_chars = r.size();
  s.hyp_chars = h.size();
  s.counts = a.counts;
  return s;
}

inline double cer_from_stats(const CerStats& s,
                             CerDenominator denom = CerDenominator::reference) {
  const std::uint64_t d = denom == CerDenominator::reference ? s.ref_chars : s.hyp_chars;
  if (d == 0) {
    if (s.edits == 0) return 0.0;
    throw DataError("CER denominator is empty");
  }
  return 100.0 * static_cast<double>(s.edits) / static_cast<double>(d);
}

inline double cer(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                  CerDenominator denom = CerDenominator::reference,
                  CerStats* stats_out = nullptr) {
  if (hyps.size() != refs.size())
    throw DataError("CER: hypothesis count " + std::to_string(hyps.size()) +
                    " != reference count " + std::to_string(refs.size()));
  CerStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) total += cer_sentence(hyps[i], refs[i]);
  if (stats_out) *stats_out = total;
  return cer_from_stats(total, denom);
}

// --- TER -------------------------------------------------------------------

struct TerStats {
  std::uint64_t edits = 0;  // word edits plus shifts
  std::uint64_t ref_words = 0;
  EditCounts counts;
  std::uint64_t shifts = 0;

  TerStats& operator+=(const TerStats& o) {
    edits += o.edits;
    ref_words += o.ref_words;
    counts.insertions += o.counts.insertions;
    counts.deletions += o.counts.deletions;
    counts.substitutions += o.counts.substitutions;
    shifts += o.shifts;
    return *this;
  }
};

namespace detail {

// Candidate block shifts: a contiguous span of the hypothesis moved to a
// landing position where it exactly matches the reference words. Applying a
// candidate returns the shifted word sequence.
template <typename Word>
std::vector<std::vector<Word>> shift_candidates(const std::vector<Word>& hyp,
                                                const std::vector<Word>& ref) {
  std::vector<std::vector<Word>> out;
  const std::size_t h = hyp.size();
  for (std::size_t start = 0; start < h; ++start) {
    for (std::size_t len = 1; start + len <= h; ++len) {
      std::vector<Word> rest;
      rest.reserve(h - len);
      rest.insert(rest.end(), hyp.begin(), hyp.begin() + start);
      rest.insert(rest.end(), hyp.begin() + start + len, hyp.end());
      for (std::size_t dest = 0; dest <= rest.size(); ++dest) {
        if (dest == start) continue;  // no movement
        if (dest + len > ref.size()) continue;
        bool lands = true;
        for (std::size_t t = 0; t < len; ++t) {
          if (ref[dest + t] != hyp[start + t]) {
            lands = false;
            break;
          }
        }
        if (!lands) continue;
        std::vector<Word> shifted;
        shifted.reserve(h);
        shifted.insert(shifted.end(), rest.begin(), rest.begin() + dest);
        shifted.insert(shifted.end(), hyp.begin() + start, hyp.begin() + start + len);
        shifted.insert(shifted.end(), rest.begin() + dest, rest.end());
        out.push_back(std::move(shifted));
      }
    }
  }
  return out;
}

}  // namespace detail

inline constexpr int kMaxTerShifts = 10;

// Word-level edits with greedy block shifts: repeatedly apply the candidate
// shift that most reduces the remaining edit distance, each shift costing one
// edit, capped at kMaxTerShifts per sentence.
inline TerStats ter_sentence(const std::string& hyp, const std::string& ref) {
  std::vector<std::string> h = split_words(hyp);
  const std::vector<std::string> r = split_words(ref);
  TerStats s;
  s.ref_words = r.size();

  std::int64_t dist = edit_distance(h, r);
  while (s.shifts < kMaxTerShifts && dist > 0) {
    std::int64_t best = dist;
    std::vector<std::string> best_seq;
    for (auto& cand : detail::shift_candidates(h, r)) {
      const std::int64_t d = edit_distance(cand, r);
      if (d < best) {
        best = d;
        best_seq = std::move(cand);
      }
    }
    if (best >= dist) break;
    h = std::move(best_seq);
    dist = best;
    ++s.shifts;
  }

  const EditAlignment a = edit_align(h, r);
  s.counts = a.counts;
  s.edits = static_cast<std::uint64_t>(a.cost) + s.shifts;
  return s;
}

inline double ter_from_stats(const TerStats& s) {
  if (s.ref_words == 0) {
    if (s.edits == 0) return 0.0;
    throw DataError("TER reference is empty");
  }
  return 100.0 * static_cast<double>(s.edits) / static_cast<double>(s.ref_words);
}

inline double ter(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                  TerStats* stats_out = nullptr) {
  if (hyps.size() != refs.size())
    throw DataError("TER: hypothesis count " + std::to_string(hyps.size()) +
                    " != reference count " + std::to_string(refs.size()));
  TerStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) total += ter_sentence(hyps[i], refs[i]);
  if (stats_out) *stats_out = total;
  return ter_from_stats(total);
}

// --- BLEU ------------------------------------------------------------------

// mteval-13a style tokenization: unescape a few HTML entities, split out
// ASCII punctuation, and detach periods/commas that do not sit between
// digits. Language independent.
inline std::string tokenize_13a(std::string_view text) {
  std::string s(text);
  for (const auto& [ent, ch] : {std::pair<const char*, char>{"&quot;", '"'},
                                {"&amp;", '&'},
                                {"&lt;", '<'},
                                {"&gt;", '>'}}) {
    std::size_t pos = 0;
    const std::string entity(ent);
    while ((pos = s.find(entity, pos)) != std::string::npos) {
      s.replace(pos, entity.size(), 1, ch);
      ++pos;
    }
  }

  auto in_punct_set = [](unsigned char c) {
    return (c >= 0x7B && c <= 0x7E) || (c >= 0x5B && c <= 0x60) || (c >= 0x20 && c <= 0x26) ||
           (c >= 0x28 && c <= 0x2B) || (c >= 0x3A && c <= 0x40) || c == 0x2F;
  };
  std::string a;
  a.reserve(s.size() * 2);
  for (unsigned char c : s) {
    if (in_punct_set(c)) {
      a.push_back(' ');
      a.push_back(static_cast<char>(c));
      a.push_back(' ');
    } else {
      a.push_back(static_cast<char>(c));
    }
  }

  auto is_digit = [](unsigned char c) { return c >= '0' && c <= '9'; };
  auto is_dot_comma = [](unsigned char c) { return c == '.' || c == ','; };

  std::string b;
  b.reserve(a.size() * 2);
  for (std::size_t i = 0; i < a.size();) {
    if (i + 1 < a.size() && !is_digit(a[i]) && is_dot_comma(a[i + 1])) {
      b.push_back(a[i]);
      b.push_back(' ');
      b.push_back(a[i + 1]);
      b.push_back(' ');
      i += 2;
    } else {
      b.push_back(a[i]);
      ++i;
    }
  }
  std::string c;
  c.reserve(b.size() * 2);
  for (std::size_t i = 0; i < b.size();) {
    if (i + 1 < b.size() && is_dot_comma(b[i]) && !is_digit(b[i + 1])) {
      c.push_back(' ');
      c.push_back(b[i]);
      c.push_back(' ');
      c.push_back(b[i + 1]);
      i += 2;
    } else {
      c.push_back(b[i]);
      ++i;
    }
  }
  std::string d;
  d.reserve(c.size() * 2);
  for (std::size_t i = 0; i < c.size();) {
    if (i + 1 < c.size() && is_digit(c[i]) && c[i + 1] == '-') {
      d.push_back(c[i]);
      d.push_back(' ');
      d.push_back('-');
      d.push_back(' ');
      i += 2;
    } else {
      d.push_back(c[i]);
      ++i;
    }
  }
  return d;  // split_words squeezes the whitespace
}

inline std::vector<std::string> bleu_words(const std::string& text) {
  return split_words(tokenize_13a(text));
}

inline constexpr int kBleuOrder = 4;

struct BleuStats {
  std::array<std::uint64_t, kBleuOrder> match{};  // clipped n-gram matches
  std::array<std::uint64_t, kBleuOrder> total{};  // hypothesis n-gram counts
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& o) {
    for (int n = 0; n < kBleuOrder; ++n) {
      match[n] += o.match[n];
      total[n] += o.total[n];
    }
    hyp_len += o.hyp_len;
    ref_len += o.ref_len;
    return *this;
  }
};

inline BleuStats bleu_sentence(const std::string& hyp, const std::string& ref) {
  const std::vector<std::string> h = bleu_words(hyp);
  const std::vector<std::string> r = bleu_words(ref);
  BleuStats s;
  s.hyp_len = h.size();
  s.ref_len = r.size();
  for (int n = 1; n <= kBleuOrder; ++n) {
    if (h.size() < static_cast<std::size_t>(n)) break;
    std::unordered_map<std::string, std::int64_t> ref_counts;
    if (r.size() >= static_cast<std::size_t>(n)) {
      for (std::size_t i = 0; i + n <= r.size(); ++i) {
        std::string key;
        for (int t = 0; t < n; ++t) {
          key += r[i + t];
          key.push_back('\x1f');
        }
        ++ref_counts[key];
      }
    }
    for (std::size_t i = 0; i + n <= h.size(); ++i) {
      std::string key;
      for (int t = 0; t < n; ++t) {
        key += h[i + t];
        key.push_back('\x1f');
      }
      ++s.total[n - 1];
      auto it = ref_counts.find(key);
      if (it != ref_counts.end() && it->second > 0) {
        --it->second;
        ++s.match[n - 1];
      }
    }
  }
  return s;
}

// Corpus BLEU-4: geometric mean of pooled clipped precisions times the
// brevity penalty. Zero when any order has no match.
inline double bleu_from_stats(const BleuStats& s) {
  if (s.hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 0; n < kBleuOrder; ++n) {
    if (s.total[n] == 0 || s.match[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(s.match[n]) / static_cast<double>(s.total[n]));
  }
  const double bp =
      std::exp(std::min(0.0, 1.0 - static_cast<double>(s.ref_len) / static_cast<double>(s.hyp_len)));
  return 100.0 * bp * std::exp(log_sum / kBleuOrder);
}

inline double bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                   BleuStats* stats_out = nullptr) {
  if (hyps.size() != refs.size())
    throw DataError("BLEU: hypothesis count " + std::to_string(hyps.size()) +
                    " != reference count " + std::to_string(refs.size()));
  BleuStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) total += bleu_sentence(hyps[i], refs[i]);
  if (stats_out) *stats_out = total;
  return bleu_from_stats(total);
}

// --- Reports ----------------------------------------------------------------

struct EvalReport {
  double cer = 0.0;
  double ter = 0.0;
  double bleu = 0.0;
  std::size_t sentence_count = 0;
  EditCounts cer_edits;
  EditCounts ter_edits;
  std::uint64_t ter_shifts = 0;
};

inline EvalReport evaluate(const std::vector<std::string>& hyps,
                           const std::vector<std::string>& refs,
                           CerDenominator denom = CerDenominator::reference) {
  EvalReport rep;
  rep.sentence_count = hyps.size();
  CerStats cs;
  TerStats ts;
  rep.cer = cer(hyps, refs, denom, &cs);
  rep.ter = ter(hyps, refs, &ts);
  rep.bleu = bleu(hyps, refs);
  rep.cer_edits = cs.counts;
  rep.ter_edits = ts.counts;
  rep.ter_shifts = ts.shifts;
  return rep;
}

// Scores the original source against the normalized reference: how far the
// spelling is from modern standards before any system runs.
inline EvalReport identity_baseline(const ParallelCorpus& corpus,
                                    CerDenominator denom = CerDenominator::reference) {
  std::vector<std::string> hyps, refs;
  hyps.reserve(corpus.pairs.size());
  refs.reserve(corpus.pairs.size());
  for (const auto& [src, tgt] : corpus.pairs) {
    hyps.push_back(src);
    refs.push_back(tgt);
  }
  return evaluate(hyps, refs, denom);
}

}  // namespace histnorm
