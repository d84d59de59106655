#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "histnorm/corpus.hpp"
#include "histnorm/edit.hpp"
#include "histnorm/error.hpp"

namespace histnorm {

// Character alignment of a sentence pair: the matched/substituted positions
// of a minimal Levenshtein path. Monotone by construction.
struct Alignment {
  std::vector<std::pair<std::size_t, std::size_t>> links;
};

inline Alignment char_align(const std::u32string& src, const std::u32string& tgt) {
  return Alignment{edit_align(src, tgt).links};
}

struct PhraseOccurrence {
  std::u32string src;
  std::u32string tgt;
};

// Alignment-consistent segment pairs up to max_len on both sides. Spans of
// entirely unaligned source symbols are emitted with an empty target, which
// is how character deletions enter the table. Unaligned-edge extension is
// not performed.
inline std::vector<PhraseOccurrence> extract_phrases(const Alignment& a,
                                                     const std::u32string& src,
                                                     const std::u32string& tgt,
                                                     int max_len) {
  if (max_len < 1) throw ParamError("max phrase length must be >= 1");
  std::vector<PhraseOccurrence> out;
  const std::size_t n = src.size();
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    for (std::size_t i2 = i1; i2 < std::min(n, i1 + static_cast<std::size_t>(max_len)); ++i2) {
      // Target cover of the source span.
      bool any = false;
      std::size_t j1 = 0, j2 = 0;
      for (const auto& [i, j] : a.links) {
        if (i < i1 || i > i2) continue;
        if (!any) {
          j1 = j2 = j;
          any = true;
        } else {
          j1 = std::min(j1, j);
          j2 = std::max(j2, j);
        }
      }
      if (!any) {
        out.push_back({src.substr(i1, i2 - i1 + 1), std::u32string()});
        continue;
      }
      if (j2 - j1 + 1 > static_cast<std::size_t>(max_len)) continue;
      bool consistent = true;
      for (const auto& [i, j] : a.links) {
        if (j >= j1 && j <= j2 && (i < i1 || i > i2)) {
          consistent = false;
          break;
        }
      }
      if (consistent)
        out.push_back({src.substr(i1, i2 - i1 + 1), tgt.substr(j1, j2 - j1 + 1)});
    }
  }
  return out;
}

struct PhrasePair {
  std::u32string src;
  std::u32string tgt;
  double log_p_tgt_src = 0.0;  // log10 p(tgt|src)
  double log_p_src_tgt = 0.0;  // log10 p(src|tgt)
  std::uint64_t count = 0;
};

struct PhraseTable {
  std::map<std::u32string, std::vector<PhrasePair>> entries;  // keyed by src segment
  int max_len = 6;

  const std::vector<PhrasePair>* find(const std::u32string& src) const {
    auto it = entries.find(src);
    return it == entries.end() ? nullptr : &it->second;
  }
};

// Relative-frequency phrase table over the extracted occurrences. Every
// source character observed in training gets an identity entry backed by one
// pseudo-occurrence, so copying stays available to the decoder even for
// characters that were always rewritten.
inline PhraseTable build_phrase_table(const ParallelCorpus& corpus, int max_len,
                                      std::uint64_t min_count = 1) {
  if (corpus.pairs.empty()) throw DataError("cannot build a phrase table from an empty corpus");
  PhraseTable table;
  table.max_len = max_len;

  std::map<std::pair<std::u32string, std::u32string>, std::uint64_t> counts;
  std::unordered_set<char32_t> src_chars;
  for (const auto& [src_text, tgt_text] : corpus.pairs) {
    const std::u32string src = char_tokenize(src_text);
    const std::u32string tgt = char_tokenize(tgt_text);
    src_chars.insert(src.begin(), src.end());
    const Alignment a = char_align(src, tgt);
    for (PhraseOccurrence& occ : extract_phrases(a, src, tgt, max_len))
      ++counts[{std::move(occ.src), std::move(occ.tgt)}];
  }
  for (char32_t c : src_chars) ++counts[{std::u32string(1, c), std::u32string(1, c)}];

  std::map<std::u32string, std::uint64_t> src_totals, tgt_totals;
  for (const auto& [key, c] : counts) {
    src_totals[key.first] += c;
    tgt_totals[key.second] += c;
  }

  for (const auto& [key, c] : counts) {
    if (c < min_count) continue;
    PhrasePair pair;
    pair.src = key.first;
    pair.tgt = key.second;
    pair.count = c;
    pair.log_p_tgt_src = std::log10(static_cast<double>(c) / src_totals[key.first]);
    pair.log_p_src_tgt = std::log10(static_cast<double>(c) / tgt_totals[key.second]);
    table.entries[pair.src].push_back(std::move(pair));
  }
  for (auto& [src, list] : table.entries) {
    std::sort(list.begin(), list.end(), [](const PhrasePair& a, const PhrasePair& b) {
      if (a.log_p_tgt_src != b.log_p_tgt_src) return a.log_p_tgt_src > b.log_p_tgt_src;
      return a.tgt < b.tgt;
    });
  }
  return table;
}

namespace detail {

inline std::string render_segment(const std::u32string& seg) {
  std::string out;
  for (char32_t c : seg) utf8::append(out, c == kBoundary ? kBoundaryGlyph : c);
  return out;
}

inline std::u32string parse_segment(std::string_view text) {
  std::u32string seg = utf8::decode(text, "phrase segment");
  for (char32_t& c : seg)
    if (c == kBoundaryGlyph) c = kBoundary;
  return seg;
}

inline std::string format_log10_pt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline void write_phrase_table(const PhraseTable& table, std::ostream& out) {
  for (const auto& [src, list] : table.entries) {
    for (const PhrasePair& p : list) {
      out << detail::render_segment(p.src) << " ||| " << detail::render_segment(p.tgt) << " ||| "
          << detail::format_log10_pt(p.log_p_tgt_src) << " ||| "
          << detail::format_log10_pt(p.log_p_src_tgt) << " ||| " << p.count << "\n";
    }
  }
}

inline PhraseTable read_phrase_table(std::istream& in) {
  PhraseTable table;
  table.max_len = 1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (;;) {
      const auto sep = line.find(" ||| ", pos);
      if (sep == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, sep - pos));
      pos = sep + 5;
    }
    if (fields.size() != 5)
      throw DataError("phrase table line " + std::to_string(lineno) + ": expected 5 fields, got " +
                      std::to_string(fields.size()));
    PhrasePair p;
    p.src = detail::parse_segment(fields[0]);
    p.tgt = detail::parse_segment(fields[1]);
    p.log_p_tgt_src = std::strtod(fields[2].c_str(), nullptr);
    p.log_p_src_tgt = std::strtod(fields[3].c_str(), nullptr);
    p.count = std::strtoull(fields[4].c_str(), nullptr, 10);
    if (p.src.empty())
      throw DataError("phrase table line " + std::to_string(lineno) + ": empty source segment");
    table.max_len = std::max(table.max_len, static_cast<int>(std::max(p.src.size(), p.tgt.size())));
    table.entries[p.src].push_back(std::move(p));
  }
  return table;
}

}  // namespace histnorm
