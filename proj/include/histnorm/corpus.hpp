#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "histnorm/edit.hpp"
#include "histnorm/error.hpp"
#include "histnorm/utf8.hpp"

namespace histnorm {

// Reserved symbols live in the private use area so they cannot collide with
// corpus characters. The word boundary is rendered as U+2581 in dumps.
inline constexpr char32_t kBoundary = 0xE000;
inline constexpr char32_t kBos = 0xE001;
inline constexpr char32_t kEos = 0xE002;
inline constexpr char32_t kUnk = 0xE003;

inline constexpr char32_t kBoundaryGlyph = 0x2581;  // ▁

enum class Split { train, dev, test };

inline const char* split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    default: return "test";
  }
}

struct ParallelCorpus {
  std::vector<std::pair<std::string, std::string>> pairs;  // (source, target)
  std::string name;
  Split split = Split::train;

  std::size_t size() const { return pairs.size(); }
};

struct CorpusStats {
  std::uint64_t sentences = 0;
  std::uint64_t tokens_src = 0;
  std::uint64_t tokens_tgt = 0;
  std::uint64_t vocab_src = 0;
  std::uint64_t vocab_tgt = 0;
  std::uint64_t nonmodern_words = 0;
};

inline std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (static_cast<unsigned char>(s[b]) <= ' ')) ++b;
  while (e > b && (static_cast<unsigned char>(s[e - 1]) <= ' ')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::u32string probe;
    if (!utf8::try_decode(line, probe))
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": invalid UTF-8");
    lines.push_back(strip(line));
  }
  return lines;
}

inline ParallelCorpus load_parallel(const std::filesystem::path& source_path,
                                    const std::filesystem::path& target_path,
                                    std::string name, Split split) {
  std::vector<std::string> src = read_lines(source_path);
  std::vector<std::string> tgt = read_lines(target_path);
  if (src.size() != tgt.size())
    throw DataError("line count mismatch: " + source_path.string() + " has " +
                    std::to_string(src.size()) + " lines, " + target_path.string() + " has " +
                    std::to_string(tgt.size()));
  ParallelCorpus corpus;
  corpus.name = std::move(name);
  corpus.split = split;
  corpus.pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    corpus.pairs.emplace_back(std::move(src[i]), std::move(tgt[i]));
  return corpus;
}

// Splits a sentence into character symbols. Every maximal whitespace run
// between words becomes a single boundary marker; the sequence never starts
// or ends with a marker.
inline std::u32string char_tokenize(std::string_view sentence) {
  const std::u32string chars = utf8::decode(sentence, "sentence");
  std::u32string out;
  out.reserve(chars.size());
  bool pending_boundary = false;
  for (char32_t c : chars) {
    if (utf8::is_space(c)) {
      if (!out.empty()) pending_boundary = true;
      continue;
    }
    if (pending_boundary) {
      out.push_back(kBoundary);
      pending_boundary = false;
    }
    out.push_back(c);
  }
  return out;
}

inline std::string detokenize(const std::u32string& seq) {
  if (!seq.empty() && (seq.front() == kBoundary || seq.back() == kBoundary))
    throw DataError("character sequence starts or ends with a boundary marker");
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] == kBoundary) {
      if (i + 1 < seq.size() && seq[i + 1] == kBoundary)
        throw DataError("character sequence has adjacent boundary markers");
      out.push_back(' ');
    } else {
      utf8::append(out, seq[i]);
    }
  }
  return out;
}

inline std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  const std::u32string chars = utf8::decode(text, "sentence");
  std::u32string cur;
  for (char32_t c : chars) {
    if (utf8::is_space(c)) {
      if (!cur.empty()) {
        words.push_back(utf8::encode(cur));
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) words.push_back(utf8::encode(cur));
  return words;
}

// Table-style corpus statistics. A source word counts as non-modern when the
// word-level Levenshtein alignment of the pair links it to a different target
// word or to a gap.
inline CorpusStats corpus_stats(const ParallelCorpus& corpus) {
  CorpusStats stats;
  stats.sentences = corpus.pairs.size();
  std::unordered_set<std::string> vocab_src, vocab_tgt;
  for (const auto& [src, tgt] : corpus.pairs) {
    const std::vector<std::string> sw = split_words(src);
    const std::vector<std::string> tw = split_words(tgt);
    stats.tokens_src += sw.size();
    stats.tokens_tgt += tw.size();
    vocab_src.insert(sw.begin(), sw.end());
    vocab_tgt.insert(tw.begin(), tw.end());

    const EditAlignment a = edit_align(sw, tw);
    std::vector<bool> matched(sw.size(), false);
    for (const auto& [i, j] : a.links)
      if (sw[i] == tw[j]) matched[i] = true;
    for (bool m : matched)
      if (!m) ++stats.nonmodern_words;
  }
  stats.vocab_src = vocab_src.size();
  stats.vocab_tgt = vocab_tgt.size();
  return stats;
}

}  // namespace histnorm
