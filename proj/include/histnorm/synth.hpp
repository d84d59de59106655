#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "histnorm/corpus.hpp"
#include "histnorm/edit.hpp"
#include "histnorm/error.hpp"
#include "histnorm/significance.hpp"

namespace histnorm {

enum class RuleContext { word_initial, word_final, anywhere };

inline const char* rule_context_name(RuleContext c) {
  switch (c) {
    case RuleContext::word_initial: return "word-initial";
    case RuleContext::word_final: return "word-final";
    default: return "anywhere";
  }
}

inline RuleContext parse_rule_context(const std::string& name) {
  if (name == "word-initial") return RuleContext::word_initial;
  if (name == "word-final") return RuleContext::word_final;
  if (name == "anywhere") return RuleContext::anywhere;
  throw DataError("unknown rule context: " + name);
}

// A degradation rule: where `src` matches in a modern word (subject to the
// context constraint), it is rewritten to `tgt` with the given probability.
struct Rule {
  RuleContext context = RuleContext::anywhere;
  std::u32string src;
  std::u32string tgt;
  double prob = 1.0;
};

struct RuleSet {
  std::vector<Rule> rules;
};

// Spanish-flavored defaults: the typical 17th-century divergences (v/u,
// x/j, cedilla, dropped accents, doubled s) in the modern-to-historical
// direction.
inline RuleSet default_rule_set() {
  RuleSet rs;
  auto add = [&](RuleContext c, const char* src, const char* tgt, double p) {
    rs.rules.push_back({c, utf8::decode(src, "rule"), utf8::decode(tgt, "rule"), p});
  };
  add(RuleContext::word_initial, "u", "v", 0.9);
  add(RuleContext::anywhere, "j", "x", 0.9);
  add(RuleContext::anywhere, "z", "ç", 0.9);          // z -> ç
  add(RuleContext::anywhere, "ái", "ay", 0.9);        // ái -> ay
  add(RuleContext::anywhere, "á", "a", 0.7);          // á -> a
  add(RuleContext::anywhere, "é", "e", 0.7);          // é -> e
  add(RuleContext::anywhere, "í", "i", 0.7);          // í -> i
  add(RuleContext::anywhere, "ó", "o", 0.7);          // ó -> o
  add(RuleContext::anywhere, "ú", "u", 0.7);          // ú -> u
  add(RuleContext::anywhere, "eba", "eua", 0.8);           // cebada -> ceuada
  add(RuleContext::word_final, "s", "ss", 0.4);            // eso -> esso (reversed)
  return rs;
}

// TSV: context<TAB>src<TAB>tgt<TAB>prob
inline RuleSet read_rules(std::istream& in) {
  RuleSet rs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (;;) {
      const auto tab = line.find('\t', pos);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    if (fields.size() != 4)
      throw DataError("rule line " + std::to_string(lineno) + ": expected 4 tab-separated fields");
    Rule r;
    r.context = parse_rule_context(fields[0]);
    r.src = utf8::decode(fields[1], "rule source");
    r.tgt = utf8::decode(fields[2], "rule target");
    r.prob = std::strtod(fields[3].c_str(), nullptr);
    if (r.src.empty() && r.tgt.empty())
      throw DataError("rule line " + std::to_string(lineno) + ": both segments empty");
    if (r.prob < 0.0 || r.prob > 1.0)
      throw DataError("rule line " + std::to_string(lineno) + ": probability outside [0, 1]");
    rs.rules.push_back(std::move(r));
  }
  return rs;
}

inline void write_rules(const RuleSet& rs, std::ostream& out) {
  for (const Rule& r : rs.rules) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", r.prob);
    out << rule_context_name(r.context) << '\t' << utf8::encode(r.src) << '\t'
        << utf8::encode(r.tgt) << '\t' << buf << '\n';
  }
}

struct DegradeResult {
  ParallelCorpus corpus;             // source = degraded, target = original modern
  std::uint64_t applications = 0;    // rules fired
  std::uint64_t approx_edit_chars = 0;  // sum of per-application edit costs
};

namespace detail {

inline bool rule_matches(const Rule& r, const std::u32string& word, std::size_t pos) {
  if (pos + r.src.size() > word.size()) return false;
  for (std::size_t t = 0; t < r.src.size(); ++t)
    if (word[pos + t] != r.src[t]) return false;
  switch (r.context) {
    case RuleContext::word_initial: return pos == 0;
    case RuleContext::word_final: return pos + r.src.size() == word.size();
    default: return true;
  }
}

}  // namespace detail

// Applies the rules stochastically, left to right and non-overlapping, to
// each word of each sentence. The first matching rule in list order whose
// coin comes up is applied. Deterministic for a fixed seed.
inline DegradeResult degrade(const std::vector<std::string>& modern, const RuleSet& rules,
                             std::uint64_t seed, std::string name = "synthetic",
                             Split split = Split::train) {
  DegradeResult res;
  res.corpus.name = std::move(name);
  res.corpus.split = split;
  SplitMix64 rng = stream_for(seed, 0);

  for (const std::string& sentence : modern) {
    const std::u32string chars = utf8::decode(sentence, "modern sentence");
    std::u32string out;
    out.reserve(chars.size() + 8);

    auto process_word = [&](const std::u32string& word) {
      std::size_t pos = 0;
      while (pos < word.size()) {
        bool fired = false;
        for (const Rule& r : rules.rules) {
          if (!detail::rule_matches(r, word, pos)) continue;
          if (rng.uniform() >= r.prob) continue;
          out += r.tgt;
          ++res.applications;
          res.approx_edit_chars += static_cast<std::uint64_t>(edit_distance(r.src, r.tgt));
          if (r.src.empty()) {
            // Insertion rule: consume the current character too, so the
            // scan always advances.
            out.push_back(word[pos]);
            ++pos;
          } else {
            pos += r.src.size();
          }
          fired = true;
          break;
        }
        if (!fired) {
          out.push_back(word[pos]);
          ++pos;
        }
      }
      // Insertions at the very end of the word.
      for (const Rule& r : rules.rules) {
        if (!r.src.empty() || r.context == RuleContext::word_initial) continue;
        if (rng.uniform() >= r.prob) continue;
        out += r.tgt;
        ++res.applications;
        res.approx_edit_chars += static_cast<std::uint64_t>(r.tgt.size());
        break;
      }
    };

    std::size_t word_begin = 0;
    for (std::size_t i = 0; i <= chars.size(); ++i) {
      if (i == chars.size() || utf8::is_space(chars[i])) {
        if (i > word_begin) process_word(chars.substr(word_begin, i - word_begin));
        if (i < chars.size()) out.push_back(chars[i]);
        word_begin = i + 1;
      }
    }
    res.corpus.pairs.emplace_back(utf8::encode(out), sentence);
  }
  return res;
}

}  // namespace histnorm
