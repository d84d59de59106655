#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "histnorm/corpus.hpp"
#include "histnorm/error.hpp"

namespace histnorm {

// Backoff character n-gram model with modified Kneser-Ney smoothing.
//
// Stored probabilities are the interpolated estimates, so the backoff weight
// of a context is exactly its discount mass gamma(ctx). For every context the
// conditional distribution over the prediction alphabet sums to one.
//
// All stored values are log10, matching the ARPA convention.
struct NGramLM {
  int order = 5;
  std::unordered_map<std::u32string, double> prob;     // ngram  -> log10 p
  std::unordered_map<std::u32string, double> backoff;  // context -> log10 bow
  std::vector<char32_t> alphabet;                      // predicted symbols, sorted
  std::unordered_set<char32_t> vocab;                  // same as alphabet, as a set

  bool known(char32_t c) const { return vocab.count(c) != 0; }

  // p(symbol | context), walking down the backoff chain. Symbols outside the
  // vocabulary score as the unknown symbol. Context symbols never abort a
  // query; unseen contexts simply contribute no backoff weight.
  double cond_log10(std::u32string_view context, char32_t symbol) const {
    const char32_t w = known(symbol) ? symbol : kUnk;
    const std::size_t keep = std::min<std::size_t>(context.size(), order > 0 ? order - 1 : 0);
    std::u32string ctx(context.substr(context.size() - keep));
    double acc = 0.0;
    for (;;) {
      std::u32string gram = ctx;
      gram.push_back(w);
      if (auto it = prob.find(gram); it != prob.end()) return acc + it->second;
      if (ctx.empty()) return acc - 99.0;  // unreachable: unigrams cover the alphabet
      if (auto bt = backoff.find(ctx); bt != backoff.end()) acc += bt->second;
      ctx.erase(0, 1);
    }
  }

  // log10 probability of a full character sequence, BOS-padded, EOS-terminated.
  double sequence_log10(const std::u32string& seq) const {
    std::u32string padded;
    padded.reserve(seq.size() + order);
    padded.append(order - 1, kBos);
    padded += seq;
    padded.push_back(kEos);
    double total = 0.0;
    for (std::size_t t = static_cast<std::size_t>(order - 1); t < padded.size(); ++t) {
      const std::size_t ctx_begin = t - (order - 1);
      total += cond_log10(std::u32string_view(padded).substr(ctx_begin, order - 1), padded[t]);
    }
    return total;
  }

  // Exact conditional distribution over the prediction alphabet.
  std::vector<std::pair<char32_t, double>> continuations(std::u32string_view context) const {
    std::vector<std::pair<char32_t, double>> out;
    out.reserve(alphabet.size());
    for (char32_t w : alphabet) out.emplace_back(w, cond_log10(context, w));
    return out;
  }
};

namespace detail {

struct Discounts {
  double d1 = 0.5, d2 = 0.5, d3 = 0.5;

  double of(std::uint64_t count) const {
    if (count >= 3) return d3;
    return count == 2 ? d2 : d1;
  }
};

// Chen-Goodman discounts from count-of-counts. Tiny corpora can produce
// n1 = 0 or n2 = 0, where the estimator is undefined; a single absolute
// discount of 0.5 is used there instead.
inline Discounts estimate_discounts(const std::vector<std::pair<std::u32string, std::uint64_t>>& grams) {
  std::uint64_t n[5] = {0, 0, 0, 0, 0};
  for (const auto& [g, c] : grams)
    if (c >= 1 && c <= 4) ++n[c];
  Discounts d;
  if (n[1] == 0 || n[2] == 0) return d;
  const double y = static_cast<double>(n[1]) / (n[1] + 2.0 * n[2]);
  d.d1 = 1.0 - 2.0 * y * n[2] / n[1];
  d.d2 = 2.0 - 3.0 * y * n[3] / n[2];
  d.d3 = n[3] > 0 ? 3.0 - 4.0 * y * n[4] / n[3] : d.d2;
  d.d1 = std::clamp(d.d1, 0.0, 1.0);
  d.d2 = std::clamp(d.d2, 0.0, 2.0);
  d.d3 = std::clamp(d.d3, 0.0, 3.0);
  return d;
}

}  // namespace detail

// Trains a modified Kneser-Ney model of the given order.
//
// Counting scheme: each sentence is padded with (order-1) BOS symbols and one
// EOS; for every predicted position (real symbols and EOS) the k-grams ending
// there are counted, k = 1..order. Counts at the top order stay raw; lower
// orders use left-extension type counts, except grams starting with BOS which
// cannot be extended left and keep raw counts.
inline NGramLM train_lm(const std::vector<std::u32string>& sequences, int order) {
  if (order < 1) throw ParamError("LM order must be >= 1");
  if (sequences.empty()) throw DataError("LM training set is empty");

  std::vector<std::unordered_map<std::u32string, std::uint64_t>> raw(order + 1);
  for (const std::u32string& seq : sequences) {
    std::u32string padded;
    padded.reserve(seq.size() + order);
    padded.append(order - 1, kBos);
    padded += seq;
    padded.push_back(kEos);
    for (std::size_t t = static_cast<std::size_t>(order - 1); t < padded.size(); ++t) {
      for (int k = 1; k <= order; ++k)
        ++raw[k][padded.substr(t - k + 1, k)];
    }
  }

  // Adjusted counts.
  std::vector<std::unordered_map<std::u32string, std::uint64_t>> adj(order + 1);
  adj[order] = std::move(raw[order]);
  for (int k = order - 1; k >= 1; --k) {
    std::unordered_map<std::u32string, std::uint64_t> left_types;
    for (const auto& [g, c] : adj[k + 1]) ++left_types[g.substr(1)];
    for (const auto& [g, c] : raw[k])
      adj[k][g] = (g.front() == kBos) ? c : left_types[g];
  }

  // Sorted gram lists per order keep all float accumulation order-stable.
  std::vector<std::vector<std::pair<std::u32string, std::uint64_t>>> grams(order + 1);
  for (int k = 1; k <= order; ++k) {
    grams[k].assign(adj[k].begin(), adj[k].end());
    std::sort(grams[k].begin(), grams[k].end());
  }

  std::vector<detail::Discounts> disc(order + 1);
  for (int k = 1; k <= order; ++k) disc[k] = detail::estimate_discounts(grams[k]);

  NGramLM lm;
  lm.order = order;

  for (const auto& [g, c] : grams[1]) lm.alphabet.push_back(g.front());
  lm.alphabet.push_back(kUnk);
  std::sort(lm.alphabet.begin(), lm.alphabet.end());
  lm.vocab.insert(lm.alphabet.begin(), lm.alphabet.end());
  const double vocab_size = static_cast<double>(lm.alphabet.size());

  // Unigrams interpolate with the uniform distribution over the alphabet;
  // the unknown symbol receives its uniform share of the discount mass.
  {
    std::uint64_t denom = 0;
    double discount_sum = 0.0;
    for (const auto& [g, c] : grams[1]) {
      denom += c;
      discount_sum += disc[1].of(c);
    }
    const double gamma = discount_sum / static_cast<double>(denom);
    const double uniform_share = gamma / vocab_size;
    for (const auto& [g, c] : grams[1]) {
      const double p = (c - disc[1].of(c)) / static_cast<double>(denom) + uniform_share;
      lm.prob[g] = std::log10(p);
    }
    lm.prob[std::u32string(1, kUnk)] = std::log10(uniform_share);
  }

  for (int k = 2; k <= order; ++k) {
    // Context totals; grams[k] is sorted, so each context is a contiguous run.
    std::unordered_map<std::u32string, double> denom, discount_sum;
    for (const auto& [g, c] : grams[k]) {
      const std::u32string ctx = g.substr(0, k - 1);
      denom[ctx] += static_cast<double>(c);
      discount_sum[ctx] += disc[k].of(c);
    }
    for (const auto& [g, c] : grams[k]) {
      const std::u32string ctx = g.substr(0, k - 1);
      const double d = denom[ctx];
      const double gamma = discount_sum[ctx] / d;
      const double lower = std::pow(10.0, lm.cond_log10(std::u32string_view(ctx).substr(1), g.back()));
      const double p = (c - disc[k].of(c)) / d + gamma * lower;
      lm.prob[g] = std::log10(p);
      lm.backoff[ctx] = std::log10(gamma);
    }
  }
  return lm;
}

// --- ARPA serialization ---------------------------------------------------

namespace detail {

inline std::string arpa_symbol(char32_t c) {
  switch (c) {
    case kBos: return "<s>";
    case kEos: return "</s>";
    case kUnk: return "<unk>";
    case kBoundary: {
      std::string s;
      utf8::append(s, kBoundaryGlyph);
      return s;
    }
    default: {
      std::string s;
      utf8::append(s, c);
      return s;
    }
  }
}

inline char32_t parse_arpa_symbol(const std::string& token) {
  if (token == "<s>") return kBos;
  if (token == "</s>") return kEos;
  if (token == "<unk>") return kUnk;
  const std::u32string cps = utf8::decode(token, "ARPA symbol");
  if (cps.size() != 1) throw DataError("ARPA symbol is not a single character: " + token);
  return cps[0] == kBoundaryGlyph ? kBoundary : cps[0];
}

inline std::string format_log10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// Writes the model in ARPA text form. Grams that only exist as backoff
// contexts (pure BOS runs) get the conventional -99 placeholder probability.
inline void write_arpa(const NGramLM& lm, std::ostream& out) {
  std::vector<std::vector<std::u32string>> by_order(lm.order + 1);
  {
    std::unordered_set<std::u32string> seen;
    for (const auto& [g, p] : lm.prob) seen.insert(g);
    for (const auto& [g, b] : lm.backoff) seen.insert(g);
    for (const auto& g : seen) by_order[g.size()].push_back(g);
    for (auto& v : by_order) std::sort(v.begin(), v.end());
  }

  out << "\\data\\\n";
  for (int k = 1; k <= lm.order; ++k)
    out << "ngram " << k << "=" << by_order[k].size() << "\n";
  for (int k = 1; k <= lm.order; ++k) {
    out << "\n\\" << k << "-grams:\n";
    for (const std::u32string& g : by_order[k]) {
      const auto pit = lm.prob.find(g);
      out << (pit != lm.prob.end() ? detail::format_log10(pit->second) : "-99");
      out << '\t';
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) out << ' ';
        out << detail::arpa_symbol(g[i]);
      }
      if (auto bit = lm.backoff.find(g); bit != lm.backoff.end())
        out << '\t' << detail::format_log10(bit->second);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

inline NGramLM read_arpa(std::istream& in) {
  NGramLM lm;
  lm.order = 0;
  std::string line;
  bool in_data = false;
  int current = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "\\data\\") {
      in_data = true;
      continue;
    }
    if (line == "\\end\\") break;
    if (line.rfind("ngram ", 0) == 0) continue;
    if (line.front() == '\\') {
      const auto dash = line.find('-');
      if (dash == std::string::npos) throw DataError("malformed ARPA section header: " + line);
      current = std::stoi(line.substr(1, dash - 1));
      lm.order = std::max(lm.order, current);
      continue;
    }
    if (!in_data || current == 0) throw DataError("ARPA entry outside any section: " + line);

    const auto tab1 = line.find('\t');
    if (tab1 == std::string::npos) throw DataError("malformed ARPA line: " + line);
    const auto tab2 = line.find('\t', tab1 + 1);
    const std::string prob_field = line.substr(0, tab1);
    const std::string gram_field = line.substr(tab1 + 1, tab2 == std::string::npos
                                                             ? std::string::npos
                                                             : tab2 - tab1 - 1);
    std::u32string gram;
    std::size_t pos = 0;
    while (pos <= gram_field.size()) {
      const auto sp = gram_field.find(' ', pos);
      const std::string token = gram_field.substr(pos, sp == std::string::npos ? std::string::npos : sp - pos);
      gram.push_back(detail::parse_arpa_symbol(token));
      if (sp == std::string::npos) break;
      pos = sp + 1;
    }
    if (static_cast<int>(gram.size()) != current)
      throw DataError("ARPA gram length does not match its section: " + line);

    if (prob_field != "-99") lm.prob[gram] = std::strtod(prob_field.c_str(), nullptr);
    if (tab2 != std::string::npos)
      lm.backoff[gram] = std::strtod(line.c_str() + tab2 + 1, nullptr);
  }
  if (lm.order == 0) throw DataError("ARPA file has no n-gram sections");

  for (const auto& [g, p] : lm.prob)
    if (g.size() == 1) lm.alphabet.push_back(g.front());
  std::sort(lm.alphabet.begin(), lm.alphabet.end());
  lm.vocab.insert(lm.alphabet.begin(), lm.alphabet.end());
  return lm;
}

}  // namespace histnorm
