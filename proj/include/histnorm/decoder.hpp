#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "histnorm/align.hpp"
#include "histnorm/corpus.hpp"
#include "histnorm/error.hpp"
#include "histnorm/lm.hpp"

namespace histnorm {

struct DecodeError : Error {
  using Error::Error;
};

// Log-linear feature weights: forward/reverse phrase probabilities, LM score
// and an output-length penalty (the feature counts output symbols, so the
// weight is typically negative).
struct FeatureWeights {
  double tm_fwd = 1.0;
  double tm_rev = 1.0;
  double lm = 1.0;
  double penalty = 1.0;
};

struct FeatureTotals {
  double tm_fwd = 0.0;
  double tm_rev = 0.0;
  double lm = 0.0;
  double penalty = 0.0;
};

inline double score_hypothesis(const FeatureTotals& f, const FeatureWeights& w) {
  return f.tm_fwd * w.tm_fwd + f.tm_rev * w.tm_rev + f.lm * w.lm + f.penalty * w.penalty;
}

struct Hypothesis {
  std::size_t consumed = 0;
  std::u32string output;
  FeatureTotals feats;
  double score = 0.0;
};

struct DecoderConfig {
  int beam_size = 12;
  int max_phrase_len = 6;
  bool oov_copy = true;  // copy source characters missing from the table

  // Feature contribution of an OOV copy on both phrase directions.
  static constexpr double kOovLog10 = -2.0;
};

namespace detail {

struct BeamHyp {
  Hypothesis hyp;
  std::u32string lm_state;  // last (order-1) symbols of the BOS-padded output
};

inline bool better(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.output < b.output;
}

}  // namespace detail

// Monotone beam-search decoder. Hypotheses are stratified by the number of
// consumed source symbols; within a stratum they recombine on the LM state
// and only the top beam_size survive. Ties break toward the lexicographically
// smaller output.
inline Hypothesis decode(const std::u32string& src, const PhraseTable& table, const NGramLM& lm,
                         const FeatureWeights& w, const DecoderConfig& cfg = {}) {
  if (cfg.beam_size < 1) throw ParamError("beam size must be >= 1");
  const std::size_t n = src.size();
  const std::size_t state_len = lm.order > 1 ? static_cast<std::size_t>(lm.order - 1) : 0;

  using Stack = std::unordered_map<std::u32string, detail::BeamHyp>;
  std::vector<Stack> stacks(n + 1);

  detail::BeamHyp init;
  init.lm_state.assign(state_len, kBos);
  init.hyp.score = 0.0;
  stacks[0].emplace(init.lm_state, init);

  bool any_final = false;
  detail::BeamHyp best_final;

  auto offer = [&](Stack& stack, detail::BeamHyp&& cand) {
    auto [it, inserted] = stack.try_emplace(cand.lm_state, cand);
    if (!inserted && detail::better(cand.hyp, it->second.hyp)) it->second = std::move(cand);
  };

  auto extend = [&](const detail::BeamHyp& h, const std::u32string& src_seg,
                    const std::u32string& tgt_seg, double lp_ts, double lp_st) {
    detail::BeamHyp next = h;
    next.hyp.consumed += src_seg.size();
    next.hyp.feats.tm_fwd += lp_ts;
    next.hyp.feats.tm_rev += lp_st;
    for (char32_t sym : tgt_seg) {
      next.hyp.feats.lm += lm.cond_log10(next.lm_state, sym);
      if (state_len > 0) {
        next.lm_state.push_back(sym);
        if (next.lm_state.size() > state_len) next.lm_state.erase(0, 1);
      }
    }
    next.hyp.feats.penalty += static_cast<double>(tgt_seg.size());
    next.hyp.output += tgt_seg;
    if (next.hyp.consumed == n) {
      next.hyp.feats.lm += lm.cond_log10(next.lm_state, kEos);
      next.hyp.score = score_hypothesis(next.hyp.feats, w);
      if (!any_final || detail::better(next.hyp, best_final.hyp)) {
        best_final = std::move(next);
        any_final = true;
      }
    } else {
      next.hyp.score = score_hypothesis(next.hyp.feats, w);
      offer(stacks[next.hyp.consumed], std::move(next));
    }
  };

  if (n == 0) {
    detail::BeamHyp done = init;
    done.hyp.feats.lm = lm.cond_log10(done.lm_state, kEos);
    done.hyp.score = score_hypothesis(done.hyp.feats, w);
    return done.hyp;
  }

  std::vector<detail::BeamHyp> live;
  for (std::size_t c = 0; c < n; ++c) {
    if (stacks[c].empty()) continue;
    live.clear();
    live.reserve(stacks[c].size());
    for (auto& [state, h] : stacks[c]) live.push_back(std::move(h));
    std::sort(live.begin(), live.end(), [](const detail::BeamHyp& a, const detail::BeamHyp& b) {
      return detail::better(a.hyp, b.hyp);
    });
    if (live.size() > static_cast<std::size_t>(cfg.beam_size)) live.resize(cfg.beam_size);
    stacks[c].clear();

    for (const detail::BeamHyp& h : live) {
      const std::size_t remaining = n - c;
      const std::size_t max_seg = std::min<std::size_t>(cfg.max_phrase_len, remaining);
      bool unit_covered = false;
      for (std::size_t len = 1; len <= max_seg; ++len) {
        const std::u32string seg = src.substr(c, len);
        if (const auto* list = table.find(seg)) {
          if (len == 1) unit_covered = true;
          for (const PhrasePair& p : *list)
            extend(h, seg, p.tgt, p.log_p_tgt_src, p.log_p_src_tgt);
        }
      }
      if (!unit_covered && cfg.oov_copy) {
        const std::u32string seg = src.substr(c, 1);
        extend(h, seg, seg, DecoderConfig::kOovLog10, DecoderConfig::kOovLog10);
      }
    }
  }

  if (!any_final)
    throw DecodeError("no hypothesis covers the full input (a source character has no "
                      "table entry and OOV copying is disabled)");
  return best_final.hyp;
}

// Collapses adjacent boundary markers and strips markers from the edges.
// Returns the number of markers removed.
inline std::size_t repair_boundaries(std::u32string& seq) {
  std::u32string fixed;
  fixed.reserve(seq.size());
  std::size_t removed = 0;
  for (char32_t c : seq) {
    if (c == kBoundary && (fixed.empty() || fixed.back() == kBoundary)) {
      ++removed;
      continue;
    }
    fixed.push_back(c);
  }
  while (!fixed.empty() && fixed.back() == kBoundary) {
    fixed.pop_back();
    ++removed;
  }
  seq = std::move(fixed);
  return removed;
}

struct NormalizeStats {
  std::size_t sentences = 0;
  std::size_t boundary_repairs = 0;
};

// Batch driver: decodes each line and detokenizes, preserving order.
inline NormalizeStats normalize_lines(const std::vector<std::string>& lines,
                                      const PhraseTable& table, const NGramLM& lm,
                                      const FeatureWeights& w, const DecoderConfig& cfg,
                                      std::vector<std::string>& out) {
  NormalizeStats stats;
  out.clear();
  out.reserve(lines.size());
  for (const std::string& line : lines) {
    Hypothesis hyp = decode(char_tokenize(line), table, lm, w, cfg);
    stats.boundary_repairs += repair_boundaries(hyp.output);
    out.push_back(detokenize(hyp.output));
    ++stats.sentences;
  }
  return stats;
}

}  // namespace histnorm
