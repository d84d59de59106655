#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "histnorm/corpus.hpp"
#include "histnorm/decoder.hpp"
#include "histnorm/error.hpp"
#include "histnorm/metrics.hpp"
#include "histnorm/significance.hpp"

namespace histnorm {

struct TuneConfig {
  Metric objective = Metric::bleu;  // maximize BLEU / minimize CER or TER
  int restarts = 8;
  int iterations = 20;
  std::uint64_t seed = 1;
  double initial_step = 1.0;
  double min_step = 1e-3;
  int threads = 1;
};

struct TuneResult {
  FeatureWeights weights;
  double objective = 0.0;  // signed: higher is better
  int restart = 0;
  std::vector<std::vector<double>> traces;  // accepted objective values per restart
};

namespace detail {

inline double& weight_coord(FeatureWeights& w, int i) {
  switch (i) {
    case 0: return w.tm_fwd;
    case 1: return w.tm_rev;
    case 2: return w.lm;
    default: return w.penalty;
  }
}

inline std::string format_weights(const FeatureWeights& w) {
  std::ostringstream os;
  os << "tm_fwd=" << w.tm_fwd << " tm_rev=" << w.tm_rev << " lm=" << w.lm
     << " penalty=" << w.penalty;
  return os.str();
}

}  // namespace detail

// Weight optimization by coordinate ascent with random restarts on the
// decode-then-score dev objective. Restart 0 starts from all-ones weights;
// the step halves after a sweep with no accepted move. Deterministic for a
// fixed seed: restart r draws from its own RNG stream, and ties across
// restarts resolve to the lowest restart index.
inline TuneResult tune_weights(const ParallelCorpus& dev, const PhraseTable& table,
                               const NGramLM& lm, const TuneConfig& cfg,
                               const DecoderConfig& dcfg = {}) {
  if (dev.pairs.empty()) throw DataError("tuning requires a non-empty dev corpus");
  if (cfg.restarts < 1 || cfg.iterations < 1)
    throw ParamError("tuner restarts and iterations must be >= 1");

  std::vector<std::u32string> sources;
  std::vector<std::string> refs;
  sources.reserve(dev.pairs.size());
  refs.reserve(dev.pairs.size());
  for (const auto& [src, tgt] : dev.pairs) {
    sources.push_back(char_tokenize(src));
    refs.push_back(tgt);
  }

  auto objective_of = [&](const FeatureWeights& w) {
    std::vector<std::string> hyps;
    hyps.reserve(sources.size());
    for (const std::u32string& src : sources) {
      try {
        Hypothesis hyp = decode(src, table, lm, w, dcfg);
        repair_boundaries(hyp.output);
        hyps.push_back(detokenize(hyp.output));
      } catch (const DecodeError& e) {
        throw Error(std::string(e.what()) + " [while tuning with weights " +
                    detail::format_weights(w) + "]");
      }
    }
    switch (cfg.objective) {
      case Metric::cer: return signed_metric(Metric::cer, cer(hyps, refs));
      case Metric::ter: return signed_metric(Metric::ter, ter(hyps, refs));
      default: return bleu(hyps, refs);
    }
  };

  struct RestartOut {
    FeatureWeights weights;
    double objective = 0.0;
    std::vector<double> trace;
  };
  std::vector<RestartOut> outs(cfg.restarts);

  auto run_restart = [&](int r) {
    FeatureWeights w;
    if (r > 0) {
      SplitMix64 rng = stream_for(cfg.seed, static_cast<std::uint64_t>(r));
      w.tm_fwd = rng.uniform() * 2.0;
      w.tm_rev = rng.uniform() * 2.0;
      w.lm = rng.uniform() * 2.0;
      w.penalty = rng.uniform() * 2.0 - 1.0;
    }
    RestartOut out;
    out.weights = w;
    out.objective = objective_of(w);
    out.trace.push_back(out.objective);

    double step = cfg.initial_step;
    for (int iter = 0; iter < cfg.iterations; ++iter) {
      bool improved = false;
      for (int coord = 0; coord < 4; ++coord) {
        for (double dir : {1.0, -1.0}) {
          FeatureWeights probe = out.weights;
          detail::weight_coord(probe, coord) += dir * step;
          const double obj = objective_of(probe);
          if (obj > out.objective) {
            out.weights = probe;
            out.objective = obj;
            out.trace.push_back(obj);
            improved = true;
          }
        }
      }
      if (!improved) {
        step *= 0.5;
        if (step < cfg.min_step) break;
      }
    }
    outs[r] = std::move(out);
  };

  const int workers = std::max(1, std::min(cfg.threads, cfg.restarts));
  if (workers == 1) {
    for (int r = 0; r < cfg.restarts; ++r) run_restart(r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (int r = t; r < cfg.restarts; r += workers) run_restart(r);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  TuneResult result;
  result.restart = 0;
  result.weights = outs[0].weights;
  result.objective = outs[0].objective;
  for (int r = 1; r < cfg.restarts; ++r) {
    if (outs[r].objective > result.objective) {
      result.restart = r;
      result.weights = outs[r].weights;
      result.objective = outs[r].objective;
    }
  }
  for (RestartOut& o : outs) result.traces.push_back(std::move(o.trace));
  return result;
}

inline void write_weights(const FeatureWeights& w, std::ostream& out) {
  char buf[40];
  auto emit = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << key << "=" << buf << "\n";
  };
  emit("tm_fwd", w.tm_fwd);
  emit("tm_rev", w.tm_rev);
  emit("lm", w.lm);
  emit("penalty", w.penalty);
}

inline FeatureWeights read_weights(std::istream& in) {
  FeatureWeights w;
  bool seen[4] = {false, false, false, false};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("weights line has no '=': " + line);
    const std::string key = strip(line.substr(0, eq));
    const double value = std::strtod(line.c_str() + eq + 1, nullptr);
    if (key == "tm_fwd") { w.tm_fwd = value; seen[0] = true; }
    else if (key == "tm_rev") { w.tm_rev = value; seen[1] = true; }
    else if (key == "lm") { w.lm = value; seen[2] = true; }
    else if (key == "penalty") { w.penalty = value; seen[3] = true; }
    else throw DataError("unknown weight key: " + key);
  }
  for (bool s : seen)
    if (!s) throw DataError("weights file is missing a key (need tm_fwd, tm_rev, lm, penalty)");
  return w;
}

}  // namespace histnorm
