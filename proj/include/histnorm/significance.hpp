#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "histnorm/error.hpp"
#include "histnorm/metrics.hpp"

namespace histnorm {

// Deterministic stream generator; repetition r uses its own stream derived
// from (seed, r), so results do not depend on scheduling.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0xA0761D6478BD642FULL * (index + 1)));
  return SplitMix64(mixer.next());
}

struct ARConfig {
  int repetitions = 10000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  Metric metric = Metric::bleu;
};

struct ARResult {
  double p_value = 1.0;
  bool significant = false;
  double observed_delta = 0.0;
  double metric_a = 0.0;
  double metric_b = 0.0;
};

namespace detail {

template <typename Stat, typename Finalize>
ARResult ar_run(const std::vector<Stat>& a, const std::vector<Stat>& b, Finalize finalize,
                const ARConfig& cfg) {
  const std::size_t n = a.size();

  // Evaluates the corpus delta for one flip mask; the observed delta uses the
  // all-false mask so the floating-point path is identical.
  auto delta_for = [&](auto&& flipped) {
    Stat ta{}, tb{};
    for (std::size_t i = 0; i < n; ++i) {
      if (flipped(i)) {
        ta += b[i];
        tb += a[i];
      } else {
        ta += a[i];
        tb += b[i];
      }
    }
    return std::abs(finalize(ta) - finalize(tb));
  };

  ARResult res;
  {
    Stat ta{}, tb{};
    for (std::size_t i = 0; i < n; ++i) {
      ta += a[i];
      tb += b[i];
    }
    res.metric_a = finalize(ta);
    res.metric_b = finalize(tb);
  }
  res.observed_delta = delta_for([](std::size_t) { return false; });

  std::uint64_t hits = 0;
  std::vector<bool> mask(n);
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    SplitMix64 rng = stream_for(cfg.seed, static_cast<std::uint64_t>(rep));
    std::uint64_t word = 0;
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (bits == 0) {
        word = rng.next();
        bits = 64;
      }
      mask[i] = (word & 1) != 0;
      word >>= 1;
      --bits;
    }
    if (delta_for([&](std::size_t i) { return mask[i]; }) >= res.observed_delta) ++hits;
  }
  res.p_value = static_cast<double>(hits + 1) / static_cast<double>(cfg.repetitions + 1);
  res.significant = res.p_value < cfg.alpha;
  return res;
}

}  // namespace detail

// Paired approximate randomization test: each repetition swaps whole
// hypothesis sentences between the two systems with probability 1/2 and
// recomputes the corpus metric delta. Per-sentence sufficient statistics are
// precomputed, so repetitions only re-aggregate.
inline ARResult ar_test(const std::vector<std::string>& hyp_a,
                        const std::vector<std::string>& hyp_b,
                        const std::vector<std::string>& refs, const ARConfig& cfg) {
  if (hyp_a.size() != hyp_b.size() || hyp_a.size() != refs.size())
    throw DataError("AR test: input lists differ in length (" + std::to_string(hyp_a.size()) +
                    ", " + std::to_string(hyp_b.size()) + ", " + std::to_string(refs.size()) + ")");
  if (cfg.repetitions < 1) throw ParamError("AR repetitions must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ParamError("AR alpha must be in (0, 1)");

  const std::size_t n = refs.size();
  switch (cfg.metric) {
    case Metric::cer: {
      std::vector<CerStats> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = cer_sentence(hyp_a[i], refs[i]);
        b[i] = cer_sentence(hyp_b[i], refs[i]);
      }
      return detail::ar_run(a, b, [](const CerStats& s) { return cer_from_stats(s); }, cfg);
    }
    case Metric::ter: {
      std::vector<TerStats> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = ter_sentence(hyp_a[i], refs[i]);
        b[i] = ter_sentence(hyp_b[i], refs[i]);
      }
      return detail::ar_run(a, b, [](const TerStats& s) { return ter_from_stats(s); }, cfg);
    }
    default: {
      std::vector<BleuStats> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = bleu_sentence(hyp_a[i], refs[i]);
        b[i] = bleu_sentence(hyp_b[i], refs[i]);
      }
      return detail::ar_run(a, b, [](const BleuStats& s) { return bleu_from_stats(s); }, cfg);
    }
  }
}

}  // namespace histnorm
