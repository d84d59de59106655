#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace histnorm {

struct EditCounts {
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t substitutions = 0;

  std::uint64_t total() const { return insertions + deletions + substitutions; }
};

// Minimal-cost Levenshtein alignment between two random-access sequences.
// `links` pairs matched and substituted positions (source index, target
// index) in increasing order. Ties in the DP are broken by preferring
// match > substitution > deletion > insertion on the backtrace, which makes
// the script deterministic.
struct EditAlignment {
  std::int64_t cost = 0;
  EditCounts counts;
  std::vector<std::pair<std::size_t, std::size_t>> links;
};

template <typename Seq>
std::int64_t edit_distance(const Seq& a, const Seq& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::int64_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int64_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      const std::int64_t del = prev[j] + 1;
      const std::int64_t ins = cur[j - 1] + 1;
      cur[j] = std::min(sub, std::min(del, ins));
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

template <typename Seq>
EditAlignment edit_align(const Seq& a, const Seq& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<std::int64_t>> d(n + 1, std::vector<std::int64_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<std::int64_t>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int64_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      const std::int64_t del = d[i - 1][j] + 1;
      const std::int64_t ins = d[i][j - 1] + 1;
      d[i][j] = std::min(sub, std::min(del, ins));
    }
  }

  EditAlignment out;
  out.cost = d[n][m];
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && a[i - 1] == b[j - 1] && d[i][j] == d[i - 1][j - 1]) {
      out.links.emplace_back(i - 1, j - 1);
      --i, --j;
    } else if (i > 0 && j > 0 && a[i - 1] != b[j - 1] && d[i][j] == d[i - 1][j - 1] + 1) {
      out.links.emplace_back(i - 1, j - 1);
      ++out.counts.substitutions;
      --i, --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++out.counts.deletions;
      --i;
    } else {
      ++out.counts.insertions;
      --j;
    }
  }
  std::reverse(out.links.begin(), out.links.end());
  return out;
}

}  // namespace histnorm
