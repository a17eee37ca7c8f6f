#pragma once

// Hand-rolled generators for property tests.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "densemg/graph.hpp"
#include "densemg/rng.hpp"

namespace densemg::testing {

inline AdjacencyMatrix random_matrix(std::size_t n, Count max_entry, RngStream& rng) {
  AdjacencyBuilder b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto c = rng.uniform_index(max_entry + 1);
      for (std::uint64_t e = 0; e < c; ++e) b.add_edge(i, j);
    }
  return b.build(Validate::yes);
}

inline std::vector<Count> random_word(std::size_t n, std::size_t length, RngStream& rng) {
  std::vector<Count> w(length);
  for (auto& c : w) c = static_cast<Count>(rng.uniform_index(n));
  return w;
}

inline std::vector<std::size_t> random_permutation(std::size_t n, RngStream& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.uniform_index(i)]);
  return p;
}

/// Pearson statistic of observed counts against expected probabilities;
/// compares against a generous bound instead of a p-value.
template <class State>
double pearson(const std::map<State, std::uint64_t>& observed,
               const std::map<State, double>& expected, std::uint64_t total) {
  double chi = 0.0;
  for (const auto& [s, p] : expected) {
    auto it = observed.find(s);
    const double o = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    const double e = p * static_cast<double>(total);
    chi += (o - e) * (o - e) / e;
  }
  return chi;
}

}  // namespace densemg::testing

namespace densemg::testing {

/// Largest standardized deviation |p_hat - p| / sqrt(p (1 - p) / N) over the
/// exact law's support; states outside the support count as infinite.
template <class State, class Table>
double max_z_score(const std::map<State, std::uint64_t>& observed, const Table& exact,
                   std::uint64_t total) {
  double worst = 0.0;
  const double n = static_cast<double>(total);
  for (const auto& [s, c] : observed)
    if (exact.probability(s) == 0.0) return INFINITY;
  for (const auto& [s, p] : exact.entries) {
    auto it = observed.find(s);
    const double phat = it == observed.end() ? 0.0 : static_cast<double>(it->second) / n;
    const double sd = std::sqrt(p * (1.0 - p) / n);
    if (sd > 0.0) worst = std::max(worst, std::fabs(phat - p) / sd);
  }
  return worst;
}

}  // namespace densemg::testing
