#pragma once

// Closed-form laws and brute-force enumeration for tiny instances. All
// probability products are accumulated in log space.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "densemg/generators.hpp"
#include "densemg/graph.hpp"

namespace densemg {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite law over states, iterated in the states' natural order
/// (lexicographic words, lexicographic upper triangles).
template <class State>
struct DistributionTable {
  std::map<State, double> entries;

  double probability(const State& s) const {
    auto it = entries.find(s);
    return it == entries.end() ? 0.0 : it->second;
  }
  double total() const {
    double t = 0.0;
    for (const auto& [s, p] : entries) t += p;
    return t;
  }
  std::size_t size() const noexcept { return entries.size(); }
};

/// sup over the union of supports of |P(s) - Q(s)|.
template <class State>
double max_abs_difference(const DistributionTable<State>& a, const DistributionTable<State>& b) {
  double d = 0.0;
  for (const auto& [s, p] : a.entries) d = std::max(d, std::abs(p - b.probability(s)));
  for (const auto& [s, p] : b.entries) d = std::max(d, std::abs(p - a.probability(s)));
  return d;
}

/// Total variation distance (half the L1 distance).
template <class State>
double total_variation(const DistributionTable<State>& a, const DistributionTable<State>& b) {
  double l1 = 0.0;
  for (const auto& [s, p] : a.entries) l1 += std::abs(p - b.probability(s));
  for (const auto& [s, p] : b.entries)
    if (!a.entries.contains(s)) l1 += p;
  return 0.5 * l1;
}

/// Polya law of a word of any length over n colors:
/// prod_i prod_{j<=d_i} (kappa + j - 1) / prod_{j<=L} (kappa n + j - 1).
double polya_probability(std::span<const Count> word, std::size_t n, double kappa);
double polya_probability(const UrnConfiguration& psi, double kappa);

/// Stationary law of the edge reconnecting chain on A_n^m (equivalently the
/// law of PAG_kappa(n, m)).
double stationary_probability(const AdjacencyMatrix& b, double kappa);

/// Number of words in [n]^[2m] that pair into B:
/// m! 2^{m'} / (prod_{i<j} B(i,j)! prod_i (B(i,i)/2)!), as a logarithm.
double ln_word_count(const AdjacencyMatrix& b);

/// Law of a ball-exchangeable construction given its degree law:
/// P(d(B)) * prod d_i! / (2m)! * (number of words producing B).
double edge_stationary_probability(const AdjacencyMatrix& b,
                                   const DistributionTable<DegreeSequence>& degree_law);

/// Degree (type-vector) marginal of the Polya urn with 2m balls.
DistributionTable<DegreeSequence> polya_degree_law(std::size_t n, std::uint64_t m, double kappa);

/// t_=(A, B) by enumerating all n^k vertex maps. Throws BudgetExceeded when
/// n^k > 1e8.
double exact_homdensity(const AdjacencyMatrix& a, const AdjacencyMatrix& b);
/// Same count restricted to injective maps, normalized by (n)_k.
double exact_injective_homdensity(const AdjacencyMatrix& a, const AdjacencyMatrix& b);

/// All words of the given length over n colors, lexicographic.
std::vector<UrnConfiguration> enumerate_words(std::size_t n, std::size_t length,
                                              std::uint64_t budget = 10'000'000);
/// A_n^m in lexicographic order of the upper triangle.
std::vector<AdjacencyMatrix> enumerate_adjacency(std::size_t n, std::uint64_t m,
                                                 std::uint64_t budget = 100'000);
/// All symmetric k x k patterns with off-diagonal entries <= max_off and
/// diagonal entries <= max_diag (even), lexicographic.
std::vector<AdjacencyMatrix> enumerate_patterns(std::size_t k, Count max_off, Count max_diag);

/// Sparse row-stochastic kernel over an enumerated state space.
template <class State>
struct ChainKernel {
  std::vector<State> states;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
};

ChainKernel<UrnConfiguration> ball_replacement_kernel(std::size_t n, std::size_t length,
                                                      double kappa);
ChainKernel<AdjacencyMatrix> edge_reconnect_kernel(
    std::size_t n, std::uint64_t m, double kappa,
    DetachConvention convention = DetachConvention::before);

/// Stationary vector of a kernel: dense solve of (K^T - I) pi = 0 with the
/// normalization row appended when the state space is small, power
/// iteration to L1 residual <= 1e-13 otherwise.
std::vector<double> stationary_vector(std::span<const std::vector<std::pair<std::size_t, double>>> rows);

/// Stationary law of the ball replacement chain (state space n^(2m) <= 1e5).
DistributionTable<UrnConfiguration> solve_ball_replacement(std::size_t n, std::uint64_t m,
                                                           double kappa);
/// Stationary law of the edge reconnecting chain (|A_n^m| <= 1e5).
DistributionTable<AdjacencyMatrix> solve_edge_reconnect(
    std::size_t n, std::uint64_t m, double kappa,
    DetachConvention convention = DetachConvention::before);

/// Exact Polya law of all words of length 2m.
DistributionTable<UrnConfiguration> exact_polya_distribution(std::size_t n, std::uint64_t m,
                                                             double kappa);
/// Exact law of PAG_kappa(n, m), pushing the Polya law through the pairing
/// map. Requires n^(2m) <= 1e7.
DistributionTable<AdjacencyMatrix> exact_pag_distribution(std::size_t n, std::uint64_t m,
                                                          double kappa);
/// Table of stationary_probability over A_n^m.
DistributionTable<AdjacencyMatrix> stationary_distribution(std::size_t n, std::uint64_t m,
                                                           double kappa);

}  // namespace densemg
