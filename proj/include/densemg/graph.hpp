#pragma once

// Labeled multigraphs as symmetric count matrices, urn words, and the
// deterministic pairing map from urn words to adjacency matrices.
//
// Vertex and color indices are 0-based in this API. The 1-based convention
// of the text formats is handled in io.hpp only.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace densemg {

using Count = std::uint32_t;

enum class Validate : bool { no = false, yes = true };

class InvalidGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Number of cells in the upper triangle (diagonal included) of an n x n matrix.
constexpr std::size_t upper_size(std::size_t n) { return n * (n + 1) / 2; }

/// Row-major position of (i, j), i <= j, inside the packed upper triangle.
constexpr std::size_t upper_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * n - (i * (i + 1)) / 2 + j;
}

/// Symmetric n x n matrix of edge multiplicities. The diagonal holds twice the
/// number of loops, so every diagonal entry is even and row sums are degrees.
///
/// Immutable once built. Only the upper triangle is stored (32-bit counts);
/// ordering is lexicographic on (n, upper triangle in row-major order).
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;

  /// Zero matrix on n vertices.
  explicit AdjacencyMatrix(std::size_t n);

  /// Takes ownership of a packed upper triangle of length upper_size(n).
  AdjacencyMatrix(std::size_t n, std::vector<Count> upper,
                  Validate validate = Validate::yes);

  /// Builds from full rows; always validated (symmetry, even diagonal).
  static AdjacencyMatrix from_rows(const std::vector<std::vector<Count>>& rows);

  std::size_t size() const noexcept { return n_; }
  Count operator()(std::size_t i, std::size_t j) const noexcept {
    return i <= j ? upper_[upper_index(n_, i, j)] : upper_[upper_index(n_, j, i)];
  }
  Count at(std::size_t i, std::size_t j) const;

  std::span<const Count> upper() const noexcept { return upper_; }
  std::vector<std::vector<Count>> to_rows() const;

  /// Throws InvalidGraph when the stored data violates the invariants.
  void validate() const;

  auto operator<=>(const AdjacencyMatrix&) const = default;
  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Count> upper_;
};

/// Mutable accumulator used by generators before freezing into an
/// AdjacencyMatrix.
class AdjacencyBuilder {
 public:
  explicit AdjacencyBuilder(std::size_t n) : n_(n), upper_(upper_size(n), 0) {}
  explicit AdjacencyBuilder(const AdjacencyMatrix& b)
      : n_(b.size()), upper_(b.upper().begin(), b.upper().end()) {}

  std::size_t size() const noexcept { return n_; }

  /// Adds one edge {i, j}; a loop adds 2 to the diagonal.
  void add_edge(std::size_t i, std::size_t j) noexcept {
    if (i == j) {
      upper_[upper_index(n_, i, i)] += 2;
    } else {
      upper_[i < j ? upper_index(n_, i, j) : upper_index(n_, j, i)] += 1;
    }
  }
  /// Removes one edge {i, j}; precondition: the edge exists.
  void remove_edge(std::size_t i, std::size_t j) noexcept {
    if (i == j) {
      upper_[upper_index(n_, i, i)] -= 2;
    } else {
      upper_[i < j ? upper_index(n_, i, j) : upper_index(n_, j, i)] -= 1;
    }
  }
  Count operator()(std::size_t i, std::size_t j) const noexcept {
    return i <= j ? upper_[upper_index(n_, i, j)] : upper_[upper_index(n_, j, i)];
  }
  void clear() noexcept { std::fill(upper_.begin(), upper_.end(), Count{0}); }

  AdjacencyMatrix build(Validate validate = Validate::no) const& {
    return AdjacencyMatrix(n_, upper_, validate);
  }
  AdjacencyMatrix build(Validate validate = Validate::no) && {
    return AdjacencyMatrix(n_, std::move(upper_), validate);
  }

 private:
  std::size_t n_;
  std::vector<Count> upper_;
};

/// Word of ball colors over n colors.
class UrnConfiguration {
 public:
  UrnConfiguration() = default;
  /// Word entries must lie in [0, n); the length must be even.
  UrnConfiguration(std::size_t n, std::vector<Count> word);

  std::size_t colors() const noexcept { return n_; }
  std::size_t length() const noexcept { return word_.size(); }
  std::size_t edges() const noexcept { return word_.size() / 2; }
  std::span<const Count> word() const noexcept { return word_; }
  Count operator[](std::size_t l) const noexcept { return word_[l]; }

  /// Multiplicity of every color.
  std::vector<std::uint64_t> type_vector() const;

  auto operator<=>(const UrnConfiguration&) const = default;
  bool operator==(const UrnConfiguration&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Count> word_;
};

/// One nonnegative degree per vertex; the sum is even.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<std::uint64_t> degrees);

  std::size_t size() const noexcept { return d_.size(); }
  std::uint64_t operator[](std::size_t i) const noexcept { return d_[i]; }
  std::span<const std::uint64_t> values() const noexcept { return d_; }
  std::uint64_t total() const noexcept;

  auto operator<=>(const DegreeSequence&) const = default;
  bool operator==(const DegreeSequence&) const = default;

 private:
  std::vector<std::uint64_t> d_;
};

struct EdgeCounts {
  std::uint64_t m = 0;        // all edges, loops included
  std::uint64_t m_prime = 0;  // non-loop edges
  bool operator==(const EdgeCounts&) const = default;
};

/// Row sum of B at vertex i (loops count twice).
std::uint64_t degree(const AdjacencyMatrix& b, std::size_t i);
std::vector<std::uint64_t> degrees(const AdjacencyMatrix& b);
DegreeSequence degree_sequence(const AdjacencyMatrix& b);

EdgeCounts edge_counts(const AdjacencyMatrix& b) noexcept;

/// Pairs positions (2e, 2e+1) of the word into edges.
AdjacencyMatrix urn_to_adjacency(const UrnConfiguration& psi);
void urn_to_adjacency(std::span<const Count> word, AdjacencyBuilder& out);

/// result(i, j) = B(tau[i], tau[j]). tau must be a permutation of [0, n).
AdjacencyMatrix relabel(const AdjacencyMatrix& b, std::span<const std::size_t> tau);

/// Top-left k x k block.
AdjacencyMatrix principal_submatrix(const AdjacencyMatrix& b, std::size_t k);

/// Restriction to the ordered vertex list phi (entries may repeat):
/// result(a, b) = B(phi[a], phi[b]).
AdjacencyMatrix induced_pattern(const AdjacencyMatrix& b, std::span<const std::size_t> phi);

}  // namespace densemg
