#include "densemg/graph.hpp"

#include <numeric>
#include <string>

namespace densemg {

AdjacencyMatrix::AdjacencyMatrix(std::size_t n) : n_(n), upper_(upper_size(n), 0) {}

AdjacencyMatrix::AdjacencyMatrix(std::size_t n, std::vector<Count> upper, Validate validate)
    : n_(n), upper_(std::move(upper)) {
  if (upper_.size() != upper_size(n_)) {
    throw InvalidGraph("packed upper triangle has length " + std::to_string(upper_.size()) +
                       ", expected " + std::to_string(upper_size(n_)));
  }
#ifdef NDEBUG
  if (validate == Validate::yes) this->validate();
#else
  (void)validate;
  this->validate();
#endif
}

AdjacencyMatrix AdjacencyMatrix::from_rows(const std::vector<std::vector<Count>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Count> upper(upper_size(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw InvalidGraph("adjacency matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] != rows[j].at(i)) {
        throw InvalidGraph("adjacency matrix is not symmetric at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
      }
    }
    for (std::size_t j = i; j < n; ++j) upper[upper_index(n, i, j)] = rows[i][j];
  }
  return AdjacencyMatrix(n, std::move(upper), Validate::yes);
}

Count AdjacencyMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("vertex index out of range");
  return (*this)(i, j);
}

std::vector<std::vector<Count>> AdjacencyMatrix::to_rows() const {
  std::vector<std::vector<Count>> rows(n_, std::vector<Count>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
  return rows;
}

void AdjacencyMatrix::validate() const {
  if (upper_.size() != upper_size(n_)) throw InvalidGraph("corrupt adjacency storage");
  for (std::size_t i = 0; i < n_; ++i) {
    if (upper_[upper_index(n_, i, i)] % 2 != 0) {
      throw InvalidGraph("diagonal entry " + std::to_string(i + 1) +
                         " is odd; loops are stored doubled");
    }
  }
}

UrnConfiguration::UrnConfiguration(std::size_t n, std::vector<Count> word)
    : n_(n), word_(std::move(word)) {
  if (word_.size() % 2 != 0) throw std::invalid_argument("urn word has odd length");
  for (Count c : word_) {
    if (c >= n_) throw std::invalid_argument("urn word entry outside the color range");
  }
}

std::vector<std::uint64_t> UrnConfiguration::type_vector() const {
  std::vector<std::uint64_t> d(n_, 0);
  for (Count c : word_) ++d[c];
  return d;
}

DegreeSequence::DegreeSequence(std::vector<std::uint64_t> degrees) : d_(std::move(degrees)) {
  if (total() % 2 != 0) throw std::invalid_argument("degree sum is odd");
}

std::uint64_t DegreeSequence::total() const noexcept {
  return std::accumulate(d_.begin(), d_.end(), std::uint64_t{0});
}

std::uint64_t degree(const AdjacencyMatrix& b, std::size_t i) {
  if (i >= b.size()) throw std::out_of_range("vertex index out of range");
  std::uint64_t d = 0;
  for (std::size_t j = 0; j < b.size(); ++j) d += b(i, j);
  return d;
}

std::vector<std::uint64_t> degrees(const AdjacencyMatrix& b) {
  const std::size_t n = b.size();
  std::vector<std::uint64_t> d(n, 0);
  auto up = b.upper();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] += up[pos++];
    for (std::size_t j = i + 1; j < n; ++j, ++pos) {
      d[i] += up[pos];
      d[j] += up[pos];
    }
  }
  return d;
}

DegreeSequence degree_sequence(const AdjacencyMatrix& b) { return DegreeSequence(degrees(b)); }

EdgeCounts edge_counts(const AdjacencyMatrix& b) noexcept {
  const std::size_t n = b.size();
  auto up = b.upper();
  EdgeCounts out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.m += up[pos++] / 2;
    for (std::size_t j = i + 1; j < n; ++j) out.m_prime += up[pos++];
  }
  out.m += out.m_prime;
  return out;
}

void urn_to_adjacency(std::span<const Count> word, AdjacencyBuilder& out) {
  if (word.size() % 2 != 0) throw std::invalid_argument("urn word has odd length");
  for (std::size_t e = 0; e + 1 < word.size(); e += 2) out.add_edge(word[e], word[e + 1]);
}

AdjacencyMatrix urn_to_adjacency(const UrnConfiguration& psi) {
  AdjacencyBuilder builder(psi.colors());
  urn_to_adjacency(psi.word(), builder);
  return std::move(builder).build();
}

AdjacencyMatrix relabel(const AdjacencyMatrix& b, std::span<const std::size_t> tau) {
  const std::size_t n = b.size();
  if (tau.size() != n) throw std::invalid_argument("relabeling has the wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t t : tau) {
    if (t >= n || seen[t]) throw std::invalid_argument("relabeling is not a permutation");
    seen[t] = true;
  }
  return induced_pattern(b, tau);
}

AdjacencyMatrix principal_submatrix(const AdjacencyMatrix& b, std::size_t k) {
  if (k > b.size()) throw std::invalid_argument("submatrix size exceeds the vertex count");
  std::vector<Count> upper(upper_size(k));
  std::size_t pos = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) upper[pos++] = b(i, j);
  return AdjacencyMatrix(k, std::move(upper), Validate::no);
}

AdjacencyMatrix induced_pattern(const AdjacencyMatrix& b, std::span<const std::size_t> phi) {
  const std::size_t k = phi.size();
  std::vector<Count> upper(upper_size(k));
  std::size_t pos = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (phi[i] >= b.size()) throw std::out_of_range("vertex index out of range");
    for (std::size_t j = i; j < k; ++j) upper[pos++] = b(phi[i], phi[j]);
  }
  return AdjacencyMatrix(k, std::move(upper), Validate::no);
}

}  // namespace densemg
