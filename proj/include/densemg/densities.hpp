#pragma once

// Monte Carlo estimators of induced homomorphism densities t=(A, B) for a
// finite multigraph B and t=(A, W) for a multigraphon W.
//
// Samples are split into fixed-size chunks, each driven by its own child
// stream and run through parallel_map; chunk results are merged in order,
// so estimates depend only on the caller's stream, never on the worker count.

#include <cstdint>
#include <span>
#include <vector>

#include "densemg/exact.hpp"
#include "densemg/graph.hpp"
#include "densemg/multigraphon.hpp"
#include "densemg/rng.hpp"

namespace densemg {

struct DensityEstimate {
  double mean = 0.0;
  double standard_error = 0.0;  // plug-in sample standard deviation / sqrt(samples)
  std::uint64_t samples = 0;
};

/// Running first and second moments of i.i.d. values; merges are exact.
class MomentAccumulator {
 public:
  void add(double x) noexcept {
    ++n_;
    sum_ += x;
    sum_sq_ += x * x;
  }
  void merge(const MomentAccumulator& o) noexcept {
    n_ += o.n_;
    sum_ += o.sum_;
    sum_sq_ += o.sum_sq_;
  }
  std::uint64_t count() const noexcept { return n_; }
  DensityEstimate estimate() const noexcept;

 private:
  std::uint64_t n_ = 0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

/// Pools estimates built from disjoint sample sets.
DensityEstimate pool(std::span<const DensityEstimate> parts);

/// Average of 1[A(i,j) = B(phi(i), phi(j)) for all i, j] over S uniform maps
/// phi: [k] -> [n].
DensityEstimate hom_density_mc(const AdjacencyMatrix& a, const AdjacencyMatrix& b,
                               std::uint64_t samples, RngStream& rng);
/// Same estimator for many patterns of one size, sharing the sampled maps.
std::vector<DensityEstimate> hom_density_mc(std::span<const AdjacencyMatrix> patterns,
                                            const AdjacencyMatrix& b, std::uint64_t samples,
                                            RngStream& rng);

/// Average of prod_{i<=j} W(U_i, U_j, A(i,j)) over S uniform latent vectors.
DensityEstimate graphon_density_mc(const AdjacencyMatrix& a, const Multigraphon& w,
                                   std::uint64_t samples, RngStream& rng);
/// Same estimator for many patterns of one size, sharing the latent draws.
std::vector<DensityEstimate> graphon_density_mc(std::span<const AdjacencyMatrix> patterns,
                                                const Multigraphon& w, std::uint64_t samples,
                                                RngStream& rng);

/// Uniform injection [k] -> [n] (k <= n): rejection from uniform maps when
/// 2k <= n, partial Fisher-Yates otherwise.
std::vector<std::size_t> sample_injection(std::size_t k, std::size_t n, RngStream& rng);

/// Empirical law of the k x k pattern of B seen through S uniform injections.
DistributionTable<AdjacencyMatrix> sampled_pattern_distribution(const AdjacencyMatrix& b,
                                                                std::size_t k,
                                                                std::uint64_t samples,
                                                                RngStream& rng);

/// d(B, i) / n for every vertex.
std::vector<double> degree_sample(const AdjacencyMatrix& b);

}  // namespace densemg
