#pragma once

// Random multigraph processes: configuration model, Polya urn and the
// preferential attachment graph built from it, the edge reconnecting and ball
// replacement Markov chains, and W-random arrays.

#include <cstdint>
#include <utility>
#include <vector>

#include "densemg/graph.hpp"
#include "densemg/multigraphon.hpp"
#include "densemg/rng.hpp"

namespace densemg {

/// Uniform perfect matching of the stubs: the stub word (vertex i repeated
/// d_i times) is shuffled uniformly and paired by urn_to_adjacency.
AdjacencyMatrix configuration_model(const DegreeSequence& d, RngStream& rng);

/// Reusable sampler for many configuration-model draws on one degree
/// sequence; avoids reallocating the stub word.
class ConfigurationSampler {
 public:
  explicit ConfigurationSampler(const DegreeSequence& d);
  std::size_t vertices() const noexcept { return n_; }
  /// Shuffles the internal stub word; the paired word is then available via
  /// stubs() (positions 2e, 2e+1 form edge e).
  void resample(RngStream& rng);
  const std::vector<Count>& stubs() const noexcept { return word_; }
  AdjacencyMatrix sample(RngStream& rng);

 private:
  std::size_t n_;
  std::vector<Count> word_;
};

/// Polya urn word of the given (even) length over n colors with parameter
/// kappa > 0: draw L+1 takes color i with probability (d_i + kappa) / (L + n kappa).
UrnConfiguration polya_urn(std::size_t n, std::size_t length, double kappa, RngStream& rng);

/// PAG_kappa(n, m) = urn_to_adjacency(polya_urn(n, 2m, kappa)).
AdjacencyMatrix pag(std::size_t n, std::uint64_t m, double kappa, RngStream& rng);

/// Which degree vector the reattachment probability uses.
enum class DetachConvention {
  /// Degrees of the current graph, the moving stub still attached:
  /// P(w) = (d(B, w) + kappa) / (2m + n kappa). Default.
  before,
  /// Degrees after removing the moving stub:
  /// P(w) = (d'(w) + kappa) / (2m - 1 + n kappa).
  after,
};

/// One step of the edge reconnecting chain: a uniform edge, a fair coin for
/// the moving endpoint, reattachment by linear preferential attachment.
AdjacencyMatrix edge_reconnect_step(const AdjacencyMatrix& b, double kappa, RngStream& rng,
                                    DetachConvention convention = DetachConvention::before);

/// One step of the ball replacement chain: a uniform position is recolored
/// with probability (d(psi, i) + kappa) / (2m + n kappa), counts taken on the
/// current word.
UrnConfiguration ball_replacement_step(const UrnConfiguration& psi, double kappa, RngStream& rng);

struct WRandomSample {
  AdjacencyMatrix graph;
  std::vector<double> latent;
};

/// k x k W-random array with i.i.d. uniform latent positions.
WRandomSample w_random(const Multigraphon& w, std::size_t k, RngStream& rng);

}  // namespace densemg
