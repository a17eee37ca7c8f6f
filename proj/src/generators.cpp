#include "densemg/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "densemg/variates.hpp"

namespace densemg {
namespace {

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::domain_error("kappa must be positive");
}

// Draws a color with probability (d_i + kappa) / (total + n kappa), where
// d is the type vector of `word` and total = word.size(): with probability
// total / (total + n kappa) copy the color of a uniform ball, otherwise pick
// a uniform color.
Count preferential_color(std::span<const Count> word, std::size_t n, double kappa,
                         RngStream& rng) {
  const double total = static_cast<double>(word.size());
  const double u = rng.uniform() * (total + static_cast<double>(n) * kappa);
  if (u < total) return word[rng.uniform_index(word.size())];
  return static_cast<Count>(rng.uniform_index(n));
}

}  // namespace

ConfigurationSampler::ConfigurationSampler(const DegreeSequence& d) : n_(d.size()) {
  word_.reserve(d.total());
  for (std::size_t i = 0; i < n_; ++i) word_.insert(word_.end(), d[i], static_cast<Count>(i));
}

void ConfigurationSampler::resample(RngStream& rng) { shuffle(std::span<Count>(word_), rng); }

AdjacencyMatrix ConfigurationSampler::sample(RngStream& rng) {
  resample(rng);
  AdjacencyBuilder builder(n_);
  urn_to_adjacency(word_, builder);
  return std::move(builder).build();
}

AdjacencyMatrix configuration_model(const DegreeSequence& d, RngStream& rng) {
  ConfigurationSampler sampler(d);
  return sampler.sample(rng);
}

UrnConfiguration polya_urn(std::size_t n, std::size_t length, double kappa, RngStream& rng) {
  check_kappa(kappa);
  if (length % 2 != 0) throw std::invalid_argument("urn length must be even");
  if (n == 0) throw std::invalid_argument("urn needs at least one color");
  std::vector<Count> word;
  word.reserve(length);
  for (std::size_t l = 0; l < length; ++l) word.push_back(preferential_color(word, n, kappa, rng));
  return UrnConfiguration(n, std::move(word));
}

AdjacencyMatrix pag(std::size_t n, std::uint64_t m, double kappa, RngStream& rng) {
  return urn_to_adjacency(polya_urn(n, 2 * m, kappa, rng));
}

AdjacencyMatrix edge_reconnect_step(const AdjacencyMatrix& b, double kappa, RngStream& rng,
                                    DetachConvention convention) {
  check_kappa(kappa);
  const std::size_t n = b.size();
  const std::uint64_t m = edge_counts(b).m;
  if (m == 0) throw std::invalid_argument("edge reconnecting step on a graph without edges");

  // Uniform edge: walk the upper triangle weighting cell (i, j) by its
  // number of edges (loops: B(i, i) / 2).
  std::uint64_t r = rng.uniform_index(m);
  std::size_t ei = 0, ej = 0;
  for (std::size_t i = 0, pos = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t j = i; j < n; ++j, ++pos) {
      const std::uint64_t c = i == j ? b.upper()[pos] / 2 : b.upper()[pos];
      if (r < c) {
        ei = i;
        ej = j;
        found = true;
        break;
      }
      r -= c;
    }
    if (found) break;
  }
  const bool move_first = rng.coin();
  const std::size_t keep = move_first ? ej : ei;
  const std::size_t moving = move_first ? ei : ej;

  // Target by linear preferential attachment: with probability
  // S / (S + n kappa) the endpoint of a uniform stub among S stubs,
  // otherwise a uniform vertex.
  const std::vector<std::uint64_t> d = degrees(b);
  const double stubs = static_cast<double>(convention == DetachConvention::before ? 2 * m : 2 * m - 1);
  const double u = rng.uniform() * (stubs + static_cast<double>(n) * kappa);
  std::size_t target = 0;
  if (u < stubs) {
    std::uint64_t s = rng.uniform_index(static_cast<std::uint64_t>(stubs));
    for (std::size_t w = 0; w < n; ++w) {
      const std::uint64_t dw = d[w] - (convention == DetachConvention::after && w == moving ? 1 : 0);
      if (s < dw) {
        target = w;
        break;
      }
      s -= dw;
    }
  } else {
    target = rng.uniform_index(n);
  }

  AdjacencyBuilder builder(b);
  builder.remove_edge(ei, ej);
  builder.add_edge(keep, target);
  return std::move(builder).build();
}

UrnConfiguration ball_replacement_step(const UrnConfiguration& psi, double kappa, RngStream& rng) {
  check_kappa(kappa);
  if (psi.length() == 0) throw std::invalid_argument("ball replacement step on an empty urn");
  const std::size_t xi = rng.uniform_index(psi.length());
  const Count color = preferential_color(psi.word(), psi.colors(), kappa, rng);
  std::vector<Count> word(psi.word().begin(), psi.word().end());
  word[xi] = color;
  return UrnConfiguration(psi.colors(), std::move(word));
}

WRandomSample w_random(const Multigraphon& w, std::size_t k, RngStream& rng) {
  WRandomSample out;
  out.latent.resize(k);
  for (auto& u : out.latent) u = rng.uniform();
  out.graph = w.sample_array(out.latent, rng);
  return out;
}

}  // namespace densemg
