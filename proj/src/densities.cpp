#include "densemg/densities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "densemg/parallel.hpp"

namespace densemg {
namespace {

constexpr std::uint64_t kChunk = 8192;

void check_patterns(std::span<const AdjacencyMatrix> patterns, std::uint64_t samples) {
  if (samples == 0) throw std::invalid_argument("sample count must be positive");
  if (patterns.empty()) throw std::invalid_argument("no patterns given");
  for (const auto& a : patterns) {
    if (a.size() != patterns.front().size())
      throw std::invalid_argument("batched patterns must share their size");
  }
}

// Splits `samples` into chunks; body(chunk_stream, chunk_size, accumulators)
// fills one accumulator per pattern.
template <class Body>
std::vector<DensityEstimate> chunked(std::size_t patterns, std::uint64_t samples, RngStream& rng,
                                     Body&& body) {
  const RngStream root = rng.substream(rng.next_u64());
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  auto parts = parallel_map(chunks, [&](std::size_t c) {
    RngStream local = root.substream(c);
    const std::uint64_t size = std::min(kChunk, samples - c * kChunk);
    std::vector<MomentAccumulator> acc(patterns);
    body(local, size, acc);
    return acc;
  });
  std::vector<MomentAccumulator> total(patterns);
  for (const auto& part : parts)
    for (std::size_t p = 0; p < patterns; ++p) total[p].merge(part[p]);
  std::vector<DensityEstimate> out;
  out.reserve(patterns);
  for (const auto& t : total) out.push_back(t.estimate());
  return out;
}

}  // namespace

DensityEstimate MomentAccumulator::estimate() const noexcept {
  DensityEstimate e;
  e.samples = n_;
  if (n_ == 0) return e;
  const double n = static_cast<double>(n_);
  e.mean = sum_ / n;
  const double var = std::max(0.0, sum_sq_ / n - e.mean * e.mean);
  e.standard_error = std::sqrt(var / n);
  return e;
}

DensityEstimate pool(std::span<const DensityEstimate> parts) {
  double n = 0.0, sum = 0.0, sum_sq = 0.0;
  for (const auto& p : parts) {
    const double s = static_cast<double>(p.samples);
    n += s;
    sum += p.mean * s;
    // plug-in variance: se^2 * s = E[x^2] - mean^2
    sum_sq += (p.standard_error * p.standard_error * s + p.mean * p.mean) * s;
  }
  DensityEstimate e;
  if (n == 0.0) return e;
  e.samples = static_cast<std::uint64_t>(n);
  e.mean = sum / n;
  e.standard_error = std::sqrt(std::max(0.0, sum_sq / n - e.mean * e.mean) / n);
  return e;
}

std::vector<DensityEstimate> hom_density_mc(std::span<const AdjacencyMatrix> patterns,
                                            const AdjacencyMatrix& b, std::uint64_t samples,
                                            RngStream& rng) {
  check_patterns(patterns, samples);
  const std::size_t k = patterns.front().size();
  const std::size_t n = b.size();
  if (n == 0) throw std::invalid_argument("graph has no vertices");
  return chunked(patterns.size(), samples, rng,
                 [&](RngStream& local, std::uint64_t size, std::vector<MomentAccumulator>& acc) {
                   std::vector<std::size_t> phi(k);
                   for (std::uint64_t s = 0; s < size; ++s) {
                     for (auto& v : phi) v = local.uniform_index(n);
                     for (std::size_t p = 0; p < patterns.size(); ++p) {
                       const auto& a = patterns[p];
                       bool match = true;
                       for (std::size_t i = 0; i < k && match; ++i)
                         for (std::size_t j = i; j < k; ++j)
                           if (a(i, j) != b(phi[i], phi[j])) {
                             match = false;
                             break;
                           }
                       acc[p].add(match ? 1.0 : 0.0);
                     }
                   }
                 });
}

DensityEstimate hom_density_mc(const AdjacencyMatrix& a, const AdjacencyMatrix& b,
                               std::uint64_t samples, RngStream& rng) {
  return hom_density_mc(std::span<const AdjacencyMatrix>(&a, 1), b, samples, rng).front();
}

std::vector<DensityEstimate> graphon_density_mc(std::span<const AdjacencyMatrix> patterns,
                                                const Multigraphon& w, std::uint64_t samples,
                                                RngStream& rng) {
  check_patterns(patterns, samples);
  const std::size_t k = patterns.front().size();
  // Largest entry per cell across the battery, to tabulate W once per draw.
  std::vector<Count> top(upper_size(k), 0);
  for (const auto& a : patterns)
    for (std::size_t c = 0; c < top.size(); ++c) top[c] = std::max(top[c], a.upper()[c]);
  return chunked(patterns.size(), samples, rng,
                 [&](RngStream& local, std::uint64_t size, std::vector<MomentAccumulator>& acc) {
                   std::vector<double> u(k);
                   std::vector<std::vector<double>> table(top.size());
                   for (std::size_t c = 0; c < top.size(); ++c) table[c].resize(top[c] + 1);
                   for (std::uint64_t s = 0; s < size; ++s) {
                     for (auto& x : u) x = local.uniform();
                     for (std::size_t i = 0; i < k; ++i) {
                       for (std::size_t j = i; j < k; ++j) {
                         auto& row = table[upper_index(k, i, j)];
                         for (std::size_t v = 0; v < row.size(); ++v) {
                           if (i == j) {
                             row[v] = v % 2 == 0 ? w.loop_probability(u[i], v / 2) : 0.0;
                           } else {
                             row[v] = w.off_diagonal(u[i], u[j], v);
                           }
                         }
                       }
                     }
                     for (std::size_t p = 0; p < patterns.size(); ++p) {
                       double prod = 1.0;
                       const auto upper = patterns[p].upper();
                       for (std::size_t c = 0; c < upper.size() && prod != 0.0; ++c)
                         prod *= table[c][upper[c]];
                       acc[p].add(prod);
                     }
                   }
                 });
}

DensityEstimate graphon_density_mc(const AdjacencyMatrix& a, const Multigraphon& w,
                                   std::uint64_t samples, RngStream& rng) {
  return graphon_density_mc(std::span<const AdjacencyMatrix>(&a, 1), w, samples, rng).front();
}

std::vector<std::size_t> sample_injection(std::size_t k, std::size_t n, RngStream& rng) {
  if (k > n) throw std::invalid_argument("injection needs k <= n");
  std::vector<std::size_t> phi(k);
  if (2 * k <= n) {
    for (std::size_t i = 0; i < k; ++i) {
      for (;;) {
        const std::size_t v = rng.uniform_index(n);
        if (std::find(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(i), v) ==
            phi.begin() + static_cast<std::ptrdiff_t>(i)) {
          phi[i] = v;
          break;
        }
      }
    }
    return phi;
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(perm[i], perm[j]);
    phi[i] = perm[i];
  }
  return phi;
}

DistributionTable<AdjacencyMatrix> sampled_pattern_distribution(const AdjacencyMatrix& b,
                                                                std::size_t k,
                                                                std::uint64_t samples,
                                                                RngStream& rng) {
  if (k > b.size()) throw std::invalid_argument("pattern size exceeds the graph size");
  if (samples == 0) throw std::invalid_argument("sample count must be positive");
  std::map<AdjacencyMatrix, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto phi = sample_injection(k, b.size(), rng);
    ++counts[induced_pattern(b, phi)];
  }
  DistributionTable<AdjacencyMatrix> t;
  for (auto& [a, c] : counts)
    t.entries.emplace(a, static_cast<double>(c) / static_cast<double>(samples));
  return t;
}

std::vector<double> degree_sample(const AdjacencyMatrix& b) {
  const auto d = degrees(b);
  const double n = static_cast<double>(b.size());
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = static_cast<double>(d[i]) / n;
  return out;
}

}  // namespace densemg
