#pragma once

// Exact samplers for the continuous and discrete laws used by the
// generators. None of them approximate: Poisson uses inversion below mean 10
// and Hormann's transformed rejection with squeeze (PTRS) above; Gamma uses
// the Marsaglia-Tsang squeeze for shape >= 1 and the U^(1/a) boost below.

#include <cstdint>
#include <span>

#include "densemg/rng.hpp"

namespace densemg {

double sample_normal(RngStream& rng) noexcept;
double sample_exponential(RngStream& rng) noexcept;
/// Gamma with shape alpha > 0 and rate beta > 0 (mean alpha / beta).
double sample_gamma(RngStream& rng, double alpha, double beta);
std::uint64_t sample_poisson(RngStream& rng, double lambda);

/// In-place uniform shuffle (Fisher-Yates, back to front).
template <class T>
void shuffle(std::span<T> values, RngStream& rng) noexcept {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace densemg
