#include "densemg/variates.hpp"

#include <cmath>
#include <stdexcept>

#include "densemg/special.hpp"

namespace densemg {

double sample_normal(RngStream& rng) noexcept {
  // Marsaglia polar method; the second deviate is discarded so the stream
  // position depends only on the number of calls.
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double sample_exponential(RngStream& rng) noexcept { return -std::log(rng.uniform_open()); }

double sample_gamma(RngStream& rng, double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::domain_error("gamma parameters must be positive");
  if (alpha < 1.0) {
    const double g = sample_gamma(rng, alpha + 1.0, 1.0);
    return g * std::pow(rng.uniform_open(), 1.0 / alpha) / beta;
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = sample_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v / beta;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / beta;
  }
}

std::uint64_t sample_poisson(RngStream& rng, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::domain_error("poisson mean must be finite and nonnegative");
  if (lambda == 0.0) return 0;
  if (lambda < 10.0) {
    const double u = rng.uniform();
    std::uint64_t k = 0;
    double p = std::exp(-lambda);
    double cdf = p;
    while (u >= cdf && k < 1000) {
      ++k;
      p *= lambda / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // PTRS, W. Hormann (1993), "The transformed rejection method for
  // generating Poisson random variables".
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - ln_gamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace densemg
