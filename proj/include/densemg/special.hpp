#pragma once

#include <cstdint>

namespace densemg {

/// ln Gamma(x) for x > 0. Reentrant.
double ln_gamma(double x) noexcept;

/// ln k!
double ln_factorial(std::uint64_t k) noexcept;

/// ln of the rising factorial a (a+1) ... (a+k-1); zero for k = 0.
double ln_rising_factorial(double a, std::uint64_t k) noexcept;

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series for x < a + 1, Lentz continued fraction for Q otherwise.
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly in the tail so small values keep their relative accuracy.
double regularized_gamma_q(double a, double x);

}  // namespace densemg
