#include "densemg/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace densemg {
namespace {

constexpr double kIncGammaEps = 1e-16;
constexpr int kIncGammaMaxIter = 100000;

// Series for P(a, x); valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kIncGammaMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kIncGammaEps) {
      return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
    }
  }
  throw std::runtime_error("incomplete gamma series did not converge");
}

// Modified Lentz continued fraction for Q(a, x); valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kIncGammaEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kIncGammaMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kIncGammaEps) {
      return std::exp(-x + a * std::log(x) - ln_gamma(a)) * h;
    }
  }
  throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

void check_args(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("incomplete gamma needs a > 0");
  if (!(x >= 0.0)) throw std::domain_error("incomplete gamma needs x >= 0");
}

}  // namespace

double ln_gamma(double x) noexcept {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double ln_factorial(std::uint64_t k) noexcept {
  return ln_gamma(static_cast<double>(k) + 1.0);
}

double ln_rising_factorial(double a, std::uint64_t k) noexcept {
  if (k <= 64) {
    double s = 0.0;
    for (std::uint64_t j = 0; j < k; ++j) s += std::log(a + static_cast<double>(j));
    return s;
  }
  return ln_gamma(a + static_cast<double>(k)) - ln_gamma(a);
}

double regularized_gamma_p(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

}  // namespace densemg
