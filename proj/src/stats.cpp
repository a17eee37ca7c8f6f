#include "densemg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace densemg {
namespace {

void check_gamma_params(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw std::domain_error("gamma parameters must be positive and finite");
}

}  // namespace

double poisson_pmf(std::uint64_t k, double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("poisson mean must be nonnegative");
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  if (std::isinf(lambda)) return 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(-lambda + kd * std::log(lambda) - ln_factorial(k));
}

double poisson_upper_tail(std::uint64_t k, double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("poisson mean must be nonnegative");
  if (lambda == 0.0) return 0.0;
  // P(X <= k) = Q(k + 1, lambda), hence P(X > k) = P(k + 1, lambda).
  return regularized_gamma_p(static_cast<double>(k) + 1.0, lambda);
}

std::uint64_t poisson_truncation_point(double lambda, double eps) {
  if (!(lambda >= 0.0)) throw std::domain_error("poisson mean must be nonnegative");
  std::uint64_t k = static_cast<std::uint64_t>(lambda);
  std::uint64_t step = 8 + static_cast<std::uint64_t>(std::sqrt(lambda));
  while (poisson_upper_tail(k, lambda) > eps) k += step;
  // Walk back to the smallest admissible point.
  std::uint64_t lo = k >= step ? k - step : 0;
  std::uint64_t hi = k;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (poisson_upper_tail(mid, lambda) <= eps)
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

double gamma_pdf(double x, double alpha, double beta) {
  check_gamma_params(alpha, beta);
  if (!(x > 0.0)) return 0.0;
  return std::exp((alpha - 1.0) * std::log(x) + alpha * std::log(beta) - beta * x -
                  ln_gamma(alpha));
}

double gamma_cdf(double x, double alpha, double beta) {
  check_gamma_params(alpha, beta);
  if (!(x > 0.0)) return 0.0;
  return regularized_gamma_p(alpha, beta * x);
}

double gamma_quantile(double u, double alpha, double beta) {
  check_gamma_params(alpha, beta);
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("gamma quantile needs u in [0, 1)");
  if (u == 0.0) return 0.0;

  // Work with the standardized variable y = beta * x, G(y) = P(alpha, y).
  // Root of h(y) = G(y) - u for u <= 1/2 and of h(y) = (1 - u) - Q(alpha, y)
  // otherwise, so the upper tail keeps relative accuracy.
  const bool upper = u > 0.5;
  const double target = upper ? 1.0 - u : u;
  auto residual = [&](double y) {
    return upper ? target - regularized_gamma_q(alpha, y) : regularized_gamma_p(alpha, y) - target;
  };
  const double lg = ln_gamma(alpha);
  auto density = [&](double y) {
    return std::exp((alpha - 1.0) * std::log(y) - y - lg);
  };

  // Bracket [lo, hi] with residual(lo) < 0 <= residual(hi).
  double lo = 0.0;
  double hi = std::max(1.0, alpha);
  while (residual(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw std::runtime_error("gamma quantile bracket overflow");
  }
  double y = 0.5 * (lo + hi);
  // Initial guess from the small-y expansion G(y) ~ y^alpha / Gamma(alpha + 1).
  if (!upper) {
    const double guess = std::exp((std::log(target) + ln_gamma(alpha + 1.0)) / alpha);
    if (guess > lo && guess < hi) y = guess;
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double r = residual(y);
    if (r == 0.0) return y / beta;
    if (r < 0.0)
      lo = y;
    else
      hi = y;
    const double dens = density(y);
    double next = dens > 0.0 && std::isfinite(dens) ? y - r / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double tol = 1e-12 * next + std::numeric_limits<double>::min();
    if (std::fabs(next - y) <= tol || hi - lo <= tol) {
      return next / beta;
    }
    y = next;
  }
  return y / beta;
}

double gamma_moment(double kappa, double rho, unsigned nu) {
  if (!(kappa > 0.0) || !(rho > 0.0)) throw std::domain_error("gamma moment needs kappa, rho > 0");
  double out = 1.0;
  for (unsigned j = 1; j <= nu; ++j) out *= (rho / kappa) * (kappa + j - 1.0);
  return out;
}

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks distance of an empty sample");
  if (!std::is_sorted(sample.begin(), sample.end()))
    throw std::invalid_argument("ks distance needs a sorted sample");
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double chi_square_survival(double statistic, unsigned dof) {
  if (dof == 0) throw std::domain_error("chi-square needs at least one degree of freedom");
  if (!(statistic >= 0.0)) throw std::domain_error("chi-square statistic must be nonnegative");
  return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

GofReport chi_square_poisson_gof(std::span<const std::uint64_t> hist, double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("poisson mean must be nonnegative");
  std::uint64_t total = 0;
  for (auto c : hist) total += c;
  if (total < 50) throw std::invalid_argument("chi-square test needs at least 50 observations");
  const double n = static_cast<double>(total);
  constexpr double kMinExpected = 5.0;

  // Merge cells left to right. Bin b covers [edge_b, edge_{b+1}); the last
  // bin is [edge_last, inf).
  std::vector<std::uint64_t> edges{0};
  std::vector<double> expected;
  std::vector<double> observed;
  double exp_acc = 0.0, obs_acc = 0.0;
  double mass_left = 1.0;  // P(X >= current k)
  std::uint64_t k = 0;
  const std::uint64_t kmax = std::max<std::uint64_t>(hist.size(), 1);
  for (; k < kmax; ++k) {
    const double p = poisson_pmf(k, lambda);
    exp_acc += n * p;
    obs_acc += k < hist.size() ? static_cast<double>(hist[k]) : 0.0;
    mass_left = poisson_upper_tail(k, lambda);
    if (exp_acc >= kMinExpected && n * mass_left >= kMinExpected) {
      expected.push_back(exp_acc);
      observed.push_back(obs_acc);
      edges.push_back(k + 1);
      exp_acc = obs_acc = 0.0;
    }
  }
  // Right tail bin absorbs what is left, including cells beyond the histogram.
  exp_acc += n * mass_left;
  if (!expected.empty() && exp_acc < kMinExpected) {
    expected.back() += exp_acc;
    observed.back() += obs_acc;
    edges.pop_back();
  } else {
    expected.push_back(exp_acc);
    observed.push_back(obs_acc);
  }
  if (expected.size() < 2) throw std::invalid_argument("degenerate binning: a single merged bin");

  GofReport report;
  report.samples = total;
  report.bins = expected.size();
  report.bin_edges = std::move(edges);
  for (std::size_t b = 0; b < expected.size(); ++b) {
    const double diff = observed[b] - expected[b];
    report.statistic += diff * diff / expected[b];
  }
  report.degrees_of_freedom = static_cast<unsigned>(expected.size() - 1);
  report.p_value = chi_square_survival(report.statistic, report.degrees_of_freedom);
  return report;
}

double truncated_mean(std::span<const double> sample, double threshold) {
  if (sample.empty()) return 0.0;
  double s = 0.0;
  for (double x : sample) {
    if (x < 0.0) throw std::invalid_argument("truncated mean needs a nonnegative sample");
    if (x >= threshold) s += x;
  }
  return s / static_cast<double>(sample.size());
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace densemg
