#pragma once

// Poisson and Gamma laws, their moments, and the goodness-of-fit tools used
// by the experiments. Everything here is a deterministic function of its
// inputs.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "densemg/special.hpp"

namespace densemg {

/// e^-lambda lambda^k / k!, evaluated in log space. lambda = 0 is the point
/// mass at 0.
double poisson_pmf(std::uint64_t k, double lambda);
/// P(X > k) for X ~ Poisson(lambda), exactly via the incomplete gamma.
double poisson_upper_tail(std::uint64_t k, double lambda);
/// Smallest K with P(X > K) <= eps.
std::uint64_t poisson_truncation_point(double lambda, double eps);

/// Gamma density x^(alpha-1) beta^alpha e^(-beta x) / Gamma(alpha) on x > 0.
double gamma_pdf(double x, double alpha, double beta);
double gamma_cdf(double x, double alpha, double beta);
/// min{z : gamma_cdf(z) >= u} for u in (0, 1); bracketed Newton/bisection to
/// relative tolerance 1e-12 (absolute near zero). u = 0 maps to 0.
double gamma_quantile(double u, double alpha, double beta);

/// nu-th moment of Gamma(kappa, kappa / rho):
/// (rho / kappa)^nu * kappa (kappa + 1) ... (kappa + nu - 1).
double gamma_moment(double kappa, double rho, unsigned nu);

/// Kolmogorov-Smirnov distance sup |F_emp - cdf| of a sorted sample.
double ks_distance(std::span<const double> sorted_sample, const std::function<double(double)>& cdf);

struct GofReport {
  double statistic = 0.0;
  double p_value = 1.0;
  unsigned degrees_of_freedom = 0;
  std::size_t bins = 0;
  std::uint64_t samples = 0;
  /// Lower edge of each merged bin; the last bin is open to the right.
  std::vector<std::uint64_t> bin_edges;
};

/// Pearson chi-square test of a count histogram (hist[k] = number of
/// observations equal to k) against Poisson(lambda). Adjacent cells are
/// merged left to right until each expected count is at least 5; the last
/// bin collects the whole right tail. Requires at least 50 observations
/// and two bins after merging.
GofReport chi_square_poisson_gof(std::span<const std::uint64_t> hist, double lambda);

/// Upper tail of the chi-square law with dof degrees of freedom.
double chi_square_survival(double statistic, unsigned dof);

/// Mean of x * 1[x >= threshold] over a nonnegative sample.
double truncated_mean(std::span<const double> sample, double threshold);

double median(std::vector<double> values);

}  // namespace densemg
