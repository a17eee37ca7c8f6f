#pragma once

// Multigraphons: symmetric kernels W(x, y, k) on [0,1]^2 x N0 giving the law
// of the number of parallel edges between latent positions x and y, with
// W(x, x, .) supported on even k (loops are stored doubled).
//
// The edge-stationary family has the Poisson form
//   W(x, y, k) = p(k, q(x) q(y) / rho)             x != y
//   W(x, x, 2c) = p(c, q(x)^2 / (2 rho))
// for a degree quantile q and edge density rho. PoissonGammaMultigraphon is
// the member whose degree law is Gamma(kappa, kappa / rho).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "densemg/graph.hpp"
#include "densemg/quadrature.hpp"
#include "densemg/rng.hpp"

namespace densemg {

class Multigraphon {
 public:
  virtual ~Multigraphon() = default;

  /// W(x, y, k). Dispatches on x == y; x, y must lie in [0, 1].
  double eval(double x, double y, std::uint64_t k) const;

  /// W(x, y, k) for x != y (also meaningful when x == y as the off-diagonal
  /// limit; used for simple-graph projections).
  virtual double off_diagonal(double x, double y, std::uint64_t k) const = 0;
  /// Probability of exactly c loops at x, i.e. W(x, x, 2c).
  virtual double loop_probability(double x, std::uint64_t c) const = 0;

  /// sum_k k W(x, y, k) for x != y. The default sums the series until the
  /// remaining mass drops below 1e-14 and throws DivergenceError if that
  /// does not happen.
  virtual double mean_multiplicity(double x, double y) const;

  /// Closed forms, when the kernel has them.
  virtual std::optional<double> closed_form_average_degree(double /*x*/) const {
    return std::nullopt;
  }
  virtual std::optional<double> closed_form_edge_density() const { return std::nullopt; }
  virtual bool has_closed_form_quantile() const { return false; }
  /// Only called when has_closed_form_quantile() is true.
  virtual double closed_form_degree_cdf(double z) const;
  virtual double closed_form_degree_quantile(double u) const;

  /// One W-random array given the latent positions. Conditional on the
  /// latents, cells on and above the diagonal are independent. The default
  /// samples each cell by inversion.
  virtual AdjacencyMatrix sample_array(std::span<const double> latent, RngStream& rng) const;

 protected:
  /// Number of mass points the default series and inversion may visit.
  static constexpr std::uint64_t kMaxSeriesTerms = 1'000'000;
};

using MultigraphonPtr = std::shared_ptr<const Multigraphon>;

/// W(., ., 0) = 1.
class EmptyMultigraphon final : public Multigraphon {
 public:
  double off_diagonal(double, double, std::uint64_t k) const override { return k == 0 ? 1.0 : 0.0; }
  double loop_probability(double, std::uint64_t c) const override { return c == 0 ? 1.0 : 0.0; }
  double mean_multiplicity(double, double) const override { return 0.0; }
  std::optional<double> closed_form_average_degree(double) const override { return 0.0; }
  std::optional<double> closed_form_edge_density() const override { return 0.0; }
  bool has_closed_form_quantile() const override { return true; }
  double closed_form_degree_cdf(double z) const override { return z >= 0.0 ? 1.0 : 0.0; }
  double closed_form_degree_quantile(double) const override { return 0.0; }
  AdjacencyMatrix sample_array(std::span<const double> latent, RngStream&) const override {
    return AdjacencyMatrix(latent.size());
  }
};

/// Poisson-form kernel driven by a degree quantile function.
class EdgeStationaryMultigraphon : public Multigraphon {
 public:
  /// Right-continuous inverse of the degree law on [0, 1); value at 0 is the
  /// left end of the support.
  virtual double degree_law_quantile(double u) const = 0;
  /// Mean of the degree law, i.e. integral of degree_law_quantile.
  virtual double degree_law_mean() const = 0;
  /// Edge density parameter dividing the Poisson intensities.
  virtual double rho() const = 0;

  double off_diagonal(double x, double y, std::uint64_t k) const override;
  double loop_probability(double x, std::uint64_t c) const override;
  double mean_multiplicity(double x, double y) const override;

  std::optional<double> closed_form_average_degree(double x) const override;
  std::optional<double> closed_form_edge_density() const override;

  AdjacencyMatrix sample_array(std::span<const double> latent, RngStream& rng) const override;
};

/// Limit of the dense preferential attachment graph: degree law
/// Gamma(kappa, kappa / rho).
class PoissonGammaMultigraphon final : public EdgeStationaryMultigraphon {
 public:
  PoissonGammaMultigraphon(double kappa, double rho);

  double kappa() const noexcept { return kappa_; }
  double rho() const override { return rho_; }
  double degree_law_quantile(double u) const override;
  double degree_law_mean() const override { return rho_; }

  bool has_closed_form_quantile() const override { return true; }
  double closed_form_degree_cdf(double z) const override;
  double closed_form_degree_quantile(double u) const override;

 private:
  double kappa_;
  double rho_;
};

/// Edge-stationary kernel built from an empirical degree CDF given as a
/// right-continuous step function on the grid points (z_k, F(z_k)).
class EmpiricalEdgeStationaryMultigraphon final : public EdgeStationaryMultigraphon {
 public:
  /// Grid: z strictly increasing and >= 0, F nondecreasing in [0, 1], last
  /// F equal to 1. rho defaults to the mean of the step law.
  EmpiricalEdgeStationaryMultigraphon(std::vector<std::pair<double, double>> cdf_grid,
                                      std::optional<double> rho = std::nullopt);

  /// Grid from a sample of rescaled degrees; rho is the sample mean.
  static EmpiricalEdgeStationaryMultigraphon from_sample(std::vector<double> rescaled_degrees);

  const std::vector<std::pair<double, double>>& cdf_grid() const noexcept { return grid_; }
  double rho() const override { return rho_; }
  double degree_law_quantile(double u) const override;
  double degree_law_mean() const override { return mean_; }

  bool has_closed_form_quantile() const override { return true; }
  double closed_form_degree_cdf(double z) const override;
  double closed_form_degree_quantile(double u) const override;

 private:
  double step_cdf(double z) const;

  std::vector<std::pair<double, double>> grid_;
  double rho_;
  double mean_;
};

/// W(x, y, k) = 1[B(ceil(nx), ceil(ny)) = k] for a finite adjacency matrix
/// (cells are 1-based; x = 0 falls in the first cell).
class StepMultigraphon final : public Multigraphon {
 public:
  explicit StepMultigraphon(AdjacencyMatrix b);

  const AdjacencyMatrix& matrix() const noexcept { return b_; }

  double off_diagonal(double x, double y, std::uint64_t k) const override;
  double loop_probability(double x, std::uint64_t c) const override;
  double mean_multiplicity(double x, double y) const override;
  std::optional<double> closed_form_average_degree(double x) const override;
  std::optional<double> closed_form_edge_density() const override;
  bool has_closed_form_quantile() const override { return true; }
  double closed_form_degree_cdf(double z) const override;
  double closed_form_degree_quantile(double u) const override;

 private:
  std::size_t cell(double x) const noexcept;

  AdjacencyMatrix b_;
  std::vector<double> sorted_degrees_;  // d(B, i) / n, ascending
};

/// W(x, y, k) with argument checks (x, y in [0, 1]).
double eval(const Multigraphon& w, double x, double y, std::uint64_t k);

/// D(W, x) = integral over y of sum_k k W(x, y, k). Closed form when the
/// kernel has one, otherwise average_degree_quadrature with tol 1e-8.
double average_degree(const Multigraphon& w, double x);
/// rho(W) = integral of D(W, x) over x.
double edge_density(const Multigraphon& w);

/// Quadrature route for D(W, x) and rho(W), independent of the closed forms.
/// The diagonal x = y has measure zero and is skipped.
double average_degree_quadrature(const Multigraphon& w, double x, double tol = 1e-8);
double edge_density_quadrature(const Multigraphon& w, double tol = 1e-8);

/// F_W(z) = Lebesgue measure of {x : D(W, x) <= z}.
double degree_cdf(const Multigraphon& w, double z);
/// F_W^-1(u) = min{z : F_W(z) >= u}, u in (0, 1).
double degree_quantile(const Multigraphon& w, double u);

/// Edge probability of the simple graph obtained by dropping loops and
/// collapsing parallel edges: 1 - W(x, y, 0), off-diagonal branch.
double simple_edge_probability(const Multigraphon& w, double x, double y);

}  // namespace densemg
