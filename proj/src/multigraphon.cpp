#include "densemg/multigraphon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "densemg/stats.hpp"
#include "densemg/variates.hpp"

namespace densemg {
namespace {

constexpr double kSeriesMassTol = 1e-14;
// Midpoint grid used for F_W when a kernel has no closed-form degree law.
constexpr std::size_t kDegreeGrid = 4096;

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

double poisson_intensity(double a, double b, double scale) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b / scale;
}

}  // namespace

// ---------------------------------------------------------------------------
// Multigraphon defaults

double Multigraphon::eval(double x, double y, std::uint64_t k) const {
  if (x == y) return k % 2 == 1 ? 0.0 : loop_probability(x, k / 2);
  return off_diagonal(x, y, k);
}

double Multigraphon::mean_multiplicity(double x, double y) const {
  double mass = 0.0, mean = 0.0;
  for (std::uint64_t k = 0; k < kMaxSeriesTerms; ++k) {
    const double p = off_diagonal(x, y, k);
    mass += p;
    mean += static_cast<double>(k) * p;
    if (mass >= 1.0 - kSeriesMassTol) return mean;
  }
  throw DivergenceError("multiplicity series did not reach its normalization");
}

double Multigraphon::closed_form_degree_cdf(double) const {
  throw std::logic_error("kernel has no closed-form degree distribution");
}

double Multigraphon::closed_form_degree_quantile(double) const {
  throw std::logic_error("kernel has no closed-form degree quantile");
}

AdjacencyMatrix Multigraphon::sample_array(std::span<const double> latent, RngStream& rng) const {
  const std::size_t k = latent.size();
  std::vector<Count> upper(upper_size(k));
  std::size_t pos = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j, ++pos) {
      const double u = rng.uniform();
      double acc = 0.0;
      std::uint64_t v = 0;
      for (;; ++v) {
        if (v >= kMaxSeriesTerms) throw DivergenceError("inversion sampling did not terminate");
        acc += i == j ? loop_probability(latent[i], v) : off_diagonal(latent[i], latent[j], v);
        if (u < acc) break;
      }
      upper[pos] = static_cast<Count>(i == j ? 2 * v : v);
    }
  }
  return AdjacencyMatrix(k, std::move(upper), Validate::no);
}

// ---------------------------------------------------------------------------
// Edge-stationary (Poisson) kernels

double EdgeStationaryMultigraphon::off_diagonal(double x, double y, std::uint64_t k) const {
  return poisson_pmf(k, poisson_intensity(degree_law_quantile(x), degree_law_quantile(y), rho()));
}

double EdgeStationaryMultigraphon::loop_probability(double x, std::uint64_t c) const {
  const double q = degree_law_quantile(x);
  return poisson_pmf(c, poisson_intensity(q, q, 2.0 * rho()));
}

double EdgeStationaryMultigraphon::mean_multiplicity(double x, double y) const {
  return poisson_intensity(degree_law_quantile(x), degree_law_quantile(y), rho());
}

std::optional<double> EdgeStationaryMultigraphon::closed_form_average_degree(double x) const {
  return degree_law_quantile(x) * degree_law_mean() / rho();
}

std::optional<double> EdgeStationaryMultigraphon::closed_form_edge_density() const {
  const double mean = degree_law_mean();
  return mean * mean / rho();
}

AdjacencyMatrix EdgeStationaryMultigraphon::sample_array(std::span<const double> latent,
                                                         RngStream& rng) const {
  const std::size_t k = latent.size();
  std::vector<double> z(k);
  for (std::size_t i = 0; i < k; ++i) z[i] = degree_law_quantile(latent[i]);
  std::vector<Count> upper(upper_size(k));
  std::size_t pos = 0;
  const double r = rho();
  for (std::size_t i = 0; i < k; ++i) {
    upper[pos++] = static_cast<Count>(2 * sample_poisson(rng, poisson_intensity(z[i], z[i], 2.0 * r)));
    for (std::size_t j = i + 1; j < k; ++j) {
      upper[pos++] = static_cast<Count>(sample_poisson(rng, poisson_intensity(z[i], z[j], r)));
    }
  }
  return AdjacencyMatrix(k, std::move(upper), Validate::no);
}

PoissonGammaMultigraphon::PoissonGammaMultigraphon(double kappa, double rho)
    : kappa_(kappa), rho_(rho) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::domain_error("kappa must be positive");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::domain_error("rho must be positive");
}

double PoissonGammaMultigraphon::degree_law_quantile(double u) const {
  if (u >= 1.0) return std::numeric_limits<double>::infinity();
  return gamma_quantile(u, kappa_, kappa_ / rho_);
}

double PoissonGammaMultigraphon::closed_form_degree_cdf(double z) const {
  return gamma_cdf(z, kappa_, kappa_ / rho_);
}

double PoissonGammaMultigraphon::closed_form_degree_quantile(double u) const {
  return gamma_quantile(u, kappa_, kappa_ / rho_);
}

EmpiricalEdgeStationaryMultigraphon::EmpiricalEdgeStationaryMultigraphon(
    std::vector<std::pair<double, double>> cdf_grid, std::optional<double> rho)
    : grid_(std::move(cdf_grid)) {
  if (grid_.empty()) throw std::invalid_argument("empty degree cdf grid");
  double prev_z = -1.0, prev_f = 0.0;
  mean_ = 0.0;
  for (const auto& [z, f] : grid_) {
    if (!(z >= 0.0) || !std::isfinite(z) || z <= prev_z)
      throw std::invalid_argument("cdf grid points must be finite, nonnegative and increasing");
    if (!(f >= prev_f) || f > 1.0) throw std::invalid_argument("cdf grid values must be nondecreasing in [0, 1]");
    mean_ += z * (f - prev_f);
    prev_z = z;
    prev_f = f;
  }
  if (std::fabs(prev_f - 1.0) > 1e-12) throw std::invalid_argument("cdf grid must end at 1");
  grid_.back().second = 1.0;
  rho_ = rho.value_or(mean_);
  if (!(rho_ > 0.0) || !std::isfinite(rho_)) throw std::domain_error("rho must be positive");
}

EmpiricalEdgeStationaryMultigraphon EmpiricalEdgeStationaryMultigraphon::from_sample(
    std::vector<double> rescaled_degrees) {
  if (rescaled_degrees.empty()) throw std::invalid_argument("empty degree sample");
  std::sort(rescaled_degrees.begin(), rescaled_degrees.end());
  const double n = static_cast<double>(rescaled_degrees.size());
  std::vector<std::pair<double, double>> grid;
  for (std::size_t i = 0; i < rescaled_degrees.size(); ++i) {
    const double z = rescaled_degrees[i];
    if (i + 1 < rescaled_degrees.size() && rescaled_degrees[i + 1] == z) continue;
    grid.emplace_back(z, static_cast<double>(i + 1) / n);
  }
  return EmpiricalEdgeStationaryMultigraphon(std::move(grid));
}

double EmpiricalEdgeStationaryMultigraphon::step_cdf(double z) const {
  auto it = std::upper_bound(grid_.begin(), grid_.end(), z,
                             [](double v, const auto& p) { return v < p.first; });
  if (it == grid_.begin()) return 0.0;
  return std::prev(it)->second;
}

double EmpiricalEdgeStationaryMultigraphon::degree_law_quantile(double u) const {
  if (u <= 0.0) return 0.0;
  auto it = std::lower_bound(grid_.begin(), grid_.end(), u,
                             [](const auto& p, double v) { return p.second < v; });
  if (it == grid_.end()) return grid_.back().first;
  return it->first;
}

double EmpiricalEdgeStationaryMultigraphon::closed_form_degree_cdf(double z) const {
  if (mean_ == 0.0) return z >= 0.0 ? 1.0 : 0.0;
  return step_cdf(z * rho_ / mean_);
}

double EmpiricalEdgeStationaryMultigraphon::closed_form_degree_quantile(double u) const {
  return degree_law_quantile(u) * mean_ / rho_;
}

// ---------------------------------------------------------------------------
// Step kernels

StepMultigraphon::StepMultigraphon(AdjacencyMatrix b) : b_(std::move(b)) {
  if (b_.size() == 0) throw std::invalid_argument("step multigraphon needs at least one vertex");
  const double n = static_cast<double>(b_.size());
  for (auto d : degrees(b_)) sorted_degrees_.push_back(static_cast<double>(d) / n);
  std::sort(sorted_degrees_.begin(), sorted_degrees_.end());
}

std::size_t StepMultigraphon::cell(double x) const noexcept {
  const std::size_t n = b_.size();
  if (x <= 0.0) return 0;
  const auto c = static_cast<std::size_t>(std::ceil(x * static_cast<double>(n)));
  return std::min(std::max<std::size_t>(c, 1), n) - 1;
}

double StepMultigraphon::off_diagonal(double x, double y, std::uint64_t k) const {
  return b_(cell(x), cell(y)) == k ? 1.0 : 0.0;
}

double StepMultigraphon::loop_probability(double x, std::uint64_t c) const {
  const std::size_t i = cell(x);
  return b_(i, i) == 2 * c ? 1.0 : 0.0;
}

double StepMultigraphon::mean_multiplicity(double x, double y) const {
  return static_cast<double>(b_(cell(x), cell(y)));
}

std::optional<double> StepMultigraphon::closed_form_average_degree(double x) const {
  return static_cast<double>(degree(b_, cell(x))) / static_cast<double>(b_.size());
}

std::optional<double> StepMultigraphon::closed_form_edge_density() const {
  const double n = static_cast<double>(b_.size());
  return 2.0 * static_cast<double>(edge_counts(b_).m) / (n * n);
}

double StepMultigraphon::closed_form_degree_cdf(double z) const {
  auto it = std::upper_bound(sorted_degrees_.begin(), sorted_degrees_.end(), z);
  return static_cast<double>(it - sorted_degrees_.begin()) /
         static_cast<double>(sorted_degrees_.size());
}

double StepMultigraphon::closed_form_degree_quantile(double u) const {
  const double n = static_cast<double>(sorted_degrees_.size());
  auto idx = static_cast<std::size_t>(std::ceil(u * n));
  idx = std::min(std::max<std::size_t>(idx, 1), sorted_degrees_.size());
  return sorted_degrees_[idx - 1];
}

// ---------------------------------------------------------------------------
// Functionals

double eval(const Multigraphon& w, double x, double y, std::uint64_t k) {
  check_unit(x, "x");
  check_unit(y, "y");
  return w.eval(x, y, k);
}

double average_degree_quadrature(const Multigraphon& w, double x, double tol) {
  check_unit(x, "x");
  return integrate_unit_interval([&](double y) { return w.mean_multiplicity(x, y); }, tol);
}

double edge_density_quadrature(const Multigraphon& w, double tol) {
  return integrate_unit_interval([&](double x) { return average_degree_quadrature(w, x, tol); },
                                 tol);
}

double average_degree(const Multigraphon& w, double x) {
  check_unit(x, "x");
  if (auto d = w.closed_form_average_degree(x)) return *d;
  return average_degree_quadrature(w, x);
}

double edge_density(const Multigraphon& w) {
  if (auto r = w.closed_form_edge_density()) return *r;
  return integrate_unit_interval([&](double x) { return average_degree(w, x); }, 1e-8);
}

namespace {

std::vector<double> sorted_degree_grid(const Multigraphon& w) {
  std::vector<double> d(kDegreeGrid);
  for (std::size_t i = 0; i < kDegreeGrid; ++i) {
    d[i] = average_degree(w, (static_cast<double>(i) + 0.5) / static_cast<double>(kDegreeGrid));
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

double degree_cdf(const Multigraphon& w, double z) {
  if (w.has_closed_form_quantile()) return w.closed_form_degree_cdf(z);
  const auto d = sorted_degree_grid(w);
  return static_cast<double>(std::upper_bound(d.begin(), d.end(), z) - d.begin()) /
         static_cast<double>(d.size());
}

double degree_quantile(const Multigraphon& w, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("degree quantile needs u in (0, 1)");
  if (w.has_closed_form_quantile()) return w.closed_form_degree_quantile(u);
  const auto d = sorted_degree_grid(w);
  auto idx = static_cast<std::size_t>(std::ceil(u * static_cast<double>(d.size())));
  return d[std::max<std::size_t>(idx, 1) - 1];
}

double simple_edge_probability(const Multigraphon& w, double x, double y) {
  check_unit(x, "x");
  check_unit(y, "y");
  return 1.0 - w.off_diagonal(x, y, 0);
}

}  // namespace densemg
