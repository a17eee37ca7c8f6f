// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every criterion uses seed 1 with its own stream id; no seed is tuned.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "densemg/densities.hpp"
#include "densemg/exact.hpp"
#include "densemg/experiments.hpp"
#include "densemg/generators.hpp"
#include "densemg/multigraphon.hpp"
#include "densemg/special.hpp"
#include "densemg/stats.hpp"
#include "densemg/thresholds.hpp"

using namespace densemg;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_seconds,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = budget_seconds <= 0.0 || secs < budget_seconds;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::printf("[%s] criterion %d: %s | %s | %.2fs%s\n", ok ? "PASS" : "FAIL", id, title,
              o.detail.c_str(), secs,
              in_time ? "" : (" (budget " + std::to_string(budget_seconds) + "s exceeded)").c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "PAG law equals the stationary formula", 1.0, [] {
    double worst = 0.0;
    for (auto [n, m] : {std::pair<std::size_t, std::uint64_t>{2, 1}, {2, 2}, {3, 2}})
      for (double kappa : {0.5, 1.0, 2.0})
        worst = std::max(worst, max_abs_difference(exact_pag_distribution(n, m, kappa),
                                                   stationary_distribution(n, m, kappa)));
    return Outcome{worst <= 1e-12, fmt("max |diff| = %.3g (tol 1e-12)", worst)};
  });

  criterion(2, "chain kernels solve to the closed forms", 5.0, [] {
    double urn = 0.0, edge = 0.0;
    for (std::uint64_t m : {1, 2}) {
      for (double kappa : {0.5, 1.0, 2.0})
        urn = std::max(urn, max_abs_difference(solve_ball_replacement(2, m, kappa),
                                               exact_polya_distribution(2, m, kappa)));
      edge = std::max(edge, max_abs_difference(solve_edge_reconnect(2, m, 1.0, DetachConvention::before),
                                               stationary_distribution(2, m, 1.0)));
    }
    return Outcome{urn <= 1e-10 && edge <= 1e-10,
                   fmt("ball replacement %.3g, ", urn) + fmt("edge reconnect %.3g (tol 1e-10)", edge)};
  });

  criterion(3, "configuration model on degrees (2,2)", 2.0, [] {
    const DegreeSequence d({2, 2});
    ConfigurationSampler sampler(d);
    RngStream rng(kSeed, 3);
    constexpr int kSamples = 100'000;
    int doubles = 0;
    for (int s = 0; s < kSamples; ++s) doubles += sampler.sample(rng)(0, 1) == 2;
    const double p = double(doubles) / kSamples;
    const double band = 3.0 * std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / kSamples);
    DistributionTable<DegreeSequence> law;
    law.entries.emplace(d, 1.0);
    const double p_double = edge_stationary_probability(AdjacencyMatrix::from_rows({{0, 2}, {2, 0}}), law);
    const double p_loops = edge_stationary_probability(AdjacencyMatrix::from_rows({{2, 0}, {0, 2}}), law);
    const bool ok = std::fabs(p - 2.0 / 3.0) <= band && std::fabs(p_double - 2.0 / 3.0) <= 1e-15 &&
                    std::fabs(p_loops - 1.0 / 3.0) <= 1e-15;
    return Outcome{ok, fmt("empirical %.5f", p) + fmt(" (band %.5f), ", band) +
                           fmt("formula %.17g / ", p_double) + fmt("%.17g", p_loops)};
  });

  criterion(4, "rescaled PAG degrees approach Gamma(1.5, 0.75)", 30.0, [] {
    ExperimentConfig cfg;
    cfg.experiment = "degree-gamma";
    cfg.n = 400;
    cfg.rho = 2.0;
    cfg.kappa = 1.5;
    cfg.seed = kSeed;
    cfg.sweep = {100, 200, 400};
    const Report r = run_experiment(cfg);
    std::string detail = "median KS";
    for (const auto& o : r.observations) detail += fmt(" %.4f", o.value);
    return Outcome{r.passed(), detail + " at n=100,200,400 (need < 0.06 at 400, decreasing)"};
  });

  criterion(5, "configuration-model multiplicities are Poisson", 60.0, [] {
    ExperimentConfig cfg;
    cfg.experiment = "edge-poisson";
    cfg.n = 200;
    cfg.rho = 2.0;
    cfg.kappa = 1.5;
    cfg.seed = kSeed;
    cfg.samples = 10'000;
    cfg.replicas = 10;
    const Report r = run_experiment(cfg);
    double pairs = -1;
    for (const auto& o : r.observations)
      if (o.statistic == "pairs_passing") pairs = o.value;
    return Outcome{pairs >= 8, fmt("%.0f of 10 pairs with p > 0.001 (need 8)", pairs)};
  });

  criterion(6, "pattern densities of PAG(400,160000,1.5) vs PoissonGamma(1.5,2)", 60.0, [] {
    const auto patterns = enumerate_patterns(2, thresholds::kDensityMaxOffDiagonal,
                                             thresholds::kDensityMaxDiagonal);
    RngStream rng(kSeed, 6);
    const AdjacencyMatrix g = pag(400, 160'000, 1.5, rng);
    const auto emp = hom_density_mc(patterns, g, 100'000, rng);
    const auto lim = graphon_density_mc(patterns, PoissonGammaMultigraphon(1.5, 2.0), 100'000, rng);
    int bad = 0;
    double worst = -INFINITY;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      const double tol = thresholds::kDensitySigma *
                             std::hypot(emp[p].standard_error, lim[p].standard_error) +
                         thresholds::kDensitySlack;
      const double excess = std::fabs(emp[p].mean - lim[p].mean) - tol;
      worst = std::max(worst, excess);
      bad += excess >= 0.0;
    }
    return Outcome{bad == 0, std::to_string(patterns.size()) + " patterns, " + std::to_string(bad) +
                                 fmt(" outside tolerance, worst excess %+.4f", worst)};
  });

  criterion(7, "degree moments and the Polya prefix probability", 0.0, [] {
    constexpr std::size_t n = 300;
    constexpr double kappa = 1.5, rho = 2.0;
    const std::uint64_t m = static_cast<std::uint64_t>(rho * n * n / 2);
    constexpr int kDraws = 1000;
    std::vector<double> z(kDraws);
    for (int s = 0; s < kDraws; ++s) {
      RngStream rng = RngStream(kSeed, 7).substream(s);
      const auto psi = polya_urn(n, 2 * m, kappa, rng);
      const auto w = psi.word();
      z[s] = static_cast<double>(std::count(w.begin(), w.end(), Count{0})) / n;
    }
    bool ok = true;
    std::string detail;
    for (unsigned nu = 1; nu <= 3; ++nu) {
      double sum = 0, sq = 0;
      for (double v : z) {
        const double p = std::pow(v, nu);
        sum += p;
        sq += p * p;
      }
      const double mean = sum / kDraws;
      const double sigma = std::sqrt((sq / kDraws - mean * mean) / kDraws);
      const double target = gamma_moment(kappa, rho, nu);
      const double dev = std::fabs(mean - target) / sigma;
      ok &= dev < thresholds::kMomentSigma;
      detail += fmt("nu=%.0f:", nu) + fmt(" %.2f sigma; ", dev);
    }
    double exact_gap = 0.0;
    for (double k : {0.5, 1.0, 1.5, 2.0}) {
      const auto words = enumerate_words(3, 6);
      for (std::size_t nu = 1; nu <= 3; ++nu) {
        double prefix = 0.0;
        for (const auto& psi : words) {
          bool all_first = true;
          for (std::size_t l = 0; l < nu; ++l) all_first &= psi[l] == 0;
          if (all_first) prefix += polya_probability(psi, k);
        }
        double formula = 1.0;
        for (std::size_t j = 0; j < nu; ++j) formula *= (k + double(j)) / (3.0 * k + double(j));
        exact_gap = std::max(exact_gap, std::fabs(prefix - formula));
      }
    }
    ok &= exact_gap <= 1e-12;
    return Outcome{ok, detail + fmt("prefix formula gap %.3g", exact_gap)};
  });

  criterion(8, "PoissonGamma self-consistency", 0.0, [] {
    double rho_gap = 0.0, deg_gap = 0.0, tail = 0.0;
    for (auto [kappa, rho] : {std::pair{1.5, 2.0}, {1.0, 1.0}, {0.5, 3.0}, {3.0, 0.5}}) {
      const PoissonGammaMultigraphon w(kappa, rho);
      rho_gap = std::max({rho_gap, std::fabs(edge_density(w) - rho),
                          std::fabs(edge_density_quadrature(w) - rho)});
      for (int i = 1; i <= 19; ++i) {
        const double x = i / 20.0;
        deg_gap = std::max(deg_gap, std::fabs(average_degree(w, x) - degree_quantile(w, x)));
        for (int j = 1; j <= 19; ++j) {
          const double y = j / 20.0;
          double s = 0.0;
          for (std::uint64_t k = 0; k < 400; ++k) s += eval(w, x, y, k);
          tail = std::max(tail, std::fabs(1.0 - s));
        }
      }
    }
    return Outcome{rho_gap <= 1e-6 && deg_gap <= 1e-8 && tail < 1e-10,
                   fmt("|rho(W)-rho| %.3g, ", rho_gap) + fmt("|D-F^-1| %.3g, ", deg_gap) +
                       fmt("mass defect %.3g", tail)};
  });

  criterion(9, "simple-graph edge probability for kappa = 1", 0.0, [] {
    double worst = 0.0;
    for (double rho : {0.5, 1.0, 2.0, 4.0}) {
      const PoissonGammaMultigraphon w(1.0, rho);
      for (int i = 1; i <= 19; ++i)
        for (int j = 1; j <= 19; ++j) {
          const double x = i / 20.0, y = j / 20.0;
          const double expected = 1.0 - std::exp(-rho * std::log(1.0 - x) * std::log(1.0 - y));
          worst = std::max(worst, std::fabs(simple_edge_probability(w, x, y) - expected));
        }
    }
    return Outcome{worst <= 1e-12, fmt("max |diff| = %.3g (tol 1e-12)", worst)};
  });

  criterion(10, "special-function numerics", 0.0, [] {
    std::vector<double> us;
    for (double e = 1e-6; e < 0.1; e *= 10) {
      us.push_back(e);
      us.push_back(1.0 - e);
    }
    for (int i = 1; i <= 9; ++i) us.push_back(i / 10.0);
    double round_trip = 0.0;
    for (double alpha : {0.3, 0.5, 1.0, 1.5, 4.0, 25.0})
      for (double beta : {0.25, 1.0, 3.0})
        for (double u : us)
          round_trip = std::max(round_trip, std::fabs(gamma_cdf(gamma_quantile(u, alpha, beta), alpha, beta) - u));

    double incomplete = 0.0;
    for (double a : {0.5, 1.0, 1.5, 3.0, 7.5, 20.0})
      for (double x : {0.1, 0.7, 1.5, 4.0, 9.0, 22.0, 40.0}) {
        const double lg = std::lgamma(a);
        auto integrand = [&](double t) { return std::exp((a - 1.0) * std::log(t) - t - lg); };
        // t^(a-1) is singular at 0 for a < 1: substitute t = s^2 there.
        double p;
        if (a < 1.0) {
          p = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
              [&](double s) { return 2.0 * s * integrand(s * s); }, 0.0, std::sqrt(x), 15, 1e-15);
        } else {
          p = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, x, 15, 1e-15);
        }
        incomplete = std::max(incomplete, std::fabs(regularized_gamma_p(a, x) - p));
      }

    double recurrence = 0.0;
    for (double x = 0.5; x <= 100.0; x += 0.0625)
      recurrence = std::max(recurrence, std::fabs(ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x)));
    return Outcome{round_trip <= 1e-10 && incomplete <= 1e-10 && recurrence <= 1e-12,
                   fmt("round trip %.3g, ", round_trip) + fmt("incomplete gamma %.3g, ", incomplete) +
                       fmt("ln-gamma recurrence %.3g", recurrence)};
  });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
