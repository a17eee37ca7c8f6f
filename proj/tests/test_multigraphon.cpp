#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "densemg/json_io.hpp"
#include "densemg/multigraphon.hpp"
#include "densemg/stats.hpp"
#include "support.hpp"

using namespace densemg;
using doctest::Approx;

namespace {

// Constant Poisson(lambda) kernel with no closed forms, to drive the
// generic series, quadrature and grid code paths.
class ConstantPoisson final : public Multigraphon {
 public:
  explicit ConstantPoisson(double lambda) : lambda_(lambda) {}
  double off_diagonal(double, double, std::uint64_t k) const override { return poisson_pmf(k, lambda_); }
  double loop_probability(double, std::uint64_t c) const override { return poisson_pmf(c, lambda_ / 2); }

 private:
  double lambda_;
};

std::vector<MultigraphonPtr> kernels() {
  return {
      std::make_shared<PoissonGammaMultigraphon>(1.5, 2.0),
      std::make_shared<PoissonGammaMultigraphon>(0.5, 0.7),
      std::make_shared<EmpiricalEdgeStationaryMultigraphon>(
          std::vector<std::pair<double, double>>{{0.5, 0.2}, {1.0, 0.5}, {4.0, 1.0}}),
      std::make_shared<StepMultigraphon>(AdjacencyMatrix::from_rows({{2, 1, 0}, {1, 0, 3}, {0, 3, 4}})),
      std::make_shared<EmptyMultigraphon>(),
      std::make_shared<ConstantPoisson>(1.3),
  };
}

}  // namespace

TEST_CASE("multigraphon axioms at random points") {
  RngStream rng(31);
  for (const auto& w : kernels()) {
    for (int t = 0; t < 1000; ++t) {
      const double x = rng.uniform(), y = rng.uniform();
      const auto k = rng.uniform_index(12);
      const double v = eval(*w, x, y, k);
      CHECK((v >= 0.0 && v <= 1.0));
      CHECK(v == eval(*w, y, x, k));
      CHECK(eval(*w, x, x, 2 * k + 1) == 0.0);
    }
    for (int t = 0; t < 50; ++t) {
      const double x = rng.uniform(), y = rng.uniform();
      double off = 0, diag = 0;
      for (std::uint64_t k = 0; k < 200; ++k) {
        off += eval(*w, x, y, k);
        diag += eval(*w, x, x, k);
      }
      CHECK(std::fabs(off - 1.0) < 1e-10);
      CHECK(std::fabs(diag - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("eval checks its arguments") {
  const PoissonGammaMultigraphon w(1.0, 1.0);
  CHECK_THROWS_AS(eval(w, -0.1, 0.5, 0), std::domain_error);
  CHECK_THROWS_AS(eval(w, 0.5, 1.5, 0), std::domain_error);
  CHECK_THROWS_AS(PoissonGammaMultigraphon(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(degree_quantile(w, 0.0), std::domain_error);
  CHECK_THROWS_AS(degree_quantile(w, 1.0), std::domain_error);
}

TEST_CASE("poisson-gamma point values") {
  const PoissonGammaMultigraphon w(1.0, 1.0);
  const double x = 1.0 - std::exp(-1.0);
  CHECK(eval(w, x, std::nextafter(x, 1.0), 0) == Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(w.off_diagonal(x, x, 0) == Approx(std::exp(-1.0)).epsilon(1e-14));
  // loops at x: Poisson(F^-1(x)^2 / (2 rho)) = Poisson(1/2)
  CHECK(eval(w, x, x, 2) == Approx(poisson_pmf(1, 0.5)).epsilon(1e-14));
  CHECK(degree_quantile(PoissonGammaMultigraphon(1.0, 2.0), 0.5) == Approx(2 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("average degree equals the degree quantile for poisson-gamma") {
  for (auto [kappa, rho] : {std::pair{1.5, 2.0}, {0.5, 1.0}, {4.0, 0.3}}) {
    const PoissonGammaMultigraphon w(kappa, rho);
    CHECK(average_degree(w, 0.0) == 0.0);
    for (int i = 1; i <= 19; ++i) {
      const double x = i / 20.0;
      CHECK(std::fabs(average_degree(w, x) - degree_quantile(w, x)) < 1e-8);
      CHECK(std::fabs(average_degree_quadrature(w, x) - degree_quantile(w, x)) < 1e-6 * (1 + degree_quantile(w, x)));
    }
    CHECK(std::fabs(edge_density_quadrature(w) - rho) < 1e-6);
    CHECK(edge_density(w) == Approx(rho));
    for (double z : {0.01, 0.5, 2.0, 9.0})
      CHECK(std::fabs(degree_cdf(w, z) - gamma_cdf(z, kappa, kappa / rho)) < 1e-10);
    CHECK(std::fabs(degree_cdf(w, 1e9) - 1.0) < 1e-9);
  }
}

TEST_CASE("quantiles use the min convention") {
  const EmpiricalEdgeStationaryMultigraphon w({{1.0, 0.25}, {2.0, 0.75}, {3.0, 1.0}});
  CHECK(w.rho() == Approx(0.25 * 1 + 0.5 * 2 + 0.25 * 3));
  CHECK(degree_quantile(w, 0.25) == 1.0);
  CHECK(degree_quantile(w, 0.2500001) == 2.0);
  CHECK(degree_quantile(w, 0.75) == 2.0);
  CHECK(degree_quantile(w, 0.76) == 3.0);
  CHECK(degree_cdf(w, 0.99) == 0.0);
  CHECK(degree_cdf(w, 2.0) == 0.75);
  const PoissonGammaMultigraphon pg(1.5, 2.0);
  for (double u : {0.01, 0.3, 0.9}) {
    const double q = degree_quantile(pg, u);
    CHECK(degree_cdf(pg, q) >= u - 1e-12);
    CHECK(degree_cdf(pg, q * (1 - 1e-9)) < u);
  }
}

TEST_CASE("empirical kernels from samples") {
  const auto w = EmpiricalEdgeStationaryMultigraphon::from_sample({3.0, 1.0, 2.0, 2.0});
  CHECK(w.rho() == Approx(2.0));
  CHECK(w.cdf_grid().size() == 3);
  CHECK(w.cdf_grid()[1] == std::pair{2.0, 0.75});
  CHECK(edge_density(w) == Approx(2.0));
  for (double x : {0.1, 0.3, 0.6, 0.9})
    CHECK(average_degree_quadrature(w, x) == Approx(*w.closed_form_average_degree(x)).epsilon(1e-7));
  CHECK_THROWS_AS(EmpiricalEdgeStationaryMultigraphon({{1.0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalEdgeStationaryMultigraphon({{2.0, 0.5}, {1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("empty and step kernels") {
  const EmptyMultigraphon e;
  CHECK(average_degree(e, 0.4) == 0.0);
  CHECK(edge_density(e) == 0.0);
  CHECK(simple_edge_probability(e, 0.2, 0.7) == 0.0);

  const auto b = AdjacencyMatrix::from_rows({{2, 1}, {1, 0}});
  const StepMultigraphon s(b);
  CHECK(edge_density(s) == Approx(1.0));  // 2m / n^2 = 4 / 4
  CHECK(edge_density_quadrature(s) == Approx(1.0).epsilon(1e-6));
  CHECK(eval(s, 0.25, 0.75, 1) == 1.0);
  CHECK(eval(s, 0.25, 0.25, 2) == 1.0);
  CHECK(eval(s, 0.0, 0.75, 1) == 1.0);
  CHECK(average_degree(s, 0.3) == Approx(1.5));
  CHECK(degree_quantile(s, 0.5) == Approx(0.5));
  CHECK(degree_quantile(s, 0.51) == Approx(1.5));
}

TEST_CASE("generic paths without closed forms") {
  const ConstantPoisson w(1.3);
  CHECK(average_degree(w, 0.4) == Approx(1.3).epsilon(1e-8));
  CHECK(edge_density(w) == Approx(1.3).epsilon(1e-7));
  CHECK(degree_quantile(w, 0.5) == Approx(1.3).epsilon(1e-8));
  CHECK(degree_cdf(w, 1.2) == 0.0);
  CHECK(degree_cdf(w, 1.4) == 1.0);
}

TEST_CASE("simple edge probability") {
  for (double rho : {0.5, 2.0}) {
    const PoissonGammaMultigraphon w(1.0, rho);
    for (int i = 1; i <= 19; ++i)
      for (int j = 1; j <= 19; ++j) {
        const double x = i / 20.0, y = j / 20.0;
        CHECK(std::fabs(simple_edge_probability(w, x, y) -
                        (1 - std::exp(-rho * std::log(1 - x) * std::log(1 - y)))) < 1e-12);
      }
    double prev = 0.0;
    for (double x : {0.9, 0.99, 0.999, 0.99999, 1 - 1e-9}) {
      const double p = simple_edge_probability(w, x, 0.5);
      CHECK(p > prev);
      prev = p;
    }
    CHECK(prev > 0.999);
  }
}

TEST_CASE("multigraphon json round trip") {
  const PoissonGammaMultigraphon pg(1.5, 2.0);
  CHECK(multigraphon_to_json(pg).dump() == R"({"type":"poisson_gamma","kappa":1.5,"rho":2.0})");
  const auto back = multigraphon_from_json(multigraphon_to_json(pg));
  CHECK(eval(*back, 0.3, 0.6, 2) == eval(pg, 0.3, 0.6, 2));

  const EmpiricalEdgeStationaryMultigraphon emp({{1.0, 0.25}, {2.0, 1.0}}, 1.5);
  const auto j = multigraphon_to_json(emp);
  CHECK(j.dump() == R"({"type":"empirical","rho":1.5,"cdf_grid":[[1.0,0.25],[2.0,1.0]]})");
  const auto emp_back = multigraphon_from_json(j);
  CHECK(eval(*emp_back, 0.3, 0.6, 1) == eval(emp, 0.3, 0.6, 1));

  CHECK_THROWS_AS(multigraphon_from_json(Json::parse(R"({"type":"nope"})")), FormatError);
  CHECK_THROWS_AS(multigraphon_from_json(Json::parse(R"({"type":"poisson_gamma"})")), FormatError);
  CHECK_THROWS_AS(multigraphon_to_json(EmptyMultigraphon()), std::invalid_argument);
}
