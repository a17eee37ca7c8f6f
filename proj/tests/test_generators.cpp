#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>

#include "densemg/exact.hpp"
#include "densemg/generators.hpp"
#include "densemg/io.hpp"
#include "densemg/quadrature.hpp"
#include "densemg/stats.hpp"
#include "support.hpp"

using namespace densemg;
using densemg::testing::max_z_score;
using doctest::Approx;

namespace {

constexpr double kZ = 4.5;  // per-state bound; a handful of states per table

AdjacencyMatrix rows(std::vector<std::vector<Count>> r) { return AdjacencyMatrix::from_rows(r); }

DistributionTable<AdjacencyMatrix> configuration_law(const DegreeSequence& d) {
  DistributionTable<DegreeSequence> point;
  point.entries.emplace(d, 1.0);
  DistributionTable<AdjacencyMatrix> law;
  const std::uint64_t m = d.total() / 2;
  for (const auto& b : enumerate_adjacency(d.size(), m)) {
    if (degree_sequence(b) == d) law.entries.emplace(b, edge_stationary_probability(b, point));
  }
  return law;
}

template <class State>
bool irreducible_aperiodic(const ChainKernel<State>& k) {
  const std::size_t s = k.states.size();
  std::vector<std::vector<std::size_t>> fwd(s), back(s);
  bool self_loop = false;
  for (std::size_t a = 0; a < s; ++a) {
    double total = 0.0;
    for (const auto& [b, p] : k.rows[a]) {
      total += p;
      if (p > 0) {
        fwd[a].push_back(b);
        back[b].push_back(a);
        self_loop |= a == b;
      }
    }
    if (std::fabs(total - 1.0) > 1e-14) return false;
  }
  auto reach_all = [&](const std::vector<std::vector<std::size_t>>& g) {
    std::vector<bool> seen(s, false);
    std::deque<std::size_t> q{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop_front();
      for (auto w : g[v])
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          q.push_back(w);
        }
    }
    return count == s;
  };
  // A self loop in an irreducible chain forces period 1.
  return reach_all(fwd) && reach_all(back) && self_loop;
}

}  // namespace

TEST_CASE("configuration model small cases") {
  RngStream rng(41);
  CHECK(configuration_model(DegreeSequence({1, 1}), rng) == rows({{0, 1}, {1, 0}}));
  CHECK(configuration_model(DegreeSequence({2, 0}), rng) == rows({{2, 0}, {0, 0}}));
  CHECK_THROWS_AS(DegreeSequence({1, 0}), std::invalid_argument);
}

TEST_CASE("configuration model is edge stationary given the degrees") {
  for (const auto& d : {DegreeSequence({2, 2}), DegreeSequence({2, 1, 1}), DegreeSequence({2, 2, 2}),
                        DegreeSequence({3, 1, 2, 0})}) {
    const auto law = configuration_law(d);
    CHECK(law.total() == Approx(1.0).epsilon(1e-12));
    ConfigurationSampler sampler(d);
    RngStream rng(42, d.size());
    std::map<AdjacencyMatrix, std::uint64_t> seen;
    constexpr std::uint64_t N = 100'000;
    for (std::uint64_t s = 0; s < N; ++s) {
      const auto b = sampler.sample(rng);
      CHECK(degree_sequence(b) == d);
      ++seen[b];
    }
    CHECK(max_z_score(seen, law, N) < kZ);
  }
  const auto law22 = configuration_law(DegreeSequence({2, 2}));
  CHECK(law22.probability(rows({{0, 2}, {2, 0}})) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(law22.probability(rows({{2, 0}, {0, 2}})) == Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("polya urn") {
  RngStream rng(43);
  const auto one = polya_urn(1, 6, 0.7, rng);
  for (auto c : one.word()) CHECK(c == 0);
  CHECK_THROWS_AS(polya_urn(2, 4, 0.0, rng), std::domain_error);
  CHECK_THROWS_AS(polya_urn(2, 3, 1.0, rng), std::invalid_argument);

  CHECK(polya_probability(UrnConfiguration(2, {0, 0}), 1.0) == Approx(1.0 / 3.0));
  CHECK(polya_probability(UrnConfiguration(2, {0, 1}), 1.0) == Approx(1.0 / 6.0));
  CHECK(polya_probability(UrnConfiguration(2, {0, 0}), 2.0) == Approx(0.3));

  for (double kappa : {0.5, 1.0, 2.0}) {
    const auto exact = exact_polya_distribution(2, 2, kappa);
    std::map<UrnConfiguration, std::uint64_t> seen, permuted, recolored;
    constexpr std::uint64_t N = 100'000;
    const std::vector<std::size_t> sigma{2, 0, 3, 1};
    for (std::uint64_t s = 0; s < N; ++s) {
      const auto psi = polya_urn(2, 4, kappa, rng);
      ++seen[psi];
      std::vector<Count> p(4), c(4);
      for (std::size_t l = 0; l < 4; ++l) {
        p[l] = psi[sigma[l]];
        c[l] = 1 - psi[l];
      }
      ++permuted[UrnConfiguration(2, p)];
      ++recolored[UrnConfiguration(2, c)];
    }
    CHECK(max_z_score(seen, exact, N) < kZ);
    CHECK(max_z_score(permuted, exact, N) < kZ);
    CHECK(max_z_score(recolored, exact, N) < kZ);
  }
}

TEST_CASE("pag matches the exact law and is deterministic") {
  RngStream rng(44);
  for (std::uint64_t m : {1u, 3u}) CHECK(pag(1, m, 1.0, rng) == rows({{static_cast<Count>(2 * m)}}));
  const auto exact1 = exact_pag_distribution(2, 1, 1.0);
  for (const auto& [b, p] : exact1.entries) CHECK(p == Approx(1.0 / 3.0));

  for (auto [n, m] : {std::pair<std::size_t, std::uint64_t>{2, 2}, {3, 2}}) {
    const auto exact = exact_pag_distribution(n, m, 1.0);
    std::map<AdjacencyMatrix, std::uint64_t> seen;
    constexpr std::uint64_t N = 100'000;
    for (std::uint64_t s = 0; s < N; ++s) ++seen[pag(n, m, 1.0, rng)];
    CHECK(max_z_score(seen, exact, N) < kZ);
  }

  RngStream a(7, 3), b(7, 3);
  CHECK(to_edge_list(pag(30, 400, 1.5, a)) == to_edge_list(pag(30, 400, 1.5, b)));
  const auto big = pag(50, 1000, 0.8, a);
  CHECK(edge_counts(big).m == 1000);
  CHECK_NOTHROW(big.validate());
}

TEST_CASE("edge reconnecting step") {
  RngStream rng(45);
  const auto loop1 = rows({{2, 0}, {0, 0}});
  const auto edge = rows({{0, 1}, {1, 0}});
  CHECK(edge_reconnect_step(rows({{4}}), 1.0, rng) == rows({{4}}));
  CHECK_THROWS_AS(edge_reconnect_step(AdjacencyMatrix(2), 1.0, rng), std::invalid_argument);

  constexpr int N = 100'000;
  int stay = 0, stay_after = 0;
  for (int s = 0; s < N; ++s) {
    const auto next = edge_reconnect_step(loop1, 1.0, rng);
    CHECK((next == loop1 || next == edge));
    stay += next == loop1;
    stay_after += edge_reconnect_step(loop1, 1.0, rng, DetachConvention::after) == loop1;
  }
  const double sd = std::sqrt(0.25 * 0.75 / N);
  CHECK(std::fabs(stay / double(N) - 0.75) < kZ * sd);
  // after detaching, d'(1) = 1: (1 + 1) / (1 + 2)
  CHECK(std::fabs(stay_after / double(N) - 2.0 / 3.0) < kZ * std::sqrt(2.0 / 9.0 / N));

  auto g = pag(6, 20, 1.0, rng);
  for (int s = 0; s < 500; ++s) {
    g = edge_reconnect_step(g, 0.5, rng);
    CHECK(edge_counts(g).m == 20);
    CHECK(g.size() == 6);
  }
}

TEST_CASE("ball replacement step") {
  RngStream rng(46);
  const UrnConfiguration start(2, {0, 0});
  std::map<UrnConfiguration, std::uint64_t> seen;
  constexpr std::uint64_t N = 100'000;
  for (std::uint64_t s = 0; s < N; ++s) ++seen[ball_replacement_step(start, 1.0, rng)];
  DistributionTable<UrnConfiguration> expected;
  expected.entries = {{UrnConfiguration(2, {0, 0}), 0.75},
                      {UrnConfiguration(2, {0, 1}), 0.125},
                      {UrnConfiguration(2, {1, 0}), 0.125}};
  CHECK(max_z_score(seen, expected, N) < kZ);
  CHECK(ball_replacement_step(UrnConfiguration(1, {0, 0, 0, 0}), 2.0, rng) ==
        UrnConfiguration(1, {0, 0, 0, 0}));
  CHECK_THROWS_AS(ball_replacement_step(UrnConfiguration(2, {}), 1.0, rng), std::invalid_argument);

  const auto row = ball_replacement_kernel(2, 2, 1.0).rows[0];  // state (1,1)
  std::map<std::size_t, double> r(row.begin(), row.end());
  CHECK(r[0] == Approx(0.75));
  CHECK(r[1] == Approx(0.125));
  CHECK(r[2] == Approx(0.125));
}

TEST_CASE("ball replacement commutes with the pairing map") {
  for (std::size_t len : {2u, 4u})
    for (double kappa : {0.5, 1.0, 2.0}) {
      const auto urn = ball_replacement_kernel(2, len, kappa);
      const auto edge = edge_reconnect_kernel(2, len / 2, kappa);
      std::map<AdjacencyMatrix, std::size_t> index;
      for (std::size_t s = 0; s < edge.states.size(); ++s) index.emplace(edge.states[s], s);
      for (std::size_t s = 0; s < urn.states.size(); ++s) {
        std::vector<double> pushed(edge.states.size(), 0.0), direct(edge.states.size(), 0.0);
        for (const auto& [t, p] : urn.rows[s]) pushed[index.at(urn_to_adjacency(urn.states[t]))] += p;
        for (const auto& [t, p] : edge.rows[index.at(urn_to_adjacency(urn.states[s]))]) direct[t] += p;
        for (std::size_t t = 0; t < pushed.size(); ++t) CHECK(pushed[t] == Approx(direct[t]).epsilon(1e-14));
      }
    }
}

TEST_CASE("both chains are irreducible and aperiodic on small spaces") {
  for (double kappa : {0.5, 1.0}) {
    CHECK(irreducible_aperiodic(ball_replacement_kernel(2, 4, kappa)));
    CHECK(irreducible_aperiodic(ball_replacement_kernel(3, 4, kappa)));
    CHECK(irreducible_aperiodic(edge_reconnect_kernel(3, 3, kappa)));
    CHECK(irreducible_aperiodic(edge_reconnect_kernel(2, 4, kappa, DetachConvention::after)));
  }
}

TEST_CASE("w-random arrays") {
  RngStream rng(47);
  const auto empty = w_random(EmptyMultigraphon(), 5, rng);
  CHECK(empty.graph == AdjacencyMatrix(5));
  CHECK(empty.latent.size() == 5);

  const PoissonGammaMultigraphon w(1.5, 2.0);
  // Loops at one vertex: mixture over u of Poisson(q(u)^2 / (2 rho)).
  constexpr std::uint64_t N = 100'000;
  std::vector<std::uint64_t> hist;
  for (std::uint64_t s = 0; s < N; ++s) {
    const auto r = w_random(w, 1, rng);
    CHECK(r.graph(0, 0) % 2 == 0);
    const std::uint64_t c = r.graph(0, 0) / 2;
    if (hist.size() <= c) hist.resize(c + 1, 0);
    ++hist[c];
  }
  double chi = 0.0, tail_expected = 1.0, tail_observed = static_cast<double>(N);
  unsigned bins = 0;
  for (std::uint64_t c = 0; c < 6; ++c) {
    const double p = integrate_unit_interval([&](double u) { return w.loop_probability(u, c); }, 1e-10);
    const double o = c < hist.size() ? static_cast<double>(hist[c]) : 0.0;
    chi += (o - p * N) * (o - p * N) / (p * N);
    tail_expected -= p;
    tail_observed -= o;
    ++bins;
  }
  chi += (tail_observed - tail_expected * N) * (tail_observed - tail_expected * N) / (tail_expected * N);
  CHECK(chi_square_survival(chi, bins) > 1e-4);

  // Off-diagonal marginal vs summed pattern densities.
  std::map<Count, std::uint64_t> off;
  for (std::uint64_t s = 0; s < N; ++s) {
    const auto r = w_random(w, 2, rng);
    CHECK(r.graph(0, 1) == r.graph(1, 0));
    ++off[r.graph(0, 1)];
  }
  for (Count c = 0; c < 4; ++c) {
    const double p = integrate_unit_interval(
        [&](double x) { return integrate_unit_interval([&](double y) { return w.off_diagonal(x, y, c); }, 1e-9); },
        1e-8);
    const double phat = static_cast<double>(off[c]) / N;
    CHECK(std::fabs(phat - p) < kZ * std::sqrt(p * (1 - p) / N) + 1e-6);
  }
}
