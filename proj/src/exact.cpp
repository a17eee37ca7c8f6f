#include "densemg/exact.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <string>

#include "densemg/special.hpp"

namespace densemg {
namespace {

constexpr std::uint64_t kHomBudget = 100'000'000;
constexpr std::uint64_t kChainBudget = 100'000;
constexpr std::size_t kDenseSolveLimit = 600;
constexpr double kPowerTol = 1e-13;
constexpr int kPowerMaxIter = 10'000'000;

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::domain_error("kappa must be positive");
}

// n^k, saturating at limit + 1.
std::uint64_t bounded_power(std::uint64_t n, std::uint64_t k, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (n != 0 && r > limit / n) return limit + 1;
    r *= n;
  }
  return r;
}

// C(a, b), saturating at limit + 1.
std::uint64_t bounded_binomial(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  long double r = 1.0L;
  for (std::uint64_t i = 1; i <= b; ++i) {
    r = r * static_cast<long double>(a - b + i) / static_cast<long double>(i);
    if (r > static_cast<long double>(limit)) return limit + 1;
  }
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(r)));
}

double ln_polya_from_types(std::span<const std::uint64_t> types, std::uint64_t length,
                           std::size_t n, double kappa) {
  double lp = 0.0;
  for (auto d : types) lp += ln_rising_factorial(kappa, d);
  return lp - ln_rising_factorial(kappa * static_cast<double>(n), length);
}

// Calls f(word) for every word of the given length in lexicographic order.
template <class F>
void for_each_word(std::size_t n, std::size_t length, F&& f) {
  std::vector<Count> word(length, 0);
  if (n == 0) return;
  for (;;) {
    f(std::span<const Count>(word));
    std::size_t pos = length;
    while (pos > 0) {
      --pos;
      if (++word[pos] < n) break;
      word[pos] = 0;
      if (pos == 0) return;
    }
    if (length == 0) return;
  }
}

bool pattern_matches(const AdjacencyMatrix& a, const AdjacencyMatrix& b,
                     std::span<const std::size_t> phi) {
  const std::size_t k = a.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j)
      if (a(i, j) != b(phi[i], phi[j])) return false;
  return true;
}

template <class State>
DistributionTable<State> table_from(const std::vector<State>& states, std::span<const double> p) {
  DistributionTable<State> t;
  for (std::size_t s = 0; s < states.size(); ++s) t.entries.emplace(states[s], p[s]);
  return t;
}

}  // namespace

double polya_probability(std::span<const Count> word, std::size_t n, double kappa) {
  check_kappa(kappa);
  std::vector<std::uint64_t> types(n, 0);
  for (Count c : word) {
    if (c >= n) throw std::invalid_argument("word entry outside the color range");
    ++types[c];
  }
  return std::exp(ln_polya_from_types(types, word.size(), n, kappa));
}

double polya_probability(const UrnConfiguration& psi, double kappa) {
  return polya_probability(psi.word(), psi.colors(), kappa);
}

double ln_word_count(const AdjacencyMatrix& b) {
  const std::size_t n = b.size();
  const EdgeCounts ec = edge_counts(b);
  double l = ln_factorial(ec.m) + static_cast<double>(ec.m_prime) * std::log(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    l -= ln_factorial(b(i, i) / 2);
    for (std::size_t j = i + 1; j < n; ++j) l -= ln_factorial(b(i, j));
  }
  return l;
}

double stationary_probability(const AdjacencyMatrix& b, double kappa) {
  check_kappa(kappa);
  b.validate();
  const auto d = degrees(b);
  const std::uint64_t m = edge_counts(b).m;
  return std::exp(ln_polya_from_types(d, 2 * m, b.size(), kappa) + ln_word_count(b));
}

double edge_stationary_probability(const AdjacencyMatrix& b,
                                   const DistributionTable<DegreeSequence>& degree_law) {
  b.validate();
  const std::uint64_t m = edge_counts(b).m;
  for (const auto& [d, p] : degree_law.entries) {
    if (d.size() != b.size() || d.total() != 2 * m)
      throw std::invalid_argument("degree law is inconsistent with the graph's size or edge count");
  }
  const DegreeSequence d = degree_sequence(b);
  const double pd = degree_law.probability(d);
  if (pd == 0.0) return 0.0;
  double l = std::log(pd) - ln_factorial(2 * m);
  for (auto di : d.values()) l += ln_factorial(di);
  return std::exp(l + ln_word_count(b));
}

DistributionTable<DegreeSequence> polya_degree_law(std::size_t n, std::uint64_t m, double kappa) {
  check_kappa(kappa);
  if (n == 0) throw std::invalid_argument("degree law needs at least one vertex");
  const std::uint64_t total = 2 * m;
  if (bounded_binomial(total + n - 1, n - 1, kChainBudget) > kChainBudget)
    throw BudgetExceeded("too many degree sequences to enumerate");
  DistributionTable<DegreeSequence> law;
  std::vector<std::uint64_t> d(n, 0);
  // Compositions of `total` into n parts, lexicographic.
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
    if (i + 1 == n) {
      d[i] = left;
      double l = ln_factorial(total) + ln_polya_from_types(d, total, n, kappa);
      for (auto v : d) l -= ln_factorial(v);
      law.entries.emplace(DegreeSequence(d), std::exp(l));
      return;
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      d[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return law;
}

double exact_homdensity(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  const std::size_t k = a.size(), n = b.size();
  const std::uint64_t maps = bounded_power(n, k, kHomBudget);
  if (maps > kHomBudget) throw BudgetExceeded("n^k exceeds the enumeration budget");
  if (n == 0) return 0.0;
  std::vector<std::size_t> phi(k, 0);
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < maps; ++r) {
    if (pattern_matches(a, b, phi)) ++hits;
    for (std::size_t pos = k; pos > 0; --pos) {
      if (++phi[pos - 1] < n) break;
      phi[pos - 1] = 0;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(maps);
}

double exact_injective_homdensity(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  const std::size_t k = a.size(), n = b.size();
  if (k > n) throw std::invalid_argument("pattern has more vertices than the graph");
  if (bounded_power(n, k, kHomBudget) > kHomBudget)
    throw BudgetExceeded("n^k exceeds the enumeration budget");
  std::vector<std::size_t> phi(k);
  std::vector<bool> used(n, false);
  std::uint64_t hits = 0, total = 0;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == k) {
      ++total;
      if (pattern_matches(a, b, phi)) ++hits;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      phi[pos] = v;
      self(self, pos + 1);
      used[v] = false;
    }
  };
  rec(rec, 0);
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<UrnConfiguration> enumerate_words(std::size_t n, std::size_t length,
                                              std::uint64_t budget) {
  if (bounded_power(n, length, budget) > budget)
    throw BudgetExceeded("n^length exceeds the enumeration budget");
  std::vector<UrnConfiguration> out;
  for_each_word(n, length, [&](std::span<const Count> w) {
    out.emplace_back(n, std::vector<Count>(w.begin(), w.end()));
  });
  return out;
}

std::vector<AdjacencyMatrix> enumerate_adjacency(std::size_t n, std::uint64_t m,
                                                 std::uint64_t budget) {
  const std::size_t cells = upper_size(n);
  if (cells == 0) throw std::invalid_argument("need at least one vertex");
  if (bounded_binomial(m + cells - 1, cells - 1, budget) > budget)
    throw BudgetExceeded("|A_n^m| exceeds the enumeration budget");
  std::vector<bool> diagonal(cells, false);
  for (std::size_t i = 0; i < n; ++i) diagonal[upper_index(n, i, i)] = true;
  std::vector<Count> upper(cells, 0);
  std::vector<AdjacencyMatrix> out;
  auto rec = [&](auto&& self, std::size_t pos, std::uint64_t left) -> void {
    if (pos + 1 == cells) {
      upper[pos] = static_cast<Count>(diagonal[pos] ? 2 * left : left);
      out.emplace_back(n, upper, Validate::no);
      return;
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      upper[pos] = static_cast<Count>(diagonal[pos] ? 2 * v : v);
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, m);
  return out;
}

std::vector<AdjacencyMatrix> enumerate_patterns(std::size_t k, Count max_off, Count max_diag) {
  const std::size_t cells = upper_size(k);
  std::vector<Count> upper(cells, 0);
  std::vector<AdjacencyMatrix> out;
  std::vector<bool> diagonal(cells, false);
  for (std::size_t i = 0; i < k; ++i) diagonal[upper_index(k, i, i)] = true;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == cells) {
      out.emplace_back(k, upper, Validate::no);
      return;
    }
    const Count step = diagonal[pos] ? 2 : 1;
    const Count top = diagonal[pos] ? max_diag : max_off;
    for (Count v = 0; v <= top; v += step) {
      upper[pos] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

ChainKernel<UrnConfiguration> ball_replacement_kernel(std::size_t n, std::size_t length,
                                                      double kappa) {
  check_kappa(kappa);
  if (length == 0 || length % 2 != 0) throw std::invalid_argument("urn length must be even and positive");
  ChainKernel<UrnConfiguration> k;
  k.states = enumerate_words(n, length, kChainBudget);
  k.rows.resize(k.states.size());
  const double denom = static_cast<double>(length) + static_cast<double>(n) * kappa;
  // Lexicographic order makes the state index the base-n value of the word.
  std::vector<std::size_t> place(length);
  for (std::size_t l = length, p = 1; l > 0; --l, p *= n) place[l - 1] = p;
  for (std::size_t s = 0; s < k.states.size(); ++s) {
    const auto& psi = k.states[s];
    const auto types = psi.type_vector();
    std::map<std::size_t, double> row;
    for (std::size_t xi = 0; xi < length; ++xi) {
      const std::size_t base = s - psi[xi] * place[xi];
      for (std::size_t c = 0; c < n; ++c) {
        const double p = (static_cast<double>(types[c]) + kappa) / denom / static_cast<double>(length);
        row[base + c * place[xi]] += p;
      }
    }
    k.rows[s].assign(row.begin(), row.end());
  }
  return k;
}

ChainKernel<AdjacencyMatrix> edge_reconnect_kernel(std::size_t n, std::uint64_t m, double kappa,
                                                   DetachConvention convention) {
  check_kappa(kappa);
  if (m == 0) throw std::invalid_argument("edge reconnecting chain needs at least one edge");
  ChainKernel<AdjacencyMatrix> k;
  k.states = enumerate_adjacency(n, m, kChainBudget);
  std::map<AdjacencyMatrix, std::size_t> index;
  for (std::size_t s = 0; s < k.states.size(); ++s) index.emplace(k.states[s], s);
  k.rows.resize(k.states.size());
  const double md = static_cast<double>(m);
  for (std::size_t s = 0; s < k.states.size(); ++s) {
    const AdjacencyMatrix& b = k.states[s];
    const auto d = degrees(b);
    std::map<std::size_t, double> row;
    auto reattach = [&](std::size_t ei, std::size_t ej, std::size_t keep, std::size_t moving,
                        double weight) {
      const bool after = convention == DetachConvention::after;
      const double denom = 2.0 * md - (after ? 1.0 : 0.0) + static_cast<double>(n) * kappa;
      for (std::size_t w = 0; w < n; ++w) {
        const double dw = static_cast<double>(d[w]) - (after && w == moving ? 1.0 : 0.0);
        const double p = weight * (dw + kappa) / denom;
        AdjacencyBuilder next(b);
        next.remove_edge(ei, ej);
        next.add_edge(keep, w);
        row[index.at(std::move(next).build())] += p;
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double c = i == j ? b(i, i) / 2 : b(i, j);
        if (c == 0) continue;
        const double pe = c / md;
        if (i == j) {
          reattach(i, i, i, i, pe);
        } else {
          reattach(i, j, j, i, 0.5 * pe);
          reattach(i, j, i, j, 0.5 * pe);
        }
      }
    }
    k.rows[s].assign(row.begin(), row.end());
  }
  return k;
}

std::vector<double> stationary_vector(
    std::span<const std::vector<std::pair<std::size_t, double>>> rows) {
  const std::size_t s = rows.size();
  if (s == 0) throw std::invalid_argument("empty state space");
  if (s <= kDenseSolveLimit) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s + 1),
                                              static_cast<Eigen::Index>(s));
    for (std::size_t from = 0; from < s; ++from) {
      for (const auto& [to, p] : rows[from]) a(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) += p;
    }
    for (std::size_t i = 0; i < s; ++i) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) -= 1.0;
    a.row(static_cast<Eigen::Index>(s)).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s + 1));
    rhs(static_cast<Eigen::Index>(s)) = 1.0;
    Eigen::VectorXd pi = a.colPivHouseholderQr().solve(rhs);
    return std::vector<double>(pi.data(), pi.data() + s);
  }
  std::vector<double> pi(s, 1.0 / static_cast<double>(s)), next(s);
  for (int iter = 0; iter < kPowerMaxIter; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t from = 0; from < s; ++from)
      for (const auto& [to, p] : rows[from]) next[to] += pi[from] * p;
    double resid = 0.0;
    for (std::size_t i = 0; i < s; ++i) resid += std::abs(next[i] - pi[i]);
    pi.swap(next);
    if (resid <= kPowerTol) return pi;
  }
  throw std::runtime_error("power iteration did not converge");
}

DistributionTable<UrnConfiguration> solve_ball_replacement(std::size_t n, std::uint64_t m,
                                                           double kappa) {
  auto k = ball_replacement_kernel(n, 2 * m, kappa);
  const auto pi = stationary_vector(k.rows);
  return table_from(k.states, pi);
}

DistributionTable<AdjacencyMatrix> solve_edge_reconnect(std::size_t n, std::uint64_t m,
                                                        double kappa, DetachConvention convention) {
  auto k = edge_reconnect_kernel(n, m, kappa, convention);
  const auto pi = stationary_vector(k.rows);
  return table_from(k.states, pi);
}

DistributionTable<UrnConfiguration> exact_polya_distribution(std::size_t n, std::uint64_t m,
                                                             double kappa) {
  DistributionTable<UrnConfiguration> t;
  for (auto& w : enumerate_words(n, 2 * m)) {
    const double p = polya_probability(w, kappa);
    t.entries.emplace(std::move(w), p);
  }
  return t;
}

DistributionTable<AdjacencyMatrix> exact_pag_distribution(std::size_t n, std::uint64_t m,
                                                          double kappa) {
  check_kappa(kappa);
  constexpr std::uint64_t kWordBudget = 10'000'000;
  if (bounded_power(n, 2 * m, kWordBudget) > kWordBudget)
    throw BudgetExceeded("n^(2m) exceeds the enumeration budget");
  DistributionTable<AdjacencyMatrix> t;
  AdjacencyBuilder builder(n);
  for_each_word(n, 2 * m, [&](std::span<const Count> w) {
    builder.clear();
    urn_to_adjacency(w, builder);
    t.entries[builder.build()] += polya_probability(w, n, kappa);
  });
  return t;
}

DistributionTable<AdjacencyMatrix> stationary_distribution(std::size_t n, std::uint64_t m,
                                                           double kappa) {
  DistributionTable<AdjacencyMatrix> t;
  for (auto& b : enumerate_adjacency(n, m)) {
    const double p = stationary_probability(b, kappa);
    t.entries.emplace(std::move(b), p);
  }
  return t;
}

}  // namespace densemg
