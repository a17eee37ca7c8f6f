#include "densemg/experiments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "densemg/densities.hpp"
#include "densemg/exact.hpp"
#include "densemg/generators.hpp"
#include "densemg/io.hpp"
#include "densemg/json_io.hpp"
#include "densemg/multigraphon.hpp"
#include "densemg/parallel.hpp"
#include "densemg/stats.hpp"
#include "densemg/thresholds.hpp"

namespace densemg {
namespace {

namespace th = thresholds;

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

struct Defaults {
  std::size_t n;
  std::optional<std::uint64_t> m;
  std::optional<double> rho;
  double kappa;
  std::uint64_t samples;
  std::size_t replicas;
};

const std::map<std::string, Defaults>& defaults_table() {
  static const std::map<std::string, Defaults> table = {
      {"exact-small", {2, 2, std::nullopt, 1.0, 0, 1}},
      {"degree-gamma", {400, std::nullopt, 2.0, 1.5, 0, th::kDefaultReplicas}},
      {"edge-poisson", {200, std::nullopt, 2.0, 1.5, 10'000, th::kDefaultReplicas}},
      {"density-convergence", {400, std::nullopt, 2.0, 1.5, 100'000, th::kDefaultReplicas}},
      {"spag-check", {th::kSpagGrid, std::nullopt, 2.0, 1.0, 0, 1}},
      {"ui-diagnostic", {200, std::nullopt, 2.0, 1.5, 0, th::kDefaultReplicas}},
  };
  return table;
}

class Builder {
 public:
  explicit Builder(std::string name) { report_.experiment = std::move(name); }
  void observe(std::size_t n, std::string statistic, double value) {
    report_.observations.push_back({report_.experiment, n, std::move(statistic), value});
  }
  // Passes when value < threshold (value <= threshold when inclusive).
  void below(std::string name, double value, double threshold, bool inclusive = false) {
    const bool ok = inclusive ? value <= threshold : value < threshold;
    report_.assertions.push_back({std::move(name), ok && std::isfinite(value), value, threshold});
  }
  void at_least(std::string name, double value, double threshold) {
    report_.assertions.push_back({std::move(name), value >= threshold, value, threshold});
  }
  void check(std::string name, bool ok) {
    report_.assertions.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0});
  }
  Report take(const ExperimentConfig& cfg);

 private:
  Report report_;
};

Report Builder::take(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> source(cfg.sources.begin(), cfg.sources.end());
  auto add = [&](const std::string& key, std::string value) {
    auto it = source.find(key);
    const std::string from = it == source.end() ? "default" : it->second;
    report_.header.emplace_back(key, value + " (" + from + ")");
  };
  add("n", std::to_string(*cfg.n));
  if (cfg.m) add("m", std::to_string(*cfg.m));
  if (cfg.rho) add("rho", format_double(*cfg.rho));
  add("kappa", format_double(*cfg.kappa));
  add("seed", std::to_string(cfg.seed));
  add("samples", std::to_string(*cfg.samples));
  add("replicas", std::to_string(*cfg.replicas));
  if (!cfg.sweep.empty()) {
    std::string s;
    for (auto v : cfg.sweep) s += (s.empty() ? "" : ",") + std::to_string(v);
    add("sweep", s);
  }
  return std::move(report_);
}

std::vector<std::size_t> sizes_for(const ExperimentConfig& cfg) {
  std::vector<std::size_t> sizes = cfg.sweep;
  if (sizes.empty()) sizes.push_back(*cfg.n);
  return sizes;
}

// ---------------------------------------------------------------- exact-small

Report exact_small(const ExperimentConfig& cfg) {
  Builder out("exact-small");
  const std::size_t n = *cfg.n;
  const std::uint64_t m = edge_count_for(cfg, n);
  const double kappa = *cfg.kappa;

  const auto stationary = stationary_distribution(n, m, kappa);
  const auto pag_table = exact_pag_distribution(n, m, kappa);
  const double pag_gap = max_abs_difference(pag_table, stationary);
  out.observe(n, "pag_vs_stationary_max_abs", pag_gap);
  out.observe(n, "pag_vs_stationary_tv", total_variation(pag_table, stationary));
  out.below("pag law equals stationary formula", pag_gap, th::kExactIdentity, true);

  const double norm = std::fabs(stationary.total() - 1.0);
  out.observe(n, "stationary_normalization_error", norm);
  out.below("stationary formula sums to one", norm, th::kNormalization, true);

  const auto law = polya_degree_law(n, m, kappa);
  double factor_gap = 0.0;
  for (const auto& [b, p] : stationary.entries)
    factor_gap = std::max(factor_gap, std::fabs(p - edge_stationary_probability(b, law)));
  out.observe(n, "edge_stationary_factorization_max_abs", factor_gap);
  out.below("edge-stationary factorization", factor_gap, th::kExactIdentity, true);

  const auto urn_solved = solve_ball_replacement(n, m, kappa);
  const auto urn_closed = exact_polya_distribution(n, m, kappa);
  const double urn_gap = max_abs_difference(urn_solved, urn_closed);
  out.observe(n, "ball_replacement_vs_polya_max_abs", urn_gap);
  out.observe(n, "ball_replacement_vs_polya_tv", total_variation(urn_solved, urn_closed));
  out.below("ball replacement chain is Polya-stationary", urn_gap, th::kChainStationarity, true);

  const auto edge_solved = solve_edge_reconnect(n, m, kappa, DetachConvention::before);
  const double edge_gap = max_abs_difference(edge_solved, stationary);
  out.observe(n, "edge_reconnect_vs_stationary_max_abs", edge_gap);
  out.observe(n, "edge_reconnect_vs_stationary_tv", total_variation(edge_solved, stationary));
  out.below("edge reconnecting chain matches stationary formula", edge_gap,
            th::kChainStationarity, true);
  return out.take(cfg);
}

// --------------------------------------------------------------- degree-gamma

Report degree_gamma(const ExperimentConfig& cfg) {
  Builder out("degree-gamma");
  const double kappa = *cfg.kappa;
  const auto sizes = sizes_for(cfg);
  std::vector<double> medians;
  for (std::size_t n : sizes) {
    const std::uint64_t m = edge_count_for(cfg, n);
    const double rho = cfg.rho ? *cfg.rho : 2.0 * static_cast<double>(m) / (double(n) * double(n));
    auto ks = parallel_map(*cfg.replicas, [&](std::size_t r) {
      RngStream rng = RngStream(cfg.seed, r).substream(n);
      auto sample = degree_sample(pag(n, m, kappa, rng));
      std::sort(sample.begin(), sample.end());
      return ks_distance(sample, [&](double z) { return gamma_cdf(z, kappa, kappa / rho); });
    });
    const double med = median(ks);
    medians.push_back(med);
    out.observe(n, "ks_median", med);
  }
  out.below("median KS distance at n=" + std::to_string(sizes.back()), medians.back(),
            th::kDegreeKs);
  if (medians.size() > 1) {
    bool decreasing = true;
    for (std::size_t i = 1; i < medians.size(); ++i) decreasing &= medians[i] < medians[i - 1];
    out.check("median KS strictly decreasing in n", decreasing);
  }
  return out.take(cfg);
}

// --------------------------------------------------------------- edge-poisson

Report edge_poisson(const ExperimentConfig& cfg) {
  Builder out("edge-poisson");
  const std::size_t n = *cfg.n;
  const std::uint64_t m = edge_count_for(cfg, n);
  const std::size_t pairs = *cfg.replicas;
  if (2 * pairs > n) throw ConfigError("edge-poisson needs n >= 2 * replicas");
  RngStream degree_rng(cfg.seed, 0);
  const DegreeSequence d = degree_sequence(pag(n, m, *cfg.kappa, degree_rng));

  // Pair r is (2r, 2r+1); loops are tracked at vertices 0..pairs-1.
  constexpr std::uint64_t kChunk = 1000;
  const std::uint64_t samples = *cfg.samples;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  using Hist = std::vector<std::vector<std::uint64_t>>;
  auto parts = parallel_map(chunks, [&](std::size_t c) {
    RngStream rng = RngStream(cfg.seed, 1).substream(c);
    ConfigurationSampler sampler(d);
    Hist edge_hist(pairs), loop_hist(pairs);
    std::vector<std::uint64_t> edge_count(pairs), loop_count(pairs);
    const std::uint64_t size = std::min(kChunk, samples - c * kChunk);
    for (std::uint64_t s = 0; s < size; ++s) {
      sampler.resample(rng);
      std::fill(edge_count.begin(), edge_count.end(), 0);
      std::fill(loop_count.begin(), loop_count.end(), 0);
      const auto& stubs = sampler.stubs();
      for (std::size_t e = 0; e + 1 < stubs.size(); e += 2) {
        const std::size_t a = std::min(stubs[e], stubs[e + 1]);
        const std::size_t b = std::max(stubs[e], stubs[e + 1]);
        if (a == b) {
          if (a < pairs) ++loop_count[a];
        } else if (b < 2 * pairs && a % 2 == 0 && b == a + 1) {
          ++edge_count[a / 2];
        }
      }
      auto bump = [](std::vector<std::uint64_t>& h, std::uint64_t v) {
        if (h.size() <= v) h.resize(v + 1, 0);
        ++h[v];
      };
      for (std::size_t r = 0; r < pairs; ++r) {
        bump(edge_hist[r], edge_count[r]);
        bump(loop_hist[r], loop_count[r]);
      }
    }
    return std::make_pair(std::move(edge_hist), std::move(loop_hist));
  });
  Hist edge_hist(pairs), loop_hist(pairs);
  auto merge = [](std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
    if (into.size() < from.size()) into.resize(from.size(), 0);
    for (std::size_t k = 0; k < from.size(); ++k) into[k] += from[k];
  };
  for (const auto& [eh, lh] : parts) {
    for (std::size_t r = 0; r < pairs; ++r) {
      merge(edge_hist[r], eh[r]);
      merge(loop_hist[r], lh[r]);
    }
  }

  const double two_m = 2.0 * static_cast<double>(m);
  std::size_t edge_pass = 0, loop_pass = 0, loop_tested = 0;
  for (std::size_t r = 0; r < pairs; ++r) {
    const double lambda = static_cast<double>(d[2 * r]) * static_cast<double>(d[2 * r + 1]) / two_m;
    const auto gof = chi_square_poisson_gof(edge_hist[r], lambda);
    out.observe(n, "pair_" + std::to_string(2 * r + 1) + "_" + std::to_string(2 * r + 2) + "_p_value",
                gof.p_value);
    if (gof.p_value > th::kPoissonPValueFloor) ++edge_pass;

    const double di = static_cast<double>(d[r]);
    const double loop_lambda = di * di / (2.0 * two_m);
    try {
      const auto loop_gof = chi_square_poisson_gof(loop_hist[r], loop_lambda);
      out.observe(n, "loop_" + std::to_string(r + 1) + "_p_value", loop_gof.p_value);
      ++loop_tested;
      if (loop_gof.p_value > th::kPoissonPValueFloor) ++loop_pass;
    } catch (const std::invalid_argument&) {
      // Too little expected mass off zero to form two bins; nothing to test.
    }
  }
  const double need = std::ceil(th::kPoissonPassFraction * static_cast<double>(pairs));
  out.observe(n, "pairs_passing", static_cast<double>(edge_pass));
  out.observe(n, "loops_passing", static_cast<double>(loop_pass));
  out.at_least("edge multiplicities Poisson(d_i d_j / 2m)", static_cast<double>(edge_pass), need);
  out.at_least("loop counts Poisson(d_i^2 / 4m)", static_cast<double>(loop_pass),
               std::ceil(th::kPoissonPassFraction * static_cast<double>(loop_tested)));
  return out.take(cfg);
}

// -------------------------------------------------------- density-convergence

Report density_convergence(const ExperimentConfig& cfg) {
  Builder out("density-convergence");
  const std::size_t n = *cfg.n;
  const std::uint64_t m = edge_count_for(cfg, n);
  const double kappa = *cfg.kappa;
  const double rho = edge_density_for(cfg);
  const auto patterns = enumerate_patterns(2, th::kDensityMaxOffDiagonal, th::kDensityMaxDiagonal);
  const PoissonGammaMultigraphon w(kappa, rho);
  RngStream graphon_rng(cfg.seed, 0);
  const auto limit = graphon_density_mc(patterns, w, *cfg.samples, graphon_rng);

  // margin = |diff| - (sigma * combined stderr + slack); medians over replicas.
  auto margins = parallel_map(*cfg.replicas, [&](std::size_t r) {
    RngStream rng(cfg.seed, r + 1);
    const auto g = pag(n, m, kappa, rng);
    const auto est = hom_density_mc(patterns, g, *cfg.samples, rng);
    std::vector<std::pair<double, double>> row;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      const double diff = std::fabs(est[p].mean - limit[p].mean);
      const double se = std::hypot(est[p].standard_error, limit[p].standard_error);
      row.emplace_back(diff, diff - (th::kDensitySigma * se + th::kDensitySlack));
    }
    return row;
  });
  double worst = -INFINITY;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    std::vector<double> diffs, slack;
    for (const auto& row : margins) {
      diffs.push_back(row[p].first);
      slack.push_back(row[p].second);
    }
    const std::string key = canonical_key(patterns[p]);
    out.observe(n, "abs_diff[" + key + "]", median(diffs));
    out.observe(n, "graphon_density[" + key + "]", limit[p].mean);
    worst = std::max(worst, median(slack));
  }
  out.observe(n, "worst_median_margin", worst);
  out.below("median |t(A,G_n) - t(A,W)| within 3 combined stderr + 0.01", worst, 0.0);
  return out.take(cfg);
}

// ----------------------------------------------------------------- spag-check

Report spag_check(const ExperimentConfig& cfg) {
  Builder out("spag-check");
  const double kappa = *cfg.kappa;
  const double rho = edge_density_for(cfg);
  const PoissonGammaMultigraphon w(kappa, rho);
  const std::size_t g = *cfg.n;
  double worst = 0.0;
  for (std::size_t a = 1; a <= g; ++a) {
    for (std::size_t b = 1; b <= g; ++b) {
      const double x = static_cast<double>(a) / static_cast<double>(g + 1);
      const double y = static_cast<double>(b) / static_cast<double>(g + 1);
      double expected;
      if (kappa == 1.0) {
        expected = -std::expm1(-rho * std::log1p(-x) * std::log1p(-y));
      } else {
        const double beta = kappa / rho;
        expected = -std::expm1(-gamma_quantile(x, kappa, beta) * gamma_quantile(y, kappa, beta) / rho);
      }
      worst = std::max(worst, std::fabs(simple_edge_probability(w, x, y) - expected));
    }
  }
  out.observe(g, "max_abs_error", worst);
  out.below("simple-graph edge probability identity", worst, th::kSpagIdentity, true);
  return out.take(cfg);
}

// -------------------------------------------------------------- ui-diagnostic

Report ui_diagnostic(const ExperimentConfig& cfg) {
  Builder out("ui-diagnostic");
  const double kappa = *cfg.kappa;
  constexpr std::size_t kLevels = std::size(th::kUiLevels);
  for (std::size_t n : sizes_for(cfg)) {
    const std::uint64_t m = edge_count_for(cfg, n);
    auto rows = parallel_map(*cfg.replicas, [&](std::size_t r) {
      RngStream rng = RngStream(cfg.seed, r).substream(n);
      const auto g = pag(n, m, kappa, rng);
      std::vector<double> off, diag;
      off.reserve(n * (n - 1) / 2);
      for (std::size_t i = 0; i < n; ++i) {
        diag.push_back(g(i, i));
        for (std::size_t j = i + 1; j < n; ++j) off.push_back(g(i, j));
      }
      std::array<double, 2 * kLevels> row{};
      for (std::size_t l = 0; l < kLevels; ++l) {
        row[l] = truncated_mean(off, th::kUiLevels[l]);
        row[kLevels + l] = truncated_mean(diag, th::kUiLevels[l]);
      }
      return row;
    });
    for (int part = 0; part < 2; ++part) {
      const std::string name = part == 0 ? "offdiag" : "diag";
      std::vector<double> med(kLevels);
      for (std::size_t l = 0; l < kLevels; ++l) {
        std::vector<double> col;
        for (const auto& row : rows) col.push_back(row[part * kLevels + l]);
        med[l] = median(col);
        out.observe(n, name + "_tail_M" + format_double(th::kUiLevels[l]), med[l]);
      }
      bool monotone = true;
      for (std::size_t l = 1; l < kLevels; ++l) monotone &= med[l] <= med[l - 1];
      out.check(name + " tails nonincreasing in M at n=" + std::to_string(n), monotone);
      out.below(name + " tail at largest M vs mean at n=" + std::to_string(n), med.back(),
                th::kUiTailFraction * med.front(), true);
    }
  }
  return out.take(cfg);
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"exact-small",         "degree-gamma",
                                                 "edge-poisson",        "density-convergence",
                                                 "spag-check",          "ui-diagnostic"};
  return names;
}

ExperimentConfig resolve_config(ExperimentConfig cfg) {
  const auto& table = defaults_table();
  auto it = table.find(cfg.experiment);
  if (it == table.end()) throw ConfigError("unknown experiment: " + cfg.experiment);
  const Defaults& def = it->second;
  if (cfg.m && cfg.rho) throw ConfigError("give either m or rho, not both");
  if (!cfg.n) cfg.n = def.n;
  if (!cfg.kappa) cfg.kappa = def.kappa;
  if (!cfg.samples) cfg.samples = def.samples;
  if (!cfg.replicas) cfg.replicas = def.replicas;
  if (!cfg.m && !cfg.rho) {
    cfg.m = def.m;
    cfg.rho = def.rho;
  }
  if (*cfg.n == 0) throw ConfigError("n must be at least 1");
  for (auto v : cfg.sweep)
    if (v == 0) throw ConfigError("sweep sizes must be positive");
  if (!(*cfg.kappa > 0.0) || !std::isfinite(*cfg.kappa)) throw ConfigError("kappa must be positive");
  if (cfg.rho && (!(*cfg.rho > 0.0) || !std::isfinite(*cfg.rho))) throw ConfigError("rho must be positive");
  if (cfg.m && *cfg.m == 0) throw ConfigError("m must be at least 1");
  if (*cfg.replicas == 0) throw ConfigError("replicas must be at least 1");
  for (std::size_t n : sizes_for(cfg))
    if (edge_count_for(cfg, n) == 0) throw ConfigError("rho * n^2 / 2 must be at least 1");
  if (cfg.experiment == "edge-poisson" && *cfg.samples < 50)
    throw ConfigError("edge-poisson needs at least 50 samples");
  if ((cfg.experiment == "density-convergence") && *cfg.samples == 0)
    throw ConfigError("samples must be positive");
  return cfg;
}

std::uint64_t edge_count_for(const ExperimentConfig& cfg, std::size_t n) {
  if (cfg.rho) {
    const double nn = static_cast<double>(n);
    return static_cast<std::uint64_t>(std::floor(*cfg.rho * nn * nn / 2.0));
  }
  if (!cfg.m) throw ConfigError("neither m nor rho is set");
  return *cfg.m;
}

double edge_density_for(const ExperimentConfig& cfg) {
  if (cfg.rho) return *cfg.rho;
  const double n = static_cast<double>(*cfg.n);
  return 2.0 * static_cast<double>(edge_count_for(cfg, *cfg.n)) / (n * n);
}

bool Report::passed() const noexcept {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.passed; });
}

Report run_experiment(const ExperimentConfig& raw) {
  const ExperimentConfig cfg = resolve_config(raw);
  if (cfg.experiment == "exact-small") return exact_small(cfg);
  if (cfg.experiment == "degree-gamma") return degree_gamma(cfg);
  if (cfg.experiment == "edge-poisson") return edge_poisson(cfg);
  if (cfg.experiment == "density-convergence") return density_convergence(cfg);
  if (cfg.experiment == "spag-check") return spag_check(cfg);
  return ui_diagnostic(cfg);
}

std::string report_to_json(const Report& report) {
  Json j;
  j["experiment"] = report.experiment;
  Json header = Json::object();
  for (const auto& [k, v] : report.header) header[k] = v;
  j["config"] = std::move(header);
  Json obs = Json::array();
  for (const auto& o : report.observations)
    obs.push_back(Json{{"n", o.n}, {"statistic", o.statistic}, {"value", o.value}});
  j["observations"] = std::move(obs);
  Json asserts = Json::array();
  for (const auto& a : report.assertions)
    asserts.push_back(
        Json{{"name", a.name}, {"passed", a.passed}, {"value", a.value}, {"threshold", a.threshold}});
  j["assertions"] = std::move(asserts);
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

std::string emit_plot_data(const Report& report) {
  std::string csv = "experiment,n,statistic,value\n";
  for (const auto& o : report.observations) {
    csv += o.experiment + "," + std::to_string(o.n) + "," + o.statistic + "," +
           format_double(o.value) + "\n";
  }
  return csv;
}

std::vector<Observation> parse_plot_data(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "experiment,n,statistic,value")
    throw std::runtime_error("missing or malformed CSV header");
  std::vector<Observation> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
      fields.push_back(line.substr(start, pos - start));
    fields.push_back(line.substr(start));
    auto fail = [&] { throw std::runtime_error("malformed CSV row " + std::to_string(lineno)); };
    if (fields.size() != 4 || fields[0].empty() || fields[2].empty()) fail();
    Observation o{fields[0], 0, fields[2], 0.0};
    const auto& nf = fields[1];
    auto r1 = std::from_chars(nf.data(), nf.data() + nf.size(), o.n);
    if (r1.ec != std::errc() || r1.ptr != nf.data() + nf.size()) fail();
    const auto& vf = fields[3];
    auto r2 = std::from_chars(vf.data(), vf.data() + vf.size(), o.value);
    if (r2.ec != std::errc() || r2.ptr != vf.data() + vf.size()) fail();
    rows.push_back(std::move(o));
  }
  if (!csv.empty() && csv.back() != '\n') throw std::runtime_error("CSV must end with a newline");
  return rows;
}

}  // namespace densemg
