// densemg command-line harness: gen, exact, density, experiment.
//
// Exit codes: 0 all assertions pass, 1 an assertion failed, 2 usage or
// configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "densemg/densities.hpp"
#include "densemg/exact.hpp"
#include "densemg/experiments.hpp"
#include "densemg/generators.hpp"
#include "densemg/io.hpp"
#include "densemg/json_io.hpp"

namespace {

using namespace densemg;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> m;
  std::optional<double> rho;
  std::optional<double> kappa;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> samples;
  std::optional<std::size_t> replicas;
  std::string out;
  std::string format = "json";
  std::vector<std::size_t> sweep;

  std::string model = "pag";
  std::vector<std::uint64_t> degrees;
  std::string graphon_path;
  std::string graph_path;
  std::string table = "pag";
  std::string pattern;
  std::string experiment;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t need_n(const Options& o) {
  if (!o.n || *o.n == 0) throw ConfigError("--n is required and must be positive");
  return *o.n;
}

std::uint64_t need_m(const Options& o, std::size_t n) {
  if (o.m && o.rho) throw ConfigError("give either --m or --rho, not both");
  if (o.m) return *o.m;
  if (o.rho) {
    if (!(*o.rho > 0.0)) throw ConfigError("--rho must be positive");
    const double nn = static_cast<double>(n);
    return static_cast<std::uint64_t>(std::floor(*o.rho * nn * nn / 2.0));
  }
  throw ConfigError("one of --m or --rho is required");
}

double need_kappa(const Options& o) {
  const double k = o.kappa.value_or(1.0);
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("--kappa must be positive");
  return k;
}

MultigraphonPtr load_graphon(const Options& o) {
  Json j;
  try {
    j = Json::parse(slurp(o.graphon_path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("graphon file is not valid JSON: ") + e.what());
  }
  return multigraphon_from_json(j);
}

int run_gen(const Options& o) {
  RngStream rng(o.seed);
  AdjacencyMatrix g;
  if (o.model == "pag") {
    const std::size_t n = need_n(o);
    g = pag(n, need_m(o, n), need_kappa(o), rng);
  } else if (o.model == "configuration") {
    if (o.degrees.empty()) throw ConfigError("--degrees is required for the configuration model");
    g = configuration_model(DegreeSequence(o.degrees), rng);
  } else if (o.model == "w-random") {
    const std::size_t n = need_n(o);
    MultigraphonPtr w;
    if (!o.graphon_path.empty()) {
      w = load_graphon(o);
    } else {
      if (!o.rho) throw ConfigError("w-random needs --graphon or --rho");
      w = std::make_shared<PoissonGammaMultigraphon>(need_kappa(o), *o.rho);
    }
    g = w_random(*w, n, rng).graph;
  } else {
    throw ConfigError("unknown model: " + o.model);
  }
  emit(to_edge_list(g), o.out);
  return 0;
}

int run_exact(const Options& o) {
  const std::size_t n = need_n(o);
  const std::uint64_t m = need_m(o, n);
  const double kappa = need_kappa(o);
  Json j;
  if (o.table == "pag") {
    j = table_to_json(exact_pag_distribution(n, m, kappa));
  } else if (o.table == "stationary") {
    j = table_to_json(stationary_distribution(n, m, kappa));
  } else if (o.table == "edge-reconnect") {
    j = table_to_json(solve_edge_reconnect(n, m, kappa, DetachConvention::before));
  } else if (o.table == "polya") {
    j = table_to_json(exact_polya_distribution(n, m, kappa));
  } else if (o.table == "ball-replacement") {
    j = table_to_json(solve_ball_replacement(n, m, kappa));
  } else if (o.table == "degree-law") {
    j = table_to_json(polya_degree_law(n, m, kappa));
  } else {
    throw ConfigError("unknown table: " + o.table);
  }
  emit(j.dump(2) + "\n", o.out);
  return 0;
}

int run_density(const Options& o) {
  if (o.pattern.empty()) throw ConfigError("--pattern is required (canonical key, e.g. \"2 1;1 2 1\")");
  AdjacencyMatrix a;
  try {
    a = parse_canonical_key(o.pattern);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad --pattern: ") + e.what());
  }
  const std::uint64_t samples = o.samples.value_or(100'000);
  if (samples == 0) throw ConfigError("--samples must be positive");
  RngStream rng(o.seed);
  DensityEstimate e;
  if (!o.graphon_path.empty()) {
    e = graphon_density_mc(a, *load_graphon(o), samples, rng);
  } else {
    AdjacencyMatrix g;
    if (!o.graph_path.empty()) {
      g = parse_edge_list(slurp(o.graph_path));
    } else {
      const std::size_t n = need_n(o);
      RngStream graph_rng(o.seed, 1);
      g = pag(n, need_m(o, n), need_kappa(o), graph_rng);
    }
    e = hom_density_mc(a, g, samples, rng);
  }
  emit(density_to_json(a, e).dump() + "\n", o.out);
  return 0;
}

int run_experiment_cmd(const Options& o, std::vector<std::pair<std::string, std::string>> sources) {
  ExperimentConfig cfg;
  cfg.experiment = o.experiment;
  cfg.n = o.n;
  cfg.m = o.m;
  cfg.rho = o.rho;
  cfg.kappa = o.kappa;
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  cfg.replicas = o.replicas;
  cfg.sweep = o.sweep;
  cfg.out = o.out;
  cfg.format = o.format == "csv" ? ReportFormat::csv : ReportFormat::json;
  cfg.sources = std::move(sources);
  const Report report = run_experiment(cfg);
  emit(cfg.format == ReportFormat::csv ? emit_plot_data(report) : report_to_json(report), cfg.out);
  for (const auto& a : report.assertions)
    std::cerr << (a.passed ? "PASS " : "FAIL ") << report.experiment << ": " << a.name << '\n';
  return report.passed() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dense multigraph limits: generators, exact laws, densities and experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  Options o;
  app.add_option("--n", o.n, "Number of vertices");
  app.add_option("--m", o.m, "Number of edges");
  app.add_option("--rho", o.rho, "Edge density; m = floor(rho n^2 / 2)");
  app.add_option("--kappa", o.kappa, "Preferential attachment parameter");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--samples", o.samples, "Monte Carlo sample count");
  app.add_option("--replicas", o.replicas, "Seed replicas for statistical experiments");
  app.add_option("--out", o.out, "Output path (default stdout)");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  auto* gen = app.add_subcommand("gen", "Sample a multigraph and print its edge list");
  gen->add_option("--model", o.model, "pag | configuration | w-random")
      ->check(CLI::IsMember({"pag", "configuration", "w-random"}));
  gen->add_option("--degrees", o.degrees, "Degree sequence for the configuration model")
      ->delimiter(',');
  gen->add_option("--graphon", o.graphon_path, "Multigraphon JSON file for w-random");

  auto* exact = app.add_subcommand("exact", "Print an exact distribution table as JSON");
  exact->add_option("--table", o.table,
                    "pag | stationary | edge-reconnect | polya | ball-replacement | degree-law");

  auto* density = app.add_subcommand("density", "Estimate an induced homomorphism density");
  density->add_option("--pattern", o.pattern, "Pattern as a canonical key, e.g. \"2 1;1 2 1\"");
  density->add_option("--graph", o.graph_path, "Edge-list file (default: a PAG sample)");
  density->add_option("--graphon", o.graphon_path, "Multigraphon JSON file");

  auto* experiment = app.add_subcommand("experiment", "Run a named experiment");
  experiment->add_option("name", o.experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  experiment->add_option("--sweep", o.sweep, "Comma-separated sizes, e.g. 100,200,400")
      ->delimiter(',');

  std::set<std::string> from_flags;
  for (int i = 1; i < argc; ++i) {
    std::string tok = argv[i];
    if (tok.rfind("--", 0) != 0) continue;
    tok = tok.substr(2, tok.find('=') == std::string::npos ? std::string::npos : tok.find('=') - 2);
    from_flags.insert(tok);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) return run_gen(o);
    if (*exact) return run_exact(o);
    if (*density) return run_density(o);
    std::vector<std::pair<std::string, std::string>> sources;
    for (const char* key : {"n", "m", "rho", "kappa", "seed", "samples", "replicas", "sweep"}) {
      const CLI::Option* opt = app.get_option_no_throw(std::string("--") + key);
      if (opt == nullptr) opt = experiment->get_option_no_throw(std::string("--") + key);
      if (from_flags.contains(key)) {
        sources.emplace_back(key, "flag");
      } else if (opt != nullptr && opt->count() > 0) {
        sources.emplace_back(key, "config");
      }
    }
    return run_experiment_cmd(o, std::move(sources));
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
