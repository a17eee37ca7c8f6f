#pragma once

// Named, reproducible experiments. A run is a pure function of its config:
// replicas use counter-based streams keyed by (seed, replica), and all
// reports are assembled in a fixed order.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace densemg {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ReportFormat { json, csv };

struct ExperimentConfig {
  std::string experiment;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> m;  // at most one of m and rho
  std::optional<double> rho;
  std::optional<double> kappa;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> samples;
  std::optional<std::size_t> replicas;
  std::vector<std::size_t> sweep;  // extra sizes for degree-gamma / ui-diagnostic
  std::string out;                 // empty: stdout
  ReportFormat format = ReportFormat::json;
  /// (key, source) pairs recorded by the caller, e.g. ("n", "flag").
  std::vector<std::pair<std::string, std::string>> sources;
};

/// Names accepted by run_experiment, in display order.
const std::vector<std::string>& experiment_names();

/// Fills the per-experiment defaults and checks the config; throws
/// ConfigError. After this, n, kappa, samples and replicas are set and
/// exactly one of m and rho is set.
ExperimentConfig resolve_config(ExperimentConfig cfg);

/// m(n) = floor(rho n^2 / 2) when rho is set, else m.
std::uint64_t edge_count_for(const ExperimentConfig& cfg, std::size_t n);
/// rho when set, else 2m / n^2.
double edge_density_for(const ExperimentConfig& cfg);

struct Observation {
  std::string experiment;
  std::size_t n = 0;
  std::string statistic;
  double value = 0.0;
};

struct Assertion {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct Report {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> header;  // resolved config with sources
  std::vector<Observation> observations;
  std::vector<Assertion> assertions;

  bool passed() const noexcept;
};

/// Runs a resolved or unresolved config (it is resolved first).
Report run_experiment(const ExperimentConfig& cfg);

/// Full report as JSON text (header, observations, assertions, verdict).
std::string report_to_json(const Report& report);
/// Tidy CSV: "experiment,n,statistic,value" then one row per observation.
std::string emit_plot_data(const Report& report);
/// Strict reader for emit_plot_data output; throws std::runtime_error.
std::vector<Observation> parse_plot_data(const std::string& csv);

}  // namespace densemg
