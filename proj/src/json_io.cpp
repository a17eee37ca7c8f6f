#include "densemg/json_io.hpp"

#include <memory>

namespace densemg {

Json multigraphon_to_json(const Multigraphon& w) {
  if (const auto* pg = dynamic_cast<const PoissonGammaMultigraphon*>(&w)) {
    return Json{{"type", "poisson_gamma"}, {"kappa", pg->kappa()}, {"rho", pg->rho()}};
  }
  if (const auto* emp = dynamic_cast<const EmpiricalEdgeStationaryMultigraphon*>(&w)) {
    Json grid = Json::array();
    for (const auto& [z, f] : emp->cdf_grid()) grid.push_back(Json::array({z, f}));
    return Json{{"type", "empirical"}, {"rho", emp->rho()}, {"cdf_grid", std::move(grid)}};
  }
  throw std::invalid_argument("multigraphon kind has no JSON form");
}

MultigraphonPtr multigraphon_from_json(const Json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "poisson_gamma") {
      return std::make_shared<PoissonGammaMultigraphon>(j.at("kappa").get<double>(),
                                                        j.at("rho").get<double>());
    }
    if (type == "empirical") {
      std::vector<std::pair<double, double>> grid;
      for (const auto& point : j.at("cdf_grid")) {
        if (!point.is_array() || point.size() != 2) throw FormatError("cdf_grid points must be [z, F]");
        grid.emplace_back(point[0].get<double>(), point[1].get<double>());
      }
      std::optional<double> rho;
      if (j.contains("rho")) rho = j.at("rho").get<double>();
      return std::make_shared<EmpiricalEdgeStationaryMultigraphon>(std::move(grid), rho);
    }
    throw FormatError("unknown multigraphon type: " + type);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed multigraphon description: ") + e.what());
  }
}

DistributionTable<AdjacencyMatrix> adjacency_table_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("distribution table must be a JSON object");
  DistributionTable<AdjacencyMatrix> t;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw FormatError("probabilities must be numbers");
    t.entries.emplace(parse_canonical_key(key), value.get<double>());
  }
  return t;
}

Json density_to_json(const AdjacencyMatrix& pattern, const DensityEstimate& e) {
  return Json{{"pattern", canonical_key(pattern)},
              {"mean", e.mean},
              {"stderr", e.standard_error},
              {"samples", e.samples}};
}

}  // namespace densemg
