#pragma once

// JSON forms of multigraphon specs, distribution tables and density
// estimates. Object keys keep insertion order so output is byte-stable.

#include <string>

#include <json.hpp>

#include "densemg/densities.hpp"
#include "densemg/exact.hpp"
#include "densemg/io.hpp"
#include "densemg/multigraphon.hpp"

namespace densemg {

using Json = nlohmann::ordered_json;

/// {"type":"poisson_gamma","kappa":..,"rho":..} or
/// {"type":"empirical","rho":..,"cdf_grid":[[z,F],..]}. Other kernels throw.
Json multigraphon_to_json(const Multigraphon& w);
/// Throws FormatError on unknown types or missing fields.
MultigraphonPtr multigraphon_from_json(const Json& j);

/// {canonical key: probability, ...} in the table's state order.
template <class State>
Json table_to_json(const DistributionTable<State>& t) {
  Json j = Json::object();
  for (const auto& [s, p] : t.entries) j[canonical_key(s)] = p;
  return j;
}

/// Inverse of table_to_json for tables over adjacency matrices.
DistributionTable<AdjacencyMatrix> adjacency_table_from_json(const Json& j);

/// {"pattern": key, "mean":.., "stderr":.., "samples":..}
Json density_to_json(const AdjacencyMatrix& pattern, const DensityEstimate& e);

}  // namespace densemg
