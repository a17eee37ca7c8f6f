// Python bindings. Graphs cross the boundary as symmetric n x n uint32
// arrays with 2 x (loop count) on the diagonal.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "densemg/densities.hpp"
#include "densemg/exact.hpp"
#include "densemg/experiments.hpp"
#include "densemg/generators.hpp"
#include "densemg/io.hpp"
#include "densemg/multigraphon.hpp"
#include "densemg/quadrature.hpp"

namespace py = pybind11;
using namespace densemg;

namespace {

using Matrix = py::array_t<std::uint32_t>;

AdjacencyMatrix to_matrix(const py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw std::invalid_argument("expected a square matrix");
  const auto n = static_cast<std::size_t>(a.shape(0));
  auto r = a.unchecked<2>();
  std::vector<std::vector<Count>> rows(n, std::vector<Count>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = r(i, j);
      if (v < 0 || v > std::numeric_limits<Count>::max()) throw std::invalid_argument("entry out of range");
      rows[i][j] = static_cast<Count>(v);
    }
  return AdjacencyMatrix::from_rows(rows);
}

Matrix from_matrix(const AdjacencyMatrix& b) {
  const auto n = static_cast<py::ssize_t>(b.size());
  Matrix out({n, n});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j) w(i, j) = b(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return out;
}

UrnConfiguration to_urn(const std::vector<Count>& word, std::size_t n) { return UrnConfiguration(n, word); }

py::dict estimate_dict(const DensityEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["stderr"] = e.standard_error;
  d["samples"] = e.samples;
  return d;
}

template <class State>
py::dict table_dict(const DistributionTable<State>& t) {
  py::dict d;
  for (const auto& [s, p] : t.entries) d[py::str(canonical_key(s))] = p;
  return d;
}

DetachConvention to_convention(const std::string& s) {
  if (s == "before") return DetachConvention::before;
  if (s == "after") return DetachConvention::after;
  throw std::invalid_argument("detach must be 'before' or 'after'");
}

}  // namespace

PYBIND11_MODULE(densemg, m) {
  m.doc() = "Dense multigraph generators, exact laws and density estimators";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);

  py::class_<RngStream>(m, "Rng")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream") = 0)
      .def("substream", &RngStream::substream, py::arg("id"))
      .def("next_u64", &RngStream::next_u64)
      .def("uniform", &RngStream::uniform)
      .def_property_readonly("seed", &RngStream::seed)
      .def_property_readonly("stream", &RngStream::stream)
      .def_property_readonly("position", &RngStream::position);

  // Graph core
  m.def("degrees", [](const py::array& b) { return degrees(to_matrix(b)); });
  m.def("edge_counts", [](const py::array& b) {
    const auto c = edge_counts(to_matrix(b));
    return py::make_tuple(c.m, c.m_prime);
  });
  m.def("urn_to_adjacency", [](const std::vector<Count>& word, std::size_t n) {
    return from_matrix(urn_to_adjacency(to_urn(word, n)));
  }, py::arg("word"), py::arg("n"));
  m.def("to_edge_list", [](const py::array& b) { return to_edge_list(to_matrix(b)); });
  m.def("parse_edge_list", [](const std::string& s) { return from_matrix(parse_edge_list(s)); });
  m.def("canonical_key", [](const py::array& b) { return canonical_key(to_matrix(b)); });
  m.def("parse_canonical_key", [](const std::string& s) { return from_matrix(parse_canonical_key(s)); });

  // Generators
  m.def("pag", [](std::size_t n, std::uint64_t edges, double kappa, RngStream& rng) {
    AdjacencyMatrix b(0);
    {
      py::gil_scoped_release nogil;
      b = pag(n, edges, kappa, rng);
    }
    return from_matrix(b);
  }, py::arg("n"), py::arg("m"), py::arg("kappa"), py::arg("rng"));
  m.def("configuration_model", [](std::vector<std::uint64_t> d, RngStream& rng) {
    return from_matrix(configuration_model(DegreeSequence(std::move(d)), rng));
  }, py::arg("degrees"), py::arg("rng"));
  m.def("polya_urn", [](std::size_t n, std::size_t length, double kappa, RngStream& rng) {
    return polya_urn(n, length, kappa, rng).word();
  }, py::arg("n"), py::arg("length"), py::arg("kappa"), py::arg("rng"));
  m.def("edge_reconnect_step", [](const py::array& b, double kappa, RngStream& rng, const std::string& detach) {
    return from_matrix(edge_reconnect_step(to_matrix(b), kappa, rng, to_convention(detach)));
  }, py::arg("b"), py::arg("kappa"), py::arg("rng"), py::arg("detach") = "before");
  m.def("ball_replacement_step", [](const std::vector<Count>& word, std::size_t n, double kappa, RngStream& rng) {
    return ball_replacement_step(to_urn(word, n), kappa, rng).word();
  }, py::arg("word"), py::arg("n"), py::arg("kappa"), py::arg("rng"));

  // Multigraphons
  py::class_<Multigraphon, std::shared_ptr<Multigraphon>>(m, "Multigraphon")
      .def("eval", [](const Multigraphon& w, double x, double y, std::uint64_t k) { return eval(w, x, y, k); })
      .def("average_degree", [](const Multigraphon& w, double x) { return average_degree(w, x); })
      .def("edge_density", [](const Multigraphon& w) { return edge_density(w); })
      .def("degree_cdf", [](const Multigraphon& w, double z) { return degree_cdf(w, z); })
      .def("degree_quantile", [](const Multigraphon& w, double u) { return degree_quantile(w, u); })
      .def("simple_edge_probability",
           [](const Multigraphon& w, double x, double y) { return simple_edge_probability(w, x, y); })
      .def("w_random", [](const Multigraphon& w, std::size_t k, RngStream& rng) {
        auto s = w_random(w, k, rng);
        return py::make_tuple(from_matrix(s.graph), s.latent);
      }, py::arg("k"), py::arg("rng"));
  py::class_<EmptyMultigraphon, Multigraphon, std::shared_ptr<EmptyMultigraphon>>(m, "EmptyMultigraphon")
      .def(py::init<>());
  py::class_<PoissonGammaMultigraphon, Multigraphon, std::shared_ptr<PoissonGammaMultigraphon>>(m, "PoissonGamma")
      .def(py::init<double, double>(), py::arg("kappa"), py::arg("rho"))
      .def_property_readonly("kappa", &PoissonGammaMultigraphon::kappa)
      .def_property_readonly("rho", &PoissonGammaMultigraphon::rho);
  py::class_<StepMultigraphon, Multigraphon, std::shared_ptr<StepMultigraphon>>(m, "StepMultigraphon")
      .def(py::init([](const py::array& b) { return std::make_shared<StepMultigraphon>(to_matrix(b)); }));
  py::class_<EmpiricalEdgeStationaryMultigraphon, Multigraphon,
             std::shared_ptr<EmpiricalEdgeStationaryMultigraphon>>(m, "EmpiricalMultigraphon")
      .def_static("from_sample", [](std::vector<double> d) {
        return std::make_shared<EmpiricalEdgeStationaryMultigraphon>(
            EmpiricalEdgeStationaryMultigraphon::from_sample(std::move(d)));
      }, py::arg("rescaled_degrees"));

  // Exact laws
  m.def("polya_probability", [](const std::vector<Count>& word, std::size_t n, double kappa) {
    return polya_probability(to_urn(word, n), kappa);
  }, py::arg("word"), py::arg("n"), py::arg("kappa"));
  m.def("stationary_probability", [](const py::array& b, double kappa) {
    return stationary_probability(to_matrix(b), kappa);
  }, py::arg("b"), py::arg("kappa"));
  m.def("exact_pag_distribution", [](std::size_t n, std::uint64_t edges, double kappa) {
    return table_dict(exact_pag_distribution(n, edges, kappa));
  }, py::arg("n"), py::arg("m"), py::arg("kappa"));
  m.def("stationary_distribution", [](std::size_t n, std::uint64_t edges, double kappa) {
    return table_dict(stationary_distribution(n, edges, kappa));
  }, py::arg("n"), py::arg("m"), py::arg("kappa"));
  m.def("solve_edge_reconnect", [](std::size_t n, std::uint64_t edges, double kappa, const std::string& detach) {
    return table_dict(solve_edge_reconnect(n, edges, kappa, to_convention(detach)));
  }, py::arg("n"), py::arg("m"), py::arg("kappa"), py::arg("detach") = "before");
  m.def("solve_ball_replacement", [](std::size_t n, std::uint64_t edges, double kappa) {
    return table_dict(solve_ball_replacement(n, edges, kappa));
  }, py::arg("n"), py::arg("m"), py::arg("kappa"));
  m.def("exact_homdensity", [](const py::array& a, const py::array& b) {
    return exact_homdensity(to_matrix(a), to_matrix(b));
  }, py::arg("a"), py::arg("b"));
  m.def("exact_injective_homdensity", [](const py::array& a, const py::array& b) {
    return exact_injective_homdensity(to_matrix(a), to_matrix(b));
  }, py::arg("a"), py::arg("b"));

  // Estimators
  m.def("hom_density_mc", [](const py::array& a, const py::array& b, std::uint64_t samples, RngStream& rng) {
    const auto pa = to_matrix(a), pb = to_matrix(b);
    DensityEstimate e;
    {
      py::gil_scoped_release nogil;
      e = hom_density_mc(pa, pb, samples, rng);
    }
    return estimate_dict(e);
  }, py::arg("a"), py::arg("b"), py::arg("samples"), py::arg("rng"));
  m.def("graphon_density_mc", [](const py::array& a, const Multigraphon& w, std::uint64_t samples, RngStream& rng) {
    const auto pa = to_matrix(a);
    DensityEstimate e;
    {
      py::gil_scoped_release nogil;
      e = graphon_density_mc(pa, w, samples, rng);
    }
    return estimate_dict(e);
  }, py::arg("a"), py::arg("w"), py::arg("samples"), py::arg("rng"));
  m.def("sampled_pattern_distribution", [](const py::array& b, std::size_t k, std::uint64_t samples, RngStream& rng) {
    return table_dict(sampled_pattern_distribution(to_matrix(b), k, samples, rng));
  }, py::arg("b"), py::arg("k"), py::arg("samples"), py::arg("rng"));
  m.def("degree_sample", [](const py::array& b) { return degree_sample(to_matrix(b)); });

  // Experiments
  m.def("experiment_names", &experiment_names);
  m.def("run_experiment", [](const std::string& name, std::optional<std::size_t> n, std::optional<std::uint64_t> edges,
                             std::optional<double> rho, std::optional<double> kappa, std::uint64_t seed,
                             std::optional<std::uint64_t> samples, std::optional<std::size_t> replicas,
                             std::vector<std::size_t> sweep) {
    ExperimentConfig cfg;
    cfg.experiment = name;
    cfg.n = n;
    cfg.m = edges;
    cfg.rho = rho;
    cfg.kappa = kappa;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.replicas = replicas;
    cfg.sweep = std::move(sweep);
    std::string text;
    {
      py::gil_scoped_release nogil;
      text = report_to_json(run_experiment(cfg));
    }
    return py::module_::import("json").attr("loads")(text);
  }, py::arg("name"), py::kw_only(), py::arg("n") = py::none(), py::arg("m") = py::none(),
        py::arg("rho") = py::none(), py::arg("kappa") = py::none(), py::arg("seed") = 1,
        py::arg("samples") = py::none(), py::arg("replicas") = py::none(),
        py::arg("sweep") = std::vector<std::size_t>{});
}
