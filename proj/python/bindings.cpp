#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "varbesov/besov.hpp"
#include "varbesov/calderon.hpp"
#include "varbesov/error.hpp"
#include "varbesov/harness.hpp"
#include "varbesov/modular_norms.hpp"

namespace py = pybind11;
using namespace varbesov;

namespace {

using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

GridFunction to_grid(const GridSpec& spec, const ComplexArray& a) {
  if (static_cast<std::size_t>(a.size()) != spec.size())
    throw std::invalid_argument("array has " + std::to_string(a.size()) + " samples, grid needs " +
                                std::to_string(spec.size()));
  return GridFunction(spec, std::vector<Complex>(a.data(), a.data() + a.size()));
}

py::array_t<double> coordinates(const GridSpec& spec) {
  py::array_t<double> out({static_cast<py::ssize_t>(spec.size()), static_cast<py::ssize_t>(spec.dim)});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (int d = 0; d < spec.dim; ++d) m(i, d) = spec.coordinate(i)[d];
  return out;
}

double besov_norm(const ComplexArray& values, const GridSpec& spec, const std::string& alpha, const std::string& p,
                  const std::string& q, const std::string& method, int K, int J, std::optional<double> a, int S,
                  double epsilon) {
  const GridFunction f = to_grid(spec, values);
  const ScaleGrid scales = ScaleGrid::make(K, J);
  BesovParams P{ExponentFamily::parse(alpha).build(spec, ExponentRole::smoothness),
                ExponentFamily::parse(p).build(spec, ExponentRole::integrability),
                ExponentFamily::parse(q).build(spec, ExponentRole::integrability), 0.0, scales,
                build_continuous_pair(spec, scales)};
  P.a = a ? *a : spec.dim / P.p.range_min() + 1.0;
  if (method == "continuous") return besov_continuous(f, P);
  if (method == "peetre") return besov_peetre(f, P);
  if (method == "discrete") {
    P.kernels = build_dyadic(spec, max_dyadic_level(spec));
    return besov_discrete(f, P);
  }
  if (method == "local-means") {
    P.kernels = build_local_means(S, epsilon, spec);
    return besov_local_means(f, P);
  }
  throw std::invalid_argument("unknown method '" + method + "'");
}

std::string run(const std::string& experiment, const std::map<std::string, std::string>& overrides,
                const std::string& config_path) {
  HarnessConfig cfg = config_path.empty() ? HarnessConfig() : HarnessConfig::load(config_path);
  for (const auto& [k, v] : overrides) cfg.set(k, v);
  py::gil_scoped_release release;
  return run_experiment(experiment, cfg).to_json();
}

}  // namespace

PYBIND11_MODULE(_varbesov, m) {
  m.doc() = "Variable-exponent Lebesgue and Besov quasi-norms on a periodic grid";

  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init(&GridSpec::make), py::arg("dim") = 1, py::arg("points") = 1024, py::arg("half_period") = 16.0)
      .def_readonly("dim", &GridSpec::dim)
      .def_readonly("points", &GridSpec::points)
      .def_readonly("half_period", &GridSpec::half_period)
      .def_property_readonly("spacing", &GridSpec::spacing)
      .def_property_readonly("size", &GridSpec::size)
      .def_property_readonly("nyquist_radius", &GridSpec::nyquist_radius)
      .def("__repr__", [](const GridSpec& s) {
        return "GridSpec(dim=" + std::to_string(s.dim) + ", points=" + std::to_string(s.points) +
               ", half_period=" + std::to_string(s.half_period) + ")";
      });

  m.def("coordinates", &coordinates, py::arg("spec"), "grid points, shape (size, dim)");

  m.def(
      "luxemburg_norm",
      [](const ComplexArray& values, const GridSpec& spec, const std::string& p) {
        const auto f = to_grid(spec, values);
        return luxemburg_norm(f, ExponentFamily::parse(p).build(spec, ExponentRole::integrability));
      },
      py::arg("values"), py::arg("spec"), py::arg("p"));

  m.def(
      "modular",
      [](const ComplexArray& values, const GridSpec& spec, const std::string& p) {
        const auto f = to_grid(spec, values);
        return modular_lp(f, ExponentFamily::parse(p).build(spec, ExponentRole::integrability));
      },
      py::arg("values"), py::arg("spec"), py::arg("p"));

  m.def("besov_norm", &besov_norm, py::arg("values"), py::arg("spec"), py::arg("alpha"), py::arg("p"),
        py::arg("q"), py::arg("method") = "continuous", py::arg("per_octave") = 8, py::arg("octaves") = 5,
        py::arg("a") = py::none(), py::arg("S") = 3, py::arg("epsilon") = 1.0);

  m.def(
      "bessel_potential_norm",
      [](const ComplexArray& values, const GridSpec& spec, double s) {
        return bessel_potential_norm(to_grid(spec, values), s);
      },
      py::arg("values"), py::arg("spec"), py::arg("s"));

  m.def("experiment_names", &experiment_names);
  m.def("lemma_ids", &lemma_ids);
  m.def("_run_experiment", &run, py::arg("experiment"), py::arg("overrides"), py::arg("config_path") = "");
}
