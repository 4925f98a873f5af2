#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weylab/families.hpp"
#include "weylab/fourier.hpp"
#include "weylab/harmonic.hpp"
#include "weylab/io.hpp"
#include "weylab/metric.hpp"
#include "weylab/schatten.hpp"
#include "weylab/suites.hpp"
#include "weylab/symbol_class.hpp"

namespace py = pybind11;
using namespace weylab;

namespace {

py::array_t<cd> field_values(const SymbolField& a) {
  std::vector<py::ssize_t> shape(a.dims(), a.grid.N);
  py::array_t<cd> out(shape);
  std::copy(a.values.begin(), a.values.end(), out.mutable_data());
  return out;
}

SymbolField field_from_values(const PhaseGrid& grid, py::array_t<cd> values,
                              int poly_degree) {
  SymbolField a;
  a.grid = grid;
  a.poly_degree = poly_degree;
  const auto buf = values.request();
  if (static_cast<std::size_t>(buf.size) != grid.phase_size())
    throw std::invalid_argument("values size does not match grid");
  auto flat = py::array_t<cd, py::array::c_style | py::array::forcecast>::ensure(values);
  const cd* ptr = flat.data();
  a.values.assign(ptr, ptr + buf.size);
  return a;
}

py::array_t<cd> kernel_matrix(const OperatorKernel& k) {
  py::array_t<cd> out({k.K.rows(), k.K.cols()});
  Eigen::Map<Eigen::MatrixXcd>(out.mutable_data(), k.K.rows(), k.K.cols()) =
      k.K.transpose();  // row-major view of the matrix
  return out;
}

}  // namespace

PYBIND11_MODULE(_weylab, m) {
  m.doc() = "Weyl/t-quantization laboratory (native core)";

  py::class_<PhaseGrid>(m, "PhaseGrid")
      .def(py::init([](int n, double L, int N) {
             return PhaseGrid{n, L, N};
           }),
           py::arg("n"), py::arg("L"), py::arg("N"))
      .def_readonly("n", &PhaseGrid::n)
      .def_readonly("L", &PhaseGrid::L)
      .def_readonly("N", &PhaseGrid::N)
      .def("spacing", &PhaseGrid::spacing)
      .def("point", &PhaseGrid::point)
      .def("freq", &PhaseGrid::freq);

  py::class_<SymbolField>(m, "SymbolField")
      .def_property_readonly("grid",
                             [](const SymbolField& a) { return a.grid; })
      .def_readonly("poly_degree", &SymbolField::poly_degree)
      .def_property_readonly("values", &field_values);

  py::class_<OperatorKernel>(m, "OperatorKernel")
      .def_readonly("t", &OperatorKernel::t)
      .def_property_readonly("grid",
                             [](const OperatorKernel& k) { return k.grid; })
      .def_property_readonly("matrix", &kernel_matrix);

  py::class_<ClassSpec>(m, "ClassSpec")
      .def(py::init([](double r, double s, std::vector<double> rho,
                       std::vector<double> delta) {
             ClassSpec cs;
             cs.r = r;
             cs.s = s;
             cs.rho = std::move(rho);
             cs.delta = std::move(delta);
             validate(cs);
             return cs;
           }),
           py::arg("r"), py::arg("s"), py::arg("rho"), py::arg("delta"))
      .def_readonly("r", &ClassSpec::r)
      .def_readonly("s", &ClassSpec::s)
      .def_readonly("rho", &ClassSpec::rho)
      .def_readonly("delta", &ClassSpec::delta);

  m.def("symbol_from_values", &field_from_values, py::arg("grid"),
        py::arg("values"), py::arg("poly_degree") = -1);
  m.def("random_band_limited", &random_band_limited, py::arg("grid"),
        py::arg("seed"), py::arg("bw") = 4, py::arg("envelope") = 0.5);
  m.def("gaussian_symbol", &gaussian_symbol, py::arg("grid"),
        py::arg("amp") = 2.0, py::arg("width") = std::sqrt(0.5));
  m.def("bump_symbol", &bump_symbol, py::arg("grid"), py::arg("R"),
        py::arg("seed") = 0, py::arg("bw") = 2);
  m.def("polynomial_symbol", &polynomial_symbol, py::arg("grid"),
        py::arg("deg"), py::arg("seed"));
  m.def(
      "make_test_symbol",
      [](const PhaseGrid& g, const ClassSpec& cs, const std::string& kind) {
        SymbolKind k = SymbolKind::Plain;
        if (kind == "oscillatory") k = SymbolKind::Oscillatory;
        else if (kind == "truncated") k = SymbolKind::Truncated;
        else if (kind != "plain")
          throw std::invalid_argument("kind: plain|oscillatory|truncated");
        return make_test_symbol(g, cs, k);
      },
      py::arg("grid"), py::arg("spec"), py::arg("kind") = "plain");

  m.def("lp_norm",
        [](const SymbolField& a, double p) { return lp_norm(a, p); },
        py::arg("symbol"), py::arg("p"));
  m.def("build_kernel", &build_kernel, py::arg("symbol"), py::arg("t"));
  m.def("convert_quantization", &convert_quantization, py::arg("symbol"),
        py::arg("s"), py::arg("t"));
  m.def("symplectic_fourier", &symplectic_fourier, py::arg("symbol"));
  m.def("hs_identity_gap", &hs_identity_gap, py::arg("symbol"));
  m.def(
      "singular_values",
      [](const OperatorKernel& k) { return singular_values(k).sigma; },
      py::arg("kernel"));
  m.def(
      "schatten_norm",
      [](const OperatorKernel& k, double p) {
        return schatten_norm(singular_values(k), p);
      },
      py::arg("kernel"), py::arg("p"));

  m.def(
      "class_planck",
      [](const ClassSpec& cs, std::vector<double> X) {
        return class_planck(cs).eval(
            Eigen::Map<Eigen::VectorXd>(X.data(), X.size()));
      },
      py::arg("spec"), py::arg("point"));
  m.def("kappa", &kappa, py::arg("p"), py::arg("n"));
  m.def("kappa_prime", &kappa_prime, py::arg("p"), py::arg("n"));
  m.def("n_p", &n_p, py::arg("p"), py::arg("n"));

  m.def("bspline_eval", &bspline_eval, py::arg("j"), py::arg("t"));
  m.def("modulation_norm", &modulation_norm, py::arg("symbol"), py::arg("p"),
        py::arg("window"));
  m.def("gaussian_window", &gaussian_window, py::arg("grid"),
        py::arg("width") = 1.0);

  m.def(
      "run_suite",
      [](const std::string& config_json) {
        const ExperimentConfig cfg =
            config_from_json(nlohmann::json::parse(config_json));
        return dump_deterministic(run_suite(cfg).to_json());
      },
      py::arg("config_json"));
  m.def("suite_catalog", &suite_catalog);
}
