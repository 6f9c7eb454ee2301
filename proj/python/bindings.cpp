#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "toeplitz/bopuc.hpp"
#include "toeplitz/dci.hpp"
#include "toeplitz/errors.hpp"
#include "toeplitz/extended.hpp"
#include "toeplitz/harness.hpp"
#include "toeplitz/structmat.hpp"
#include "toeplitz/symbols.hpp"
#include "toeplitz/szego.hpp"

namespace py = pybind11;
using namespace toeplitz;

namespace {

std::vector<Pole> to_poles(const std::vector<std::pair<cplx, cplx>>& pairs) {
  std::vector<Pole> out;
  for (const auto& [loc, coef] : pairs) out.push_back({loc, coef});
  return out;
}

py::tuple log_pair(const LogComplex& v) {
  if (v.is_zero()) return py::make_tuple(-std::numeric_limits<double>::infinity(), 0.0);
  return py::make_tuple(v.log_modulus(), v.phase());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structured Toeplitz determinants and their asymptotics";

  // registered most-derived last: pybind11 tries translators in reverse order
  auto& base = py::register_exception<Error>(m, "ToeplitzError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());

  py::class_<Symbol>(m, "Symbol")
      .def("__call__", &Symbol::operator())
      .def_property_readonly("label", &Symbol::label)
      .def("coefficients",
           [](const Symbol& s, long lo, long hi) { return fourier_coeffs(s, lo, hi).coeffs; },
           py::arg("j_min"), py::arg("j_max"), "Fourier coefficients for j_min <= j <= j_max");

  m.def("exp_laurent", &exp_laurent, py::arg("log0"), py::arg("plus"), py::arg("minus"));
  m.def("constant_symbol", &constant_symbol, py::arg("value"));
  m.def("jump_g", &jump_g);
  m.def("ising_diagonal", &ising_diagonal, py::arg("k"));
  m.def(
      "rational",
      [](long poly_min, std::vector<cplx> poly, const std::vector<std::pair<cplx, cplx>>& poles) {
        return rational({poly_min, std::move(poly), to_poles(poles)});
      },
      py::arg("poly_min") = 0, py::arg("poly") = std::vector<cplx>{},
      py::arg("poles") = std::vector<std::pair<cplx, cplx>>{},
      "Laurent polynomial plus sum of coefficient / (z - location); poles as (location, coefficient)");
  m.def("winding_number", [](const Symbol& s) { return winding_number(s); });
  m.def("szego_constants", [](const Symbol& s) {
    const LogSymbolData d = szego_data(s);
    return py::make_tuple(d.G, d.E);
  });

  m.def("toeplitz_det", [](const Symbol& s, int n) { return toeplitz_det(s, n).value(); });
  m.def("toeplitz_det_log", [](const Symbol& s, int n) { return log_pair(toeplitz_det(s, n)); },
        "(log|D_n|, arg D_n)");
  m.def("bordered_det", [](const Symbol& phi, const std::vector<Symbol>& borders, int n) {
    return bordered_det(phi, borders, n).value();
  });
  m.def(
      "semi_framed_det",
      [](const std::string& variant, const Symbol& phi, const Symbol& psi, const Symbol& eta,
         cplx a, int size) {
        return semi_framed_det(semi_variant_from_string(variant), phi, psi, eta, a, size).value();
      },
      py::arg("variant"), py::arg("phi"), py::arg("psi"), py::arg("eta"), py::arg("a"),
      py::arg("size"));
  m.def("det_log", [](const Eigen::MatrixXcd& a) { return log_pair(det_log(a)); });
  m.def(
      "dodgson_residual",
      [](const Eigen::MatrixXcd& a, int j1, int j2, int k1, int k2) {
        return dodgson_residual(a, j1, j2, k1, k2).residual;
      },
      py::arg("matrix"), py::arg("j1"), py::arg("j2"), py::arg("k1"), py::arg("k2"));
  m.def("lu_factorization_residual", &lu_factorization_residual, py::arg("phi"), py::arg("n"));

  py::class_<BorderSpec>(m, "BorderSpec")
      .def(py::init<>())
      .def_readwrite("a0", &BorderSpec::a0)
      .def_readwrite("a1", &BorderSpec::a1)
      .def_readwrite("b0", &BorderSpec::b0)
      .def_readwrite("b", &BorderSpec::b)
      .def_readwrite("ahat0", &BorderSpec::ahat0)
      .def_readwrite("ahat1", &BorderSpec::ahat1)
      .def_readwrite("bhat0", &BorderSpec::bhat0)
      .def_readwrite("bhat", &BorderSpec::bhat)
      .def_readwrite("poles", &BorderSpec::poles)
      .def("validate", &BorderSpec::validate)
      .def("psi", &BorderSpec::psi, py::arg("phi"));

  m.def("constant_F", &constant_F, py::arg("phi"), py::arg("border"));
  m.def("constant_F_quotient", &constant_F_quotient, py::arg("phi"), py::arg("psi"));
  m.def("constant_H", &constant_H, py::arg("phi"), py::arg("border"));
  m.def("constant_J1", &constant_J1, py::arg("phi"), py::arg("border1"), py::arg("border2"));
  m.def("predict_pure_log", [](const Symbol& s, int n) { return log_pair(predict_pure(s, n)); },
        "(log|G^n E|, arg G^n E)");
  m.def(
      "extended_zphi_bordered_ratio",
      [](cplx log0, std::vector<cplx> plus, std::vector<cplx> minus, const BorderSpec& b, int n) {
        return extended_zphi_bordered_ratio({log0, std::move(plus), std::move(minus)}, b, n);
      },
      py::arg("log0"), py::arg("plus"), py::arg("minus"), py::arg("border"), py::arg("n"));

  // Harness entry points exchange JSON text; the package wrapper converts to dicts.
  m.def("default_config_json", [] { return to_json(default_config()).dump(); });
  m.def("run_identity_suite_json", [](const std::string& cfg) {
    return to_json(run_identity_suite(config_from_json(nlohmann::json::parse(cfg)))).dump();
  });
  m.def("run_convergence_json", [](const std::string& cfg) {
    return to_json(run_convergence(config_from_json(nlohmann::json::parse(cfg)))).dump();
  });
  m.def("run_bench_json", [](const std::string& cfg) {
    return to_json(run_bench(config_from_json(nlohmann::json::parse(cfg)))).dump();
  });
}
