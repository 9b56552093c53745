#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jacobi_mfun/donoghue.hpp"
#include "jacobi_mfun/errors.hpp"
#include "jacobi_mfun/mweyl.hpp"
#include "jacobi_mfun/oracle.hpp"
#include "jacobi_mfun/solutions.hpp"

namespace py = pybind11;
using namespace jacobi;

namespace {

ExtensionSpec make_extension(const std::string& kind, double gamma, double delta, double phi,
                             const std::optional<RealMat2>& r) {
  if (kind == "separated") return Separated{gamma, delta};
  if (kind == "one-lc") return OneLC{gamma};
  if (kind == "krein") return Krein{};
  if (kind == "coupled") return Coupled{phi, r.value_or(RealMat2::Identity())};
  throw ParamError("extension must be separated, coupled, one-lc or krein");
}

Endpoint endpoint_of(int e) {
  if (e == -1) return Endpoint::Minus;
  if (e == 1) return Endpoint::Plus;
  throw ParamError("endpoint must be -1 or +1");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weyl and Donoghue m-functions of the Jacobi differential expression";

  auto base = py::register_exception<Error>(m, "JacobiError", PyExc_RuntimeError);
  auto pole = py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<SpectrumPole>(m, "SpectrumPole", pole.ptr());
  py::register_exception<ParamError>(m, "ParamError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<KMatrixSingular>(m, "KMatrixSingular", base.ptr());
  py::register_exception<NotStrictlyPositive>(m, "NotStrictlyPositive", base.ptr());
  py::register_exception<DegenerateCase>(m, "DegenerateCase", base.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
  py::register_exception<CountMismatch>(m, "CountMismatch", base.ptr());
  py::register_exception<StepFailure>(m, "StepFailure", base.ptr());

  m.def(
      "classify",
      [](double alpha, double beta) {
        const Params prm{alpha, beta};
        py::dict d;
        d["endpoint_minus"] = to_string(classify_endpoint(prm, Endpoint::Minus));
        d["endpoint_plus"] = to_string(classify_endpoint(prm, Endpoint::Plus));
        d["regime"] = to_string(regime(prm));
        d["deficiency_index"] = deficiency_index(prm);
        return d;
      },
      py::arg("alpha"), py::arg("beta"));

  m.def(
      "m_weyl", [](double alpha, double beta, cplx z) { return m_weyl({alpha, beta}, z); }, py::arg("alpha"),
      py::arg("beta"), py::arg("z"));
  m.def(
      "m_weyl_array",
      [](double alpha, double beta, py::array_t<cplx> z) {
        return py::vectorize([&](cplx w) { return m_weyl({alpha, beta}, w); })(z);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("z"));

  m.def(
      "m_donoghue",
      [](double alpha, double beta, cplx z, const std::string& extension, double gamma, double delta, double phi,
         std::optional<RealMat2> R) {
        const DonoghueValue v = m_donoghue(make_extension(extension, gamma, delta, phi, R), Params{alpha, beta}, z);
        return Eigen::MatrixXcd(v.m.topLeftCorner(v.dim, v.dim));
      },
      py::arg("alpha"), py::arg("beta"), py::arg("z"), py::arg("extension") = "separated", py::arg("gamma") = 0.0,
      py::arg("delta") = 0.0, py::arg("phi") = 0.0, py::arg("R") = py::none(),
      "Donoghue m-function; a 1x1 or 2x2 complex matrix.");

  m.def(
      "krein_R", [](double alpha, double beta) { return krein_R({alpha, beta}); }, py::arg("alpha"),
      py::arg("beta"));

  m.def(
      "friedrichs_spectrum", [](double alpha, double beta, int n_max) { return friedrichs_spectrum({alpha, beta}, n_max); },
      py::arg("alpha"), py::arg("beta"), py::arg("n_max"));
  m.def(
      "friedrichs_spectrum_numeric",
      [](double alpha, double beta, double lo, double hi, int n_expected) {
        return oracle::friedrichs_spectrum_numeric({alpha, beta}, lo, hi, n_expected);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("lo"), py::arg("hi"), py::arg("n_expected") = -1);

  m.def(
      "solution",
      [](double alpha, double beta, int endpoint, int index, cplx z, double x) {
        const Params prm{alpha, beta};
        const SolutionValue v = eval_solution(solution_id(prm, endpoint_of(endpoint), index), prm, z, x);
        return std::make_pair(v.y, v.yq);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("endpoint"), py::arg("index"), py::arg("z"), py::arg("x"),
      "Frobenius solution (value, quasi-derivative) attached to endpoint -1 or +1.");

  m.def(
      "jacobi_polynomial", [](int n, double alpha, double beta, double x) { return jacobi_polynomial(n, {alpha, beta}, x); },
      py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("x"));
}
