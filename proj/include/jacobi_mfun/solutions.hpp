#pragma once

#include <optional>

#include "jacobi_mfun/core.hpp"
#include "jacobi_mfun/types.hpp"

namespace jacobi {

// Frobenius solution attached to one endpoint. index 1 is the analytic
// branch, index 2 the singular (or logarithmic) companion.
struct SolutionId {
  Endpoint endpoint = Endpoint::Minus;
  int index = 1;
  bool log_case = false;
};

// Throws ParamError when the id is not defined for these parameters.
void check_admissible(const SolutionId& id, const Params& prm);
// The canonical id for (endpoint, index): log_case is set automatically
// when the local exponent vanishes.
SolutionId solution_id(const Params& prm, Endpoint e, int index);

SolutionValue eval_solution(const SolutionId& id, const Params& prm, cplx z, const Point& pt);
SolutionValue eval_solution(const SolutionId& id, const Params& prm, cplx z, double x);

// The pair (y_1, y_2) at one endpoint, evaluated together (shares the
// connection matrix when the point lies on the far side).
struct SolutionPair {
  SolutionValue first;
  SolutionValue second;
};
SolutionPair eval_pair(const Params& prm, Endpoint e, cplx z, const Point& pt);
// The endpoint series alone, without routing (needs 1 -+ x < 2).
SolutionPair series_pair(const Params& prm, Endpoint e, cplx z, const Point& pt);
// The pair at e rebuilt from the series of the opposite endpoint through
// the connection matrix. Throws DegenerateCase or ParamError when no
// connection case covers the parameters.
SolutionPair connected_pair(const Params& prm, Endpoint e, cplx z, const Point& pt);

double jacobi_polynomial(int n, const Params& prm, double x);
// d/dx of the Jacobi polynomial.
double jacobi_polynomial_derivative(int n, const Params& prm, double x);
double eigenvalue_lambda(int n, const Params& prm);

struct QuasiRational {
  double value;
  double eigenvalue;
};
QuasiRational quasi_rational(int kind, int n, const Params& prm, double x);

// Deviations of the four exponent-flip relations between the endpoint
// bases; nullopt where the relation does not apply.
struct SymmetryReport {
  std::optional<double> minus_first;
  std::optional<double> minus_second;
  std::optional<double> plus_first;
  std::optional<double> plus_second;
  double max_deviation = 0.0;
};
SymmetryReport symmetry_check(const Params& prm, cplx z, double x);

}  // namespace jacobi
