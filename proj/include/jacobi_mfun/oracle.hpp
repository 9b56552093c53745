#pragma once

#include <functional>
#include <vector>

#include "jacobi_mfun/donoghue.hpp"
#include "jacobi_mfun/types.hpp"

namespace jacobi::oracle {

inline constexpr double kDefaultRtol = 1e-11;

// Transports (y, y^[1]) along tau y = z y with an adaptive embedded
// Runge-Kutta 5(4) pair. Works in u = atanh(x), so endpoint offsets are
// carried exactly by Point.
SolutionValue integrate_ivp(const Params& prm, cplx z, const Point& from, const SolutionValue& init, const Point& to,
                            double rtol = kDefaultRtol);
SolutionValue integrate_ivp(const Params& prm, cplx z, double x0, const SolutionValue& init, double x1,
                            double rtol = kDefaultRtol);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
// n-point Gauss-Jacobi rule for (1-x)^alpha (1+x)^beta on (-1,1).
Quadrature gauss_jacobi(const Params& prm, int n);

using ScalarFn = std::function<cplx(double)>;
using PointFn = std::function<cplx(const Point&)>;

// int conj(f) g (1-x)^alpha (1+x)^beta dx by Gauss-Jacobi.
cplx gauss_jacobi_inner(const Params& prm, const ScalarFn& f, const ScalarFn& g, int n_nodes = 200);

// Double exponential rule on (-1,1); nodes carry exact endpoint offsets so
// integrands with algebraic endpoint singularities stay accurate.
struct GradedRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
};
GradedRule graded_rule(int per_unit = 64, double t_max = 4.0);
// int conj(f) g r dx with the graded rule.
cplx graded_inner(const Params& prm, const PointFn& f, const PointFn& g, const GradedRule& rule);

// Weyl function from the defining property: integrate theta and phi toward
// the limit point endpoint and extrapolate the recessive combination.
cplx extract_m_recessive(const Params& prm, cplx z);

// Zeros of a real-valued function by scan and bisection. n_expected < 0
// disables the count check.
std::vector<double> find_roots(const std::function<double(double)>& f, double lo, double hi, int n_expected = -1,
                                int scan_points = 4000);
// Poles of f: zeros of 1/f that are genuine (|1/f| -> 0), not sign changes
// across zeros of f. A PoleError from f counts as an exact pole.
std::vector<double> find_poles(const std::function<cplx(double)>& f, double lo, double hi, int n_expected = -1,
                               int scan_points = 4000);

// Friedrichs eigenvalues of a two limit circle problem as zeros of phi~(.,1).
std::vector<double> friedrichs_spectrum_numeric(const Params& prm, double lo, double hi, int n_expected = -1);

// Donoghue function from the resolvent definition
//   M(z) = z I + (z^2+1) P (A - z)^{-1} P
// with (A - z)^{-1} v built from the boundary conditions of the extension.
DonoghueValue resolvent_oracle(const ExtensionSpec& ext, const Params& prm, cplx z);

// The same definition with the Friedrichs resolvent replaced by a truncated
// eigenfunction expansion (alpha, beta >= 0, Jacobi polynomial eigenbasis).
Mat2 truncated_friedrichs_m(const Params& prm, cplx z, int n_terms, const GradedRule& rule);

}  // namespace jacobi::oracle
