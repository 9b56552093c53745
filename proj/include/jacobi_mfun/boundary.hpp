#pragma once

#include <array>
#include <functional>
#include <utility>

#include "jacobi_mfun/core.hpp"
#include "jacobi_mfun/solutions.hpp"
#include "jacobi_mfun/types.hpp"

namespace jacobi {

enum class ConnectionCase { I, II, III, IV };

// Maps the hypergeometric pair at xi = 1 onto the pair at xi = 0:
//   (w10, w20)^T = C (w11, w21)^T,
// where w20 (w21) is the logarithmic solution when beta (alpha) vanishes.
struct ConnectionMatrix {
  std::array<std::array<cplx, 2>, 2> c;
  ConnectionCase tag;
};

ConnectionCase connection_case(const Params& prm);
ConnectionMatrix connection_matrix(const Params& prm, cplx z);
// det C in closed form, W(w10, w20) / W(w11, w21). Forming it from the
// entries cancels badly when they are large.
double connection_determinant(const Params& prm);

// Generalized boundary values g~(-1), g~'(-1), g~(1), g~'(1).
struct BoundaryData {
  cplx g_m1 = 0.0;
  cplx gp_m1 = 0.0;
  cplx g_p1 = 0.0;
  cplx gp_p1 = 0.0;
};

BoundaryData operator+(const BoundaryData& a, const BoundaryData& b);
BoundaryData operator*(cplx c, const BoundaryData& a);
BoundaryData conj(const BoundaryData& a);

// Boundary values of the two solutions anchored at -1, at one endpoint.
struct EndpointTable {
  cplx y1 = 0.0;
  cplx y1p = 0.0;
  cplx y2 = 0.0;
  cplx y2p = 0.0;
};

// Values at -1 (independent of z). Requires beta in (-1,1).
EndpointTable bv_table_minus1(const Params& prm);
// Values at +1 in closed form. Requires alpha, beta in (-1,1).
EndpointTable bv_table_plus1(const Params& prm, cplx z);
// Only y1~(z,1) and y2~(z,1); entire in z.
std::array<cplx, 2> bv_values_plus1(const Params& prm, cplx z);
// Both tables merged into BoundaryData for y_{1,-1} and y_{2,-1}.
std::pair<BoundaryData, BoundaryData> solution_bv(const Params& prm, cplx z);

// Endpoint Wronskian through boundary values: f~ g~' - f~' g~.
cplx boundary_wronskian(cplx f, cplx fp, cplx g, cplx gp);

using Evaluable = std::function<SolutionValue(const Point&)>;

// Numerical extraction at one (non limit point) endpoint. g is sampled on
// 1 -+ x = 2^-k; the singular part is removed with the exact zero-energy
// pair and the remainder is fitted by least squares in the known exponents.
std::pair<cplx, cplx> generalized_bv_at(const Params& prm, const Evaluable& g, Endpoint e);
BoundaryData generalized_bv(const Params& prm, const Evaluable& g);

// The zero-energy solution P with P^[1] = 1 used to split off the
// nonprincipal part at endpoint e (the other one is the constant 1).
SolutionValue zero_energy_second(const Params& prm, Endpoint e, const Point& pt);

// Solutions with (phi~, phi~') = (0,1), (theta~, theta~') = (1,0) at -1.
struct PhiTheta {
  SolutionValue phi;
  SolutionValue theta;
};
// Coefficients of phi and theta in the basis (y_{1,-1}, y_{2,-1}).
struct PhiThetaCoeffs {
  std::array<cplx, 2> phi;
  std::array<cplx, 2> theta;
};
PhiThetaCoeffs phi_theta_coeffs(const Params& prm);
PhiTheta phi_theta(const Params& prm, cplx z, const Point& pt);
PhiTheta phi_theta(const Params& prm, cplx z, double x);

}  // namespace jacobi
